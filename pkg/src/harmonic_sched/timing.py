"""Wall-clock production time once each halt costs a handover interval."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction

from .core import RationalLike, to_rational


@dataclass(frozen=True)
class TimingReport:
    H: Fraction
    halt_count: int
    epsilon: Fraction
    total: Fraction
    excess_percent: Fraction


def _check(r1: int, r2: int, T: Fraction) -> None:
    if r1 < 1 or r2 < 1:
        raise ValueError("both agent counts must be positive")
    if T <= 0:
        raise ValueError("T must be positive")
    if T == 1:
        raise ValueError("T = 1 makes the two agent types identical")


def optimal_time_two_type(r1: int, r2: int, T: RationalLike) -> Fraction:
    """nT / (r1 T + r2): r1 agents taking 1 hour per object, r2 taking T."""
    T = to_rational(T)
    _check(r1, r2, T)
    return (r1 + r2) * T / (r1 * T + r2)


def total_time(H: RationalLike, halts: int, epsilon: RationalLike) -> TimingReport:
    """Charge one epsilon per halt plus one for the initial loading."""
    H, eps = to_rational(H), to_rational(epsilon)
    if eps < 0:
        raise ValueError("epsilon must be non-negative")
    if halts < 0:
        raise ValueError("halt count must be non-negative")
    total = H + (halts + 1) * eps
    return TimingReport(H, halts, eps, total, 100 * (total - H) / H)


def biker_hiker_time(r1: int, r2: int, T: RationalLike) -> Fraction:
    """(r1 + r2 T) / n, the optimum when the fast resource cannot jump ahead."""
    T = to_rational(T)
    _check(r1, r2, T)
    return (r1 + r2 * T) / (r1 + r2)


def beats_biker_hiker(r1: int, r2: int, T: RationalLike) -> bool:
    return optimal_time_two_type(r1, r2, T) < biker_hiker_time(r1, r2, T)


def significant(value: Fraction, digits: int = 5) -> str:
    """Decimal rendering to ``digits`` significant figures, half-up."""
    value = Fraction(value)
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(value.numerator) / Decimal(value.denominator)
        exp = d.adjusted() - digits + 1
        return str(d.quantize(Decimal(1).scaleb(exp), rounding=ROUND_HALF_UP))


def percent(value: Fraction, places: int = 1) -> str:
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(value.numerator) / Decimal(value.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))
