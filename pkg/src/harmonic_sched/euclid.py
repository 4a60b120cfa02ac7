"""The Euclidean (r1, r2)-scheme for two agent types.

``r1`` agents of type 1 and ``r2`` agents of type 2, r1 > r2 and coprime.
Every object must spend r1 a.u. with type 1 and r2 a.u. with type 2. The
scheme runs in stages, one per line of the Euclidean algorithm on (r1, r2);
in each stage the minority-type agents carry a block of objects along a chain
of block swaps, every swap coming exactly when the carried block meets its
quota for the minority type.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .core import AssignmentMatrix, ProblemSpec, RationalLike, to_rational

AGENT_ORDERS = ("type1-first", "type2-first")
LOG_PHI = math.log((1 + math.sqrt(5)) / 2)


class EuclidError(ValueError):
    """Invalid (r1, r2) input for a Euclidean scheme."""


@dataclass(frozen=True)
class EuclidLine:
    """One division step: dividend = quotient * divisor + remainder."""

    dividend: int
    quotient: int
    divisor: int
    remainder: int


@dataclass(frozen=True)
class EuclidTrace:
    r1: int
    r2: int
    lines: tuple[EuclidLine, ...]

    @property
    def t(self) -> int:
        return len(self.lines)

    @property
    def a_sequence(self) -> list[int]:
        return [ln.quotient for ln in self.lines]

    def r(self, i: int) -> int:
        """Remainder r_i for 1 <= i <= t + 2 (r_{t+1} = 1, r_{t+2} = 0)."""
        if i == 1:
            return self.r1
        if i == 2:
            return self.r2
        return self.lines[i - 3].remainder


def _check_pair(r1: int, r2: int) -> None:
    if r2 < 1:
        raise EuclidError("r2 must be at least 1")
    if r1 <= r2:
        raise EuclidError(f"argument order: need r1 > r2, got r1={r1}, r2={r2}")
    d = math.gcd(r1, r2)
    if d != 1:
        raise EuclidError(
            f"reduce first: gcd({r1}, {r2}) = {d}; apply gcd_reduce to the agent counts"
        )


def euclid_trace(r1: int, r2: int) -> EuclidTrace:
    _check_pair(r1, r2)
    lines = []
    a, b = r1, r2
    while b:
        q, rem = divmod(a, b)
        lines.append(EuclidLine(a, q, b, rem))
        a, b = b, rem
    return EuclidTrace(r1, r2, tuple(lines))


def halt_number(trace: EuclidTrace) -> int:
    return sum(trace.a_sequence)


def stage_lengths(trace: EuclidTrace) -> list[int]:
    """Stage i lasts a_i * r_{i+1} a.u.; the last stage lasts a_t + 1."""
    out = [ln.quotient * ln.divisor for ln in trace.lines[:-1]]
    out.append(trace.lines[-1].quotient + 1)
    return out


def halt_instants(trace: EuclidTrace) -> list[int]:
    """a.u. instants of every halt, in order."""
    out, clock = [], 0
    for ln in trace.lines:
        for _ in range(ln.quotient):
            clock += ln.divisor
            out.append(clock)
    return out


Record = tuple[int, int]


def stage_records(trace: EuclidTrace) -> list[tuple[Record, Record]]:
    """Closed-form (passive, active) type-1/type-2 work records after each stage.

    For the final stage both records are taken after the closing a.u., where
    every object has met both quotas.
    """
    r1, r2, r = trace.r1, trace.r2, trace.r
    out: list[tuple[Record, Record]] = []
    for i in range(1, trace.t + 1):
        if i == trace.t:
            out.append(((r1, r2), (r1, r2)))
        elif i % 2:
            out.append(((r1 - r(i + 1) - r(i + 2), r2), (r1 - r(i + 2), r2 - r(i + 1))))
        else:
            out.append(((r1, r2 - r(i + 1) - r(i + 2)), (r1 - r(i + 1), r2 - r(i + 2))))
    return out


@dataclass(frozen=True)
class StageReport:
    stage: int
    length_au: int
    halts_at: tuple[int, ...]
    passive_record: Record
    active_record: Record
    blocks: tuple[tuple[int, ...], ...]
    passive_objects: tuple[int, ...]
    active_objects: tuple[int, ...]


def agent_types(r1: int, r2: int, agent_order: str = "type1-first") -> tuple[int, ...]:
    """Type (1 or 2) of each agent id, indexed by id - 1."""
    if agent_order == "type1-first":
        return (1,) * r1 + (2,) * r2
    if agent_order == "type2-first":
        return (2,) * r2 + (1,) * r1
    raise EuclidError(f"agent order must be one of {AGENT_ORDERS}")


def euclid_spec(
    r1: int,
    r2: int,
    agent_order: str = "type1-first",
    times: tuple[RationalLike, RationalLike] = (1, 2),
) -> ProblemSpec:
    """Two-class problem whose class order matches the agent labelling."""
    t1, t2 = (to_rational(x) for x in times)
    if t1 == t2:
        raise EuclidError("the two agent types must have different completion times")
    if agent_order == "type1-first":
        return ProblemSpec.from_pairs([(t1, r1), (t2, r2)])
    if agent_order == "type2-first":
        return ProblemSpec.from_pairs([(t2, r2), (t1, r1)])
    raise EuclidError(f"agent order must be one of {AGENT_ORDERS}")


def _blocks(majority: Sequence[int], size: int, count: int, from_top: bool) -> list[list[int]]:
    """Cut ``count`` blocks of ``size`` plus a remainder block from sorted objects."""
    seq = list(reversed(majority)) if from_top else list(majority)
    cut = [seq[k * size:(k + 1) * size] for k in range(count)]
    cut.append(seq[count * size:])
    return [sorted(b) for b in cut]


def build_euclidean(
    r1: int,
    r2: int,
    agent_order: str = "type1-first",
    times: tuple[RationalLike, RationalLike] = (1, 2),
) -> tuple[AssignmentMatrix, list[StageReport]]:
    """Construct E(r1, r2) column by column.

    Object i starts on agent i. Blocks are carved from the majority-type
    active objects from the lowest index up in odd stages and from the highest
    index down in even stages; swapped blocks are paired in index order.
    """
    trace = euclid_trace(r1, r2)
    spec = euclid_spec(r1, r2, agent_order, times)
    kind = agent_types(r1, r2, agent_order)
    n = r1 + r2
    holder = list(range(1, n + 1))  # holder[obj - 1] = agent
    columns: list[tuple[int, ...]] = []
    active = list(range(1, n + 1))
    closed_records = stage_records(trace)
    reports: list[StageReport] = []

    def work(units: int) -> None:
        col = tuple(holder)
        columns.extend([col] * units)

    for i, ln in enumerate(trace.lines, start=1):
        majority_type = 1 if i % 2 else 2
        minority = sorted(o for o in active if kind[holder[o - 1] - 1] != majority_type)
        majority = sorted(o for o in active if kind[holder[o - 1] - 1] == majority_type)
        if len(minority) != ln.divisor or len(majority) != ln.dividend:
            raise AssertionError("stage entry does not match the division line")
        blocks = [minority] + _blocks(majority, ln.divisor, ln.quotient, from_top=i % 2 == 0)
        start = len(columns)
        halts = []
        for j in range(ln.quotient):
            work(ln.divisor)
            halts.append(len(columns))
            for x, y in zip(blocks[j], blocks[j + 1]):
                holder[x - 1], holder[y - 1] = holder[y - 1], holder[x - 1]
        if i == trace.t:
            work(1)
        passive = sorted(o for b in blocks[: ln.quotient] for o in b)
        active = sorted(blocks[ln.quotient] + blocks[ln.quotient + 1])
        if i == trace.t:
            passive, active = sorted(passive + active), []
        reports.append(
            StageReport(
                stage=i,
                length_au=len(columns) - start,
                halts_at=tuple(halts),
                passive_record=closed_records[i - 1][0],
                active_record=closed_records[i - 1][1],
                blocks=tuple(tuple(b) for b in blocks),
                passive_objects=tuple(passive),
                active_objects=tuple(active),
            )
        )

    entries = tuple(tuple(columns[j][o] for j in range(n)) for o in range(n))
    return AssignmentMatrix(entries, 1 / spec.rate), reports


def type_records(
    m: AssignmentMatrix, kind: Sequence[int], upto: int
) -> list[Record]:
    """(type-1 a.u., type-2 a.u.) per object over the first ``upto`` columns."""
    out = []
    for row in m.entries:
        ones = sum(1 for a in row[:upto] if kind[a - 1] == 1)
        out.append((ones, upto - ones))
    return out


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class FibonacciReport:
    p: int
    r1: int
    r2: int
    n: int
    h: int
    log_phi_n: float
    within_bound: bool
    halts_at: tuple[int, ...]


def fibonacci_analysis(p: int) -> FibonacciReport:
    """Halt count of E(f_{p+1}, f_p) against the log-base-phi bound on n = f_{p+2}.

    Small cases outside the bound are flagged through ``within_bound`` rather
    than raised.
    """
    if p < 2:
        raise EuclidError("p must be at least 2")
    r1, r2 = fibonacci(p + 1), fibonacci(p)
    trace = euclid_trace(r1, r2)
    n = r1 + r2
    h = halt_number(trace)
    bound = math.log(n) / LOG_PHI
    return FibonacciReport(p, r1, r2, n, h, bound, h <= bound, tuple(halt_instants(trace)))


@dataclass(frozen=True)
class HaltStatistics:
    n: int
    mean: Fraction
    per_pair: tuple[tuple[tuple[int, int], int], ...]


def halt_statistics(n: int) -> HaltStatistics:
    """Exact mean halt number over coprime (r1, r2), r1 > r2 >= 1, r1 + r2 = n."""
    if n < 3:
        raise EuclidError("n must be at least 3")
    pairs = []
    for r2 in range(1, (n + 1) // 2):
        r1 = n - r2
        if r1 > r2 and math.gcd(r1, r2) == 1:
            pairs.append(((r1, r2), halt_number(euclid_trace(r1, r2))))
    mean = Fraction(sum(h for _, h in pairs), len(pairs))
    return HaltStatistics(n, mean, tuple(pairs))
