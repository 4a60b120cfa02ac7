"""Harmonic means, optimum-time formulas and harmonic-mean-preserving splits."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .core import ProblemSpec, RationalLike, to_rational

SPLIT_BOUND = 24


class CapacityError(ValueError):
    """Input too long for exhaustive split enumeration."""


def harmonic_mean(times: Iterable[RationalLike]) -> Fraction:
    values = [to_rational(t) for t in times]
    if not values:
        raise ValueError("harmonic mean of an empty list")
    if any(v <= 0 for v in values):
        raise ValueError("harmonic mean needs positive entries")
    return len(values) / sum(1 / v for v in values)


def optimum_time(spec: ProblemSpec) -> Fraction:
    """Minimum completion time for n objects: n over the combined rate."""
    return spec.n / spec.rate


def atomic_unit(spec: ProblemSpec) -> Fraction:
    """Hours for the whole fleet to build the equivalent of one object."""
    return 1 / spec.rate


def build_proportions(spec: ProblemSpec) -> list[Fraction]:
    """Share of the total output produced by each class, in class order."""
    rate = spec.rate
    return [c.count / c.completion_time / rate for c in spec.classes]


def _divisors(x: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(x) + 1):
        if x % d == 0:
            small.append(d)
            if d != x // d:
                large.append(x // d)
    return small + large[::-1]


def harmonic_pairs(m: int) -> list[tuple[int, int]]:
    """All integer pairs x <= y whose harmonic mean is exactly 2m.

    Uses (x - m)(y - m) = m**2, one pair per divisor d <= m of m**2.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    sq = m * m
    return [(d + m, sq // d + m) for d in _divisors(sq) if d <= m]


@dataclass(frozen=True)
class HarmonicPartition:
    parts: tuple[tuple[Fraction, ...], ...]
    mean: Fraction


def _key(part: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sorted(part))


def _count_vectors(weights: Sequence[int], counts: Sequence[int]) -> dict[int, list[tuple[int, ...]]]:
    """Map sub-multiset sum -> every vector of how many copies of each value is taken."""
    sums: dict[int, list[tuple[int, ...]]] = {0: [()]}
    for w, c in zip(weights, counts):
        nxt: dict[int, list[tuple[int, ...]]] = {}
        for s, vecs in sums.items():
            for take in range(c + 1):
                nxt.setdefault(s + take * w, []).extend(v + (take,) for v in vecs)
        sums = nxt
    return sums


def split_search(times: Sequence[RationalLike], bound: int = SPLIT_BOUND) -> list[HarmonicPartition]:
    """Every two-part split of ``times`` in which both parts keep the harmonic mean.

    A sub-list U has mean H exactly when sum(1/u - 1/H) over U is zero, so
    this is a zero-sum search, done meet-in-the-middle on integers scaled by
    the common denominator. Repeated values are enumerated by multiplicity,
    so content-identical sub-lists are generated once. Splits are returned
    sorted; within a split the lexicographically smaller part comes first.
    """
    values = [to_rational(t) for t in times]
    if len(values) > bound:
        raise CapacityError(f"list of {len(values)} exceeds enumeration bound {bound}")
    mean = harmonic_mean(values)
    if len(values) < 2:
        return []
    multiset = Counter(values)
    distinct = sorted(multiset)
    counts = [multiset[v] for v in distinct]
    weights = [1 / v - 1 / mean for v in distinct]
    scale = math.lcm(*(w.denominator for w in weights))
    ints = [int(w * scale) for w in weights]

    # balance the two halves by the number of count vectors each enumerates
    half, size, total = 0, 1, math.prod(c + 1 for c in counts)
    while half < len(counts) and size * size < total:
        size *= counts[half] + 1
        half += 1
    left = _count_vectors(ints[:half], counts[:half])
    right = _count_vectors(ints[half:], counts[half:])
    full = tuple(counts)
    seen: set[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]] = set()
    out: list[HarmonicPartition] = []
    for s, lvecs in left.items():
        for rv in right.get(-s, ()):
            for lv in lvecs:
                vec = lv + rv
                if not any(vec) or vec == full:
                    continue
                u = tuple(v for v, k in zip(distinct, vec) for _ in range(k))
                w = tuple(v for v, k, c in zip(distinct, vec, counts) for _ in range(c - k))
                pair = (u, w) if u <= w else (w, u)
                if pair not in seen:
                    seen.add(pair)
                    out.append(HarmonicPartition(pair, mean))
    out.sort(key=lambda p: p.parts)
    return out


def irreducible_representation(
    times: Sequence[RationalLike], bound: int = SPLIT_BOUND
) -> HarmonicPartition:
    """Split repeatedly, always taking the least split, until no part splits further."""
    values = [to_rational(t) for t in times]
    mean = harmonic_mean(values)
    if len(values) > bound:
        raise CapacityError(f"list of {len(values)} exceeds enumeration bound {bound}")

    def expand(part: tuple[Fraction, ...]) -> list[tuple[Fraction, ...]]:
        splits = split_search(part, bound)
        if not splits:
            return [part]
        first, second = splits[0].parts
        return expand(first) + expand(second)

    parts = sorted(expand(_key(values)))
    return HarmonicPartition(tuple(parts), mean)
