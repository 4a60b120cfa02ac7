"""Exact time arithmetic and the shared data model.

All times are :class:`fractions.Fraction` hours. Agents and objects are
1-based; agents are numbered class by class in the order the classes are
listed in a :class:`ProblemSpec`.
"""

from __future__ import annotations

import operator
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class SchemeError(ValueError):
    """A scheme, matrix or problem violates a structural requirement."""


class NotGridAligned(SchemeError):
    """A scheme has an exchange that does not fall on an atomic-unit boundary."""


def to_rational(value: RationalLike) -> Fraction:
    """Parse an int, Fraction, ``"num/den"`` or decimal string exactly.

    Floats are refused: they would smuggle binary rounding into the model.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"unsupported rational input: {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Serialize as ``"num/den"`` (or ``"num"`` for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "−": operator.sub,
    "*": operator.mul,
    "×": operator.mul,
    "/": operator.truediv,
    "÷": operator.truediv,
}


def rational_arithmetic(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    """Apply ``op`` exactly. Division by zero raises :class:`ZeroDivisionError`."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    x, y = to_rational(a), to_rational(b)
    if fn is operator.truediv and y == 0:
        raise ZeroDivisionError(f"division of {format_rational(x)} by zero")
    return fn(x, y)


@dataclass(frozen=True)
class AgentClass:
    completion_time: Fraction
    count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "completion_time", to_rational(self.completion_time))
        if self.completion_time <= 0:
            raise SchemeError("completion time must be positive")
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 1:
            raise SchemeError("agent count must be a positive integer")


@dataclass(frozen=True)
class ProblemSpec:
    """Agent classes plus the number of objects ordered (defaults to n)."""

    classes: tuple[AgentClass, ...]
    objects: int | None = None

    def __post_init__(self) -> None:
        classes = tuple(
            c if isinstance(c, AgentClass) else AgentClass(*c) for c in self.classes
        )
        object.__setattr__(self, "classes", classes)
        if not classes:
            raise SchemeError("at least one agent class is required")
        times = [c.completion_time for c in classes]
        if len(set(times)) != len(times):
            raise SchemeError("completion times must be pairwise distinct across classes")
        n = sum(c.count for c in classes)
        if self.objects is None:
            object.__setattr__(self, "objects", n)
        elif self.objects < n:
            raise SchemeError(f"object count {self.objects} is below agent count {n}")

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[RationalLike, int]], objects: int | None = None
    ) -> ProblemSpec:
        """Build from ``(completion_time, count)`` pairs."""
        return cls(tuple(AgentClass(to_rational(t), k) for t, k in pairs), objects)

    @property
    def n(self) -> int:
        return sum(c.count for c in self.classes)

    @property
    def m(self) -> int:
        return len(self.classes)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c.count for c in self.classes)

    @property
    def times(self) -> tuple[Fraction, ...]:
        return tuple(c.completion_time for c in self.classes)

    def agent_classes(self) -> tuple[int, ...]:
        """Class index (1-based) of each agent, indexed by agent id - 1."""
        out: list[int] = []
        for idx, c in enumerate(self.classes, start=1):
            out.extend([idx] * c.count)
        return tuple(out)

    def agent_time(self, agent: int) -> Fraction:
        if not 1 <= agent <= self.n:
            raise SchemeError(f"agent {agent} outside 1..{self.n}")
        return self.classes[self.agent_classes()[agent - 1] - 1].completion_time

    def expanded_times(self) -> list[Fraction]:
        """One completion time per agent, in agent order."""
        return [c.completion_time for c in self.classes for _ in range(c.count)]

    @property
    def rate(self) -> Fraction:
        """Combined production rate in objects per hour."""
        return sum((Fraction(c.count) / c.completion_time for c in self.classes), Fraction(0))


@dataclass(frozen=True)
class Segment:
    agent: int
    start: Fraction
    end: Fraction

    @property
    def duration(self) -> Fraction:
        return self.end - self.start


@dataclass(frozen=True)
class Scheme:
    """Per-object ordered work segments; ``segments[i]`` belongs to object i+1."""

    segments: tuple[tuple[Segment, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.segments)
        object.__setattr__(self, "segments", rows)
        for obj, row in enumerate(rows, start=1):
            if not row:
                raise SchemeError(f"object {obj} has no segments")
            if row[0].start != 0:
                raise SchemeError(f"object {obj} does not start at time 0")
            for seg in row:
                if not seg.start < seg.end:
                    raise SchemeError(f"object {obj} has an empty or reversed segment")
            for prev, nxt in zip(row, row[1:]):
                if prev.end != nxt.start:
                    raise SchemeError(f"object {obj} is not worked continuously")
        _check_no_double_booking(rows)

    @property
    def n_objects(self) -> int:
        return len(self.segments)

    @property
    def end(self) -> Fraction:
        return max(row[-1].end for row in self.segments)

    def agents(self) -> set[int]:
        return {seg.agent for row in self.segments for seg in row}

    def change_instants(self) -> list[Fraction]:
        """Sorted instants at which at least one object changes agent."""
        instants = {
            nxt.start
            for row in self.segments
            for prev, nxt in zip(row, row[1:])
            if prev.agent != nxt.agent
        }
        return sorted(instants)

    def shifted(self, offset: Fraction, agent_offset: int = 0) -> tuple[tuple[Segment, ...], ...]:
        return tuple(
            tuple(Segment(s.agent + agent_offset, s.start + offset, s.end + offset) for s in row)
            for row in self.segments
        )


def _check_no_double_booking(rows: Sequence[Sequence[Segment]]) -> None:
    by_agent: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for row in rows:
        for seg in row:
            by_agent.setdefault(seg.agent, []).append((seg.start, seg.end))
    for agent, spans in by_agent.items():
        spans.sort()
        for (_, e0), (s1, _) in zip(spans, spans[1:]):
            if s1 < e0:
                raise SchemeError(f"agent {agent} works two objects at once")


@dataclass(frozen=True)
class AssignmentMatrix:
    """Row i is object i+1, column j is the (j+1)-th atomic unit."""

    entries: tuple[tuple[int, ...], ...]
    au_hours: Fraction

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "au_hours", to_rational(self.au_hours))
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise SchemeError("assignment matrix must be square and non-empty")
        if self.au_hours <= 0:
            raise SchemeError("atomic unit must be positive")
        expected = set(range(1, n + 1))
        for j in range(n):
            if {rows[i][j] for i in range(n)} != expected:
                raise SchemeError(f"column {j + 1} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def halt_columns(self) -> list[int]:
        """1-based a.u. indices j such that a halt occurs at the end of interval j."""
        return [j + 1 for j in range(self.n - 1) if self.column(j) != self.column(j + 1)]

    def permute_rows(self, order: Sequence[int]) -> AssignmentMatrix:
        return AssignmentMatrix(tuple(self.entries[i] for i in order), self.au_hours)


@dataclass(frozen=True)
class WorkRecord:
    """Per object, class index -> total time worked by that class."""

    totals: tuple[dict[int, Fraction], ...]
    unit: str = "hours"

    def of(self, obj: int) -> dict[int, Fraction]:
        return self.totals[obj - 1]


def work_record(s: Scheme, spec: ProblemSpec, unit: str = "hours", until: Fraction | None = None) -> WorkRecord:
    """Time each object has spent with each class, optionally clipped at ``until``."""
    if unit not in ("hours", "au"):
        raise ValueError("unit must be 'hours' or 'au'")
    scale = spec.rate if unit == "au" else Fraction(1)
    cls = spec.agent_classes()
    totals = []
    for row in s.segments:
        rec = {c: Fraction(0) for c in range(1, spec.m + 1)}
        for seg in row:
            end = seg.end if until is None else min(seg.end, until)
            if end > seg.start:
                rec[cls[seg.agent - 1]] += (end - seg.start) * scale
        totals.append(rec)
    return WorkRecord(tuple(totals), unit)


def matrix_to_scheme(m: AssignmentMatrix) -> Scheme:
    """Collapse each row into maximal constant runs, measured in hours."""
    au = m.au_hours
    rows = []
    for row in m.entries:
        segs: list[Segment] = []
        start = 0
        for j in range(1, m.n + 1):
            if j == m.n or row[j] != row[start]:
                segs.append(Segment(row[start], au * start, au * j))
                start = j
        rows.append(tuple(segs))
    return Scheme(tuple(rows))


def scheme_to_matrix(s: Scheme, spec: ProblemSpec) -> AssignmentMatrix:
    """Sample the scheme on the atomic-unit grid of ``spec``."""
    n = spec.n
    au = 1 / spec.rate
    if s.n_objects != n:
        raise SchemeError(f"scheme has {s.n_objects} objects, spec has {n}")
    rows = []
    for obj, row in enumerate(s.segments, start=1):
        if row[-1].end != au * n:
            raise NotGridAligned(f"object {obj} does not span exactly {n} atomic units")
        cells: list[int] = []
        for seg in row:
            lo, hi = seg.start / au, seg.end / au
            if lo.denominator != 1 or hi.denominator != 1:
                raise NotGridAligned(
                    f"not grid-aligned: object {obj} changes agent at "
                    f"{format_rational(seg.end)} h = {format_rational(hi)} a.u."
                )
            cells.extend([seg.agent] * int(hi - lo))
        rows.append(tuple(cells))
    return AssignmentMatrix(tuple(rows), au)

