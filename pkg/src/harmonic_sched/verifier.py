"""Scheme validation, uniformity, type projection and the greedy oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AssignmentMatrix,
    ProblemSpec,
    Scheme,
    SchemeError,
    WorkRecord,
    matrix_to_scheme,
    work_record,
)
from .euclid import agent_types, euclid_spec, euclid_trace
from .harmonic import optimum_time


@dataclass(frozen=True)
class ValidationReport:
    continuous_per_object: bool
    agents_always_busy: bool
    simultaneous_finish: bool
    objects_completed: bool
    duration: Fraction
    optimum: Fraction
    optimal: bool
    uniform: bool
    halt_count: int
    work_records: WorkRecord


def _check_references(spec: ProblemSpec, s: Scheme) -> None:
    if s.n_objects != spec.n:
        raise SchemeError(f"scheme has {s.n_objects} objects, spec has {spec.n} agents")
    bad = [a for a in s.agents() if not 1 <= a <= spec.n]
    if bad:
        raise SchemeError(f"scheme references unknown agents {sorted(bad)}")


def _finish_time(s_row, spec: ProblemSpec) -> Fraction | None:
    """Instant at which the object's build reaches 1, or None if it never does."""
    done = Fraction(0)
    for seg in s_row:
        rate = 1 / spec.agent_time(seg.agent)
        gain = seg.duration * rate
        if done + gain >= 1:
            return seg.start + (1 - done) / rate
        done += gain
    return None


def validate(spec: ProblemSpec, s: Scheme) -> ValidationReport:
    """Check that ``s`` keeps every agent busy until all objects finish together at H."""
    _check_references(spec, s)
    duration = s.end
    continuous = all(
        row[0].start == 0 and all(a.end == b.start for a, b in zip(row, row[1:]))
        for row in s.segments
    )
    busy: dict[int, Fraction] = {a: Fraction(0) for a in range(1, spec.n + 1)}
    for row in s.segments:
        for seg in row:
            busy[seg.agent] += seg.duration
    # segments never overlap per agent, so full coverage means total busy time == duration
    always_busy = all(v == duration for v in busy.values())

    finishes = [_finish_time(row, spec) for row in s.segments]
    completed = all(f is not None for f in finishes)
    simultaneous = completed and all(
        f == duration and row[-1].end == duration for f, row in zip(finishes, s.segments)
    )
    h = optimum_time(spec)
    optimal = continuous and always_busy and simultaneous and duration == h
    return ValidationReport(
        continuous_per_object=continuous,
        agents_always_busy=always_busy,
        simultaneous_finish=simultaneous,
        objects_completed=completed,
        duration=duration,
        optimum=h,
        optimal=optimal,
        uniform=is_uniform(spec, s),
        halt_count=len(s.change_instants()),
        work_records=work_record(s, spec, unit="au"),
    )


def is_uniform(spec: ProblemSpec, s: Scheme) -> bool:
    """Every object is worked continuously and gets exactly k_i a.u. from class i."""
    _check_references(spec, s)
    for row in s.segments:
        if row[0].start != 0 or any(a.end != b.start for a, b in zip(row, row[1:])):
            return False
    records = work_record(s, spec, unit="au")
    return all(
        rec[c] == k for rec in records.totals for c, k in enumerate(spec.counts, start=1)
    )


@dataclass(frozen=True)
class TypeMatrix:
    """Class index (1 or 2) per cell, plus the k-uniformity verdict."""

    classes: tuple[tuple[int, ...], ...]
    k_uniform: bool

    def binary(self, zero_class: int = 1) -> tuple[tuple[int, ...], ...]:
        """0/1 projection; ``zero_class`` selects which class is written as 0."""
        if zero_class not in (1, 2):
            raise ValueError("zero_class must be 1 or 2")
        return tuple(tuple(0 if c == zero_class else 1 for c in row) for row in self.classes)


def type_matrix(spec: ProblemSpec, m: AssignmentMatrix) -> TypeMatrix:
    """Project agents to classes and test that every row and column holds k_1 class-1 cells."""
    if spec.m != 2:
        raise SchemeError(f"type projection is only defined for two classes, got {spec.m}")
    if m.n != spec.n:
        raise SchemeError("matrix size does not match the problem")
    cls = spec.agent_classes()
    grid = tuple(tuple(cls[a - 1] for a in row) for row in m.entries)
    k = spec.counts[0]
    rows_ok = all(row.count(1) == k for row in grid)
    cols_ok = all(sum(1 for row in grid if row[j] == 1) == k for j in range(m.n))
    return TypeMatrix(grid, rows_ok and cols_ok)


@dataclass(frozen=True)
class GreedyRun:
    matrix: AssignmentMatrix
    halts: tuple[int, ...]
    # per halt: sorted (type-1 a.u., type-2 a.u.) of every object at that instant
    records_at_halts: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def scheme(self) -> Scheme:
        return matrix_to_scheme(self.matrix)


def greedy_simulate(r1: int, r2: int, agent_order: str = "type1-first") -> GreedyRun:
    """Never halt until some object would overrun its quota for its current agent type.

    At a forced halt the objects that hit a quota switch type. The opposite
    side is filled from objects that still owe time to the other type, most
    urgent first (least remaining quota on their present type), lowest index
    on ties; outgoing and incoming objects then swap agents in index order.
    """
    euclid_trace(r1, r2)  # argument checks
    kind = agent_types(r1, r2, agent_order)
    spec = euclid_spec(r1, r2, agent_order)
    n = r1 + r2
    quota = {1: r1, 2: r2}
    holder = list(range(1, n + 1))
    rec = [{1: 0, 2: 0} for _ in range(n)]
    columns: list[tuple[int, ...]] = []
    halts: list[int] = []
    snapshots: list[tuple[tuple[int, int], ...]] = []

    def on(o: int) -> int:
        return kind[holder[o] - 1]

    for col in range(n):
        forced = [o for o in range(n) if rec[o][on(o)] + 1 > quota[on(o)]]
        if forced:
            if col == 0:
                raise AssertionError("quota exhausted before any work")
            halts.append(col)
            snapshots.append(tuple(sorted((r[1], r[2]) for r in rec)))
            leaving = {1: sorted(o for o in forced if on(o) == 1),
                       2: sorted(o for o in forced if on(o) == 2)}
            for src, dst in ((1, 2), (2, 1)):
                short = len(leaving[dst]) - len(leaving[src])
                if short <= 0:
                    continue
                pool = sorted(
                    (o for o in range(n)
                     if on(o) == src and o not in leaving[src] and rec[o][dst] < quota[dst]),
                    key=lambda o: (quota[src] - rec[o][src], o),
                )
                if len(pool) < short:
                    raise SchemeError("greedy reassignment impossible without breaking a quota")
                leaving[src] = sorted(leaving[src] + pool[:short])
            for x, y in zip(leaving[1], leaving[2]):
                holder[x], holder[y] = holder[y], holder[x]
        columns.append(tuple(holder))
        for o in range(n):
            rec[o][on(o)] += 1

    entries = tuple(tuple(columns[j][o] for j in range(n)) for o in range(n))
    return GreedyRun(AssignmentMatrix(entries, 1 / spec.rate), tuple(halts), tuple(snapshots))
