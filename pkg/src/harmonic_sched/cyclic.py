"""The n-cyclic scheme, gcd reduction, p-object plans and direct sums."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AgentClass,
    AssignmentMatrix,
    ProblemSpec,
    Scheme,
    SchemeError,
    Segment,
    matrix_to_scheme,
)
from .harmonic import atomic_unit, optimum_time
from .verifier import validate


class IncompatibleParts(SchemeError):
    """Direct-sum parts do not share a common optimum time."""


def build_cyclic(spec: ProblemSpec) -> AssignmentMatrix:
    """Every a.u. each agent passes its object to the next agent (n wraps to 1).

    Object i starts on agent i, so entry (i, j) is agent ((i + j - 2) mod n) + 1.
    """
    if spec.objects != spec.n:
        raise SchemeError("the cyclic scheme needs as many objects as agents")
    n = spec.n
    entries = tuple(tuple((i + j) % n + 1 for j in range(n)) for i in range(n))
    return AssignmentMatrix(entries, atomic_unit(spec))


def object_progress(s: Scheme, spec: ProblemSpec, obj: int, time: Fraction) -> Fraction:
    """Fraction of object ``obj`` built by ``time`` hours."""
    if not 1 <= obj <= s.n_objects:
        raise SchemeError(f"unknown object {obj}")
    time = Fraction(time)
    if not 0 <= time <= s.end:
        raise ValueError("time outside the scheme")
    done = Fraction(0)
    for seg in s.segments[obj - 1]:
        end = min(seg.end, time)
        if end <= seg.start:
            break
        done += (end - seg.start) / spec.agent_time(seg.agent)
    return done


def gcd_reduce(spec: ProblemSpec) -> tuple[ProblemSpec, int]:
    """Group agents (and objects) into d-sets, d = gcd of the class counts."""
    if spec.objects != spec.n:
        raise SchemeError("gcd reduction applies when objects equal agents")
    d = math.gcd(*spec.counts)
    if d == 1:
        return spec, 1
    reduced = ProblemSpec(tuple(AgentClass(c.completion_time, c.count // d) for c in spec.classes))
    return reduced, d


@dataclass(frozen=True)
class ProductionPlan:
    """``rounds`` back-to-back copies of ``base_scheme``, then an optional remainder.

    ``remainder_scheme`` is timed from its own start (``rounds * H``) and uses
    global agent ids.
    """

    objects: int
    rounds: int
    base_scheme: Scheme
    base_time: Fraction
    remainder_scheme: Scheme | None = None
    remainder_time: Fraction = Fraction(0)

    @property
    def remainder(self) -> int:
        return 0 if self.remainder_scheme is None else self.remainder_scheme.n_objects

    @property
    def total_time(self) -> Fraction:
        return self.rounds * self.base_time + self.remainder_time


def fastest_agents(spec: ProblemSpec, b: int) -> list[int]:
    """The ``b`` agents with the smallest completion times, lowest id first on ties."""
    cls = spec.agent_classes()
    order = sorted(range(1, spec.n + 1), key=lambda a: (spec.classes[cls[a - 1] - 1].completion_time, a))
    return sorted(order[:b])


def extend_to_p(spec: ProblemSpec, base: Scheme) -> ProductionPlan:
    """Repeat an optimal n-object scheme and finish leftovers on the fastest agents."""
    if not validate(ProblemSpec(spec.classes), base).optimal:
        raise SchemeError("base scheme is not optimal for the n-object problem")
    n, p = spec.n, spec.objects
    a, b = divmod(p, n)
    h = optimum_time(spec)
    if b == 0:
        return ProductionPlan(p, a, base, h)

    chosen = fastest_agents(spec, b)
    cls = spec.agent_classes()
    sub_classes: list[tuple[Fraction, int]] = []
    for agent in chosen:
        t = spec.classes[cls[agent - 1] - 1].completion_time
        if sub_classes and sub_classes[-1][0] == t:
            sub_classes[-1] = (t, sub_classes[-1][1] + 1)
        else:
            sub_classes.append((t, 1))
    sub_spec = ProblemSpec.from_pairs(sub_classes)
    local = matrix_to_scheme(build_cyclic(sub_spec))
    remapped = Scheme(
        tuple(
            tuple(Segment(chosen[s.agent - 1], s.start, s.end) for s in row)
            for row in local.segments
        )
    )
    return ProductionPlan(p, a, base, h, remapped, optimum_time(sub_spec))


def direct_sum(parts: Sequence[tuple[ProblemSpec, Scheme]]) -> tuple[ProblemSpec, Scheme]:
    """Run optimal sub-schemes side by side over the same interval [0, H].

    Agents and objects are re-based part by part in input order.
    """
    if not parts:
        raise ValueError("direct sum of no parts")
    target = optimum_time(parts[0][0])
    classes: list[AgentClass] = []
    rows: list[tuple[Segment, ...]] = []
    offset = 0
    for spec, scheme in parts:
        if optimum_time(spec) != target:
            raise IncompatibleParts("incompatible parts: optimum times differ")
        if scheme.n_objects != spec.n:
            raise SchemeError("each part needs one object per agent")
        classes.extend(spec.classes)
        rows.extend(scheme.shifted(Fraction(0), offset))
        offset += spec.n
    try:
        combined = ProblemSpec(tuple(classes))
    except SchemeError as exc:
        raise IncompatibleParts(f"incompatible parts: {exc}") from exc
    return combined, Scheme(tuple(rows))
