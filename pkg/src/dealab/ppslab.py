"""Constructions on integer production possibility sets.

The real variable-returns technology of a dataset is the free-disposal hull
of the convex hull of the observations.  Its integer counterpart can be
defined two non-equivalent ways, and this module makes both executable:

* generatively, by applying axioms (inclusion of observations, integer points
  of pairwise segments, integer disposal within a box) in a chosen order,
  once or to a fixpoint -- :func:`axiom_closure`;
* extensionally, as the integer lattice points of the real technology --
  :func:`membership_real_vrs` plus an integrality check, or equivalently
  :func:`membership_integer_vrs` with its disposed-generators search.

A single generative pass misses points (:func:`generation_gap` lists them),
which is the discrepancy the rest of the laboratory probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Literal, Optional

from .core import (
    BoundingBox,
    BoxError,
    Dataset,
    DimensionError,
    IntegralityError,
    Point,
    Rational,
)
from .solver import Constraint, LpProblem, solve_lp

__all__ = [
    "AxiomName",
    "AxiomOrder",
    "Provenance",
    "ClosureState",
    "integer_segment_points",
    "integer_disposal_points",
    "axiom_closure",
    "membership_real_vrs",
    "membership_integer_vrs",
    "generation_gap",
    "convex_combination_witness",
]

AxiomName = Literal["inclusion", "convexity", "disposal"]


@dataclass(frozen=True)
class AxiomOrder:
    """An application order for the generative axioms.

    ``inclusion`` must come first and exactly once; the tail may arrange
    ``convexity`` and ``disposal`` freely.  With ``iterate_to_fixpoint`` the
    tail is swept repeatedly until no new point appears; otherwise it runs
    exactly once, which is the order-sensitive single-pass construction.
    """

    sequence: tuple[AxiomName, ...] = ("inclusion", "convexity", "disposal")
    iterate_to_fixpoint: bool = False

    def __post_init__(self) -> None:
        sequence = tuple(self.sequence)
        object.__setattr__(self, "sequence", sequence)
        if not sequence or sequence[0] != "inclusion":
            raise ValueError("the axiom sequence must start with inclusion")
        tail = sequence[1:]
        if "inclusion" in tail:
            raise ValueError("inclusion may appear only once")
        for axiom in tail:
            if axiom not in ("convexity", "disposal"):
                raise ValueError(f"unknown axiom {axiom!r}")


@dataclass(frozen=True)
class Provenance:
    """How a closure point was first generated."""

    rule: AxiomName
    generation: int
    parents: tuple[Point, ...] = ()
    weight: Optional[tuple[int, int]] = None  # (u, v): point = parent0 + (u/v)*(parent1 - parent0)


@dataclass
class ClosureState:
    """The generated point set plus a first-generation log for every point."""

    points: frozenset[Point]
    provenance: dict[Point, Provenance]
    generations: int

    def log(self) -> list[tuple[Point, Provenance]]:
        """Points ordered by generation, then lexicographically."""
        return sorted(self.provenance.items(), key=lambda kv: (kv[1].generation, kv[0]))


def _require_same_dims(a: Point, b: Point) -> None:
    if len(a.inputs) != len(b.inputs) or len(a.outputs) != len(b.outputs):
        raise DimensionError(f"{a} and {b} have different dimensions")


def _segment_with_weights(a: Point, b: Point) -> list[tuple[Point, int, int]]:
    """Interior lattice points of [a, b] with their (u, v) weights."""
    _require_same_dims(a, b)
    if not a.is_integer or not b.is_integer:
        raise IntegralityError("segment endpoints must be integer points")
    if a == b:
        return []
    delta = [int(bc) - int(ac) for ac, bc in zip(a.coordinates(), b.coordinates())]
    g = 0
    for d in delta:
        g = gcd(g, abs(d))
    if g <= 1:
        return []
    step = [d // g for d in delta]
    m = len(a.inputs)
    out = []
    for k in range(1, g):
        coords = [int(c) + k * s for c, s in zip(a.coordinates(), step)]
        point = Point(tuple(coords[:m]), tuple(coords[m:]))
        u, v = Fraction(k, g).numerator, Fraction(k, g).denominator
        out.append((point, u, v))
    return out


def integer_segment_points(a: Point, b: Point) -> frozenset[Point]:
    """Lattice points strictly between two integer points.

    Non-empty exactly when the componentwise differences share a common
    divisor v > 1; the points then sit at the multiples of 1/v along the
    segment.  The set is symmetric in its arguments.
    """
    return frozenset(point for point, _, _ in _segment_with_weights(a, b))


def integer_disposal_points(a: Point, box: BoundingBox) -> frozenset[Point]:
    """Integer points weakly worse than ``a`` within the box, except ``a``.

    Worse means componentwise: inputs at least as large (capped by the box),
    outputs at most as large (floored at zero).
    """
    if not a.is_integer:
        raise IntegralityError(f"disposal needs an integer point, got {a}")
    if not box.contains(a):
        raise BoxError(f"point {a} lies outside the box")
    ins, outs = a.as_int_tuples()
    input_ranges = [range(x, cap + 1) for x, cap in zip(ins, box.input_max)]
    output_ranges = [range(0, y + 1) for y in outs]
    points = set()
    for worse_in in product(*input_ranges):
        for worse_out in product(*output_ranges):
            points.add(Point(worse_in, worse_out))
    points.discard(a)
    return frozenset(points)


def axiom_closure(
    data: Dataset, box: BoundingBox, order: AxiomOrder = AxiomOrder()
) -> ClosureState:
    """Generate integer points from the observations by applying axioms.

    One application of an axiom closes the current set under that axiom:
    disposal is idempotent anyway, and convexity is chased round by round
    until it adds nothing, so points found mid-application can seed further
    segments within the same application.  Each application gets its own
    generation index, so the provenance log shows e.g. that a disposal point
    appeared before the convexity application that later used it.  Candidate
    parents are visited in sorted order and only the first derivation of a
    point is recorded.
    """
    data.require_integer()
    if box.m != data.m or box.p != data.p:
        raise DimensionError("box dimensions do not match the dataset")
    if not box.contains_dataset(data):
        raise BoxError("every observed DMU must lie inside the box")
    provenance: dict[Point, Provenance] = {}
    for dmu in sorted(data, key=lambda d: d.point):
        point = dmu.point
        if point not in provenance:
            provenance[point] = Provenance("inclusion", 0)
    generation = 0
    tail = order.sequence[1:]
    while True:
        added_in_sweep = False
        for axiom in tail:
            generation += 1
            current = sorted(provenance)
            fresh: dict[Point, Provenance] = {}
            if axiom == "convexity":
                pool = current
                while True:
                    before = len(fresh)
                    for a, b in combinations(pool, 2):
                        for point, u, v in _segment_with_weights(a, b):
                            if point not in provenance and point not in fresh:
                                fresh[point] = Provenance(
                                    "convexity", generation, (a, b), (u, v)
                                )
                    if len(fresh) == before:
                        break
                    pool = sorted(set(current) | set(fresh))
            else:  # disposal
                for parent in current:
                    for point in sorted(integer_disposal_points(parent, box)):
                        if point not in provenance and point not in fresh:
                            fresh[point] = Provenance("disposal", generation, (parent,))
            if fresh:
                added_in_sweep = True
                provenance.update(fresh)
        if not order.iterate_to_fixpoint or not added_in_sweep:
            break
    return ClosureState(frozenset(provenance), provenance, generation)


def membership_real_vrs(
    data: Dataset, candidate: Point
) -> tuple[bool, Optional[tuple[Rational, ...]]]:
    """Is the candidate inside the real variable-returns technology?

    Returns the verdict together with an exact convex-weight witness when the
    answer is yes.  A candidate equal to an observation short-circuits to its
    unit weight vector.
    """
    if len(candidate.inputs) != data.m or len(candidate.outputs) != data.p:
        raise DimensionError(f"candidate {candidate} does not match dataset dimensions")
    for i, dmu in enumerate(data):
        if dmu.point == candidate:
            unit = tuple(
                Fraction(1) if k == i else Fraction(0) for k in range(data.n)
            )
            return True, unit
    zero = Fraction(0)
    rows = []
    for j in range(data.m):
        rows.append(
            Constraint(tuple(dmu.inputs[j] for dmu in data), "<=", candidate.inputs[j])
        )
    for r in range(data.p):
        rows.append(
            Constraint(tuple(dmu.outputs[r] for dmu in data), ">=", candidate.outputs[r])
        )
    rows.append(Constraint((Fraction(1),) * data.n, "=", Fraction(1)))
    solution = solve_lp(LpProblem("min", (zero,) * data.n, tuple(rows)))
    if solution.status != "optimal":
        return False, None
    return True, solution.values


def _on_hull_of(candidate: Point, generators: tuple[Point, ...]) -> bool:
    """Exact test for candidate in conv(generators)."""
    coords = candidate.coordinates()
    if len(generators) == 1:
        return generators[0] == candidate
    if len(generators) == 2:
        g, h = generators
        gc, hc = g.coordinates(), h.coordinates()
        t: Optional[Fraction] = None
        for cv, gv, hv in zip(coords, gc, hc):
            if gv == hv:
                if cv != gv:
                    return False
                continue
            ratio = Fraction(cv - gv, hv - gv)
            if t is None:
                t = ratio
            elif t != ratio:
                return False
        if t is None:  # identical generators
            return coords == gc
        return 0 <= t <= 1
    zero = Fraction(0)
    k = len(generators)
    rows = [
        Constraint(tuple(g.coordinates()[c] for g in generators), "=", coords[c])
        for c in range(len(coords))
    ]
    rows.append(Constraint((Fraction(1),) * k, "=", Fraction(1)))
    solution = solve_lp(LpProblem("min", (zero,) * k, tuple(rows)))
    return solution.status == "optimal"


def membership_integer_vrs(
    data: Dataset,
    candidate: Point,
    box: Optional[BoundingBox] = None,
    method: Literal["generators", "identity"] = "generators",
) -> bool:
    """Is the candidate generated by disposing then convex-combining?

    The ``generators`` method searches exhaustively: pick one integer
    disposal point per observation (within the box) and ask whether a convex
    combination of the picks hits the candidate exactly.  That combination of
    choices and weights is not expressible as a single linear program, hence
    the enumeration.  The ``identity`` method instead tests membership in the
    real technology; the two agree on every instance this laboratory has
    ever scanned, which is the executable form of the equivalence the
    construction is meant to have.
    """
    if not candidate.is_integer:
        raise IntegralityError(f"integer membership needs an integer candidate, got {candidate}")
    data.require_integer()
    if box is None:
        box = BoundingBox.from_dataset(data)
    if box.m != data.m or box.p != data.p:
        raise DimensionError("box dimensions do not match the dataset")
    if not box.contains(candidate):
        raise BoxError(f"candidate {candidate} lies outside the box")
    if method == "identity":
        return membership_real_vrs(data, candidate)[0]
    if method != "generators":
        raise ValueError(f"unknown method {method!r}")

    cand_in, cand_out = candidate.inputs, candidate.outputs
    # One observation alone suffices when the candidate is a disposal of it.
    for dmu in data:
        if all(cx >= x for cx, x in zip(cand_in, dmu.inputs)) and all(
            cy <= y for cy, y in zip(cand_out, dmu.outputs)
        ):
            return True
    pools = [
        sorted(integer_disposal_points(dmu.point, box) | {dmu.point})
        for dmu in data
    ]
    coords = candidate.coordinates()
    dim = len(coords)
    max_size = min(data.n, dim + 1)  # Caratheodory: more picks never help
    for size in range(2, max_size + 1):
        for subset in combinations(range(data.n), size):
            for picks in product(*(pools[i] for i in subset)):
                inside = True
                for c, value in enumerate(coords):
                    lo = min(p.coordinates()[c] for p in picks)
                    hi = max(p.coordinates()[c] for p in picks)
                    if not lo <= value <= hi:
                        inside = False
                        break
                if inside and _on_hull_of(candidate, picks):
                    return True
    return False


def generation_gap(data: Dataset, box: Optional[BoundingBox] = None) -> tuple[Point, ...]:
    """Lattice points of the real technology that one generative pass misses.

    Runs the single-pass closure (inclusion, convexity, disposal -- each
    once) and subtracts it from the integer points of the real technology
    within the box.  A non-empty result shows that the single pass is not a
    closure at all: disposal creates points whose segments were never
    convexified.
    """
    data.require_integer()
    if box is None:
        box = BoundingBox.from_dataset(data)
    single_pass = axiom_closure(data, box, AxiomOrder()).points
    gap = []
    for point in box.grid():
        if point in single_pass:
            continue
        if membership_real_vrs(data, point)[0]:
            gap.append(point)
    return tuple(gap)


def convex_combination_witness(
    data: Dataset, candidate: Point
) -> Optional[tuple[Rational, ...]]:
    """Exact convex weights over all observations that hit the candidate.

    This is the n-point equality question (no disposal anywhere): does some
    lambda on the full observation list combine to the candidate exactly?
    Returns the weights or None.  Distinct from pairwise segment generation:
    a point can need three or more observations at once.
    """
    if len(candidate.inputs) != data.m or len(candidate.outputs) != data.p:
        raise DimensionError(f"candidate {candidate} does not match dataset dimensions")
    if not candidate.is_integer:
        raise IntegralityError(f"expected an integer candidate, got {candidate}")
    for i, dmu in enumerate(data):
        if dmu.point == candidate:
            return tuple(Fraction(1) if k == i else Fraction(0) for k in range(data.n))
    zero = Fraction(0)
    rows = []
    for c, value in enumerate(candidate.coordinates()):
        rows.append(
            Constraint(tuple(dmu.point.coordinates()[c] for dmu in data), "=", value)
        )
    rows.append(Constraint((Fraction(1),) * data.n, "=", Fraction(1)))
    solution = solve_lp(LpProblem("min", (zero,) * data.n, tuple(rows)))
    if solution.status != "optimal":
        return None
    return solution.values
