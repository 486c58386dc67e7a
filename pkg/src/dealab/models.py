"""Input-oriented DEA models over exact rationals.

Five models are provided.  Two are classical real-technology models: the
radial constant-returns model (``ccr``) and the radial variable-returns model
(``vrs``).  Two require the benchmark targets themselves to be integer: the
equality-constrained integer model (``lvm``), whose targets must be exact
convex combinations of the observations, and the dominated-targets integer
model (``kkm``), whose integer targets only need to dominate some real convex
combination.  The fifth is the additive (slack-sum) model used to study
alternate optima.

The two integer models disagree on purpose for some data; see
``overestimation_report`` and the laboratory routines in :mod:`dealab.ppslab`
for the machinery that probes those disagreements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Literal, Optional

from .core import (
    BoundingBox,
    Dataset,
    DimensionError,
    IntegralityError,
    Point,
    Rational,
    dominates,
)
from .solver import (
    Constraint,
    LpProblem,
    MilpProblem,
    Solution,
    SolverError,
    solve_lp,
    solve_milp,
    enumerate_optimal_vertices,
)

__all__ = [
    "ModelName",
    "ModelSpec",
    "EfficiencyResult",
    "solve_ccr",
    "solve_vrs_radial",
    "solve_lvm",
    "solve_kkm",
    "solve_additive",
    "solve_model",
    "evaluate_point",
    "overestimation_report",
]

ModelName = Literal["ccr", "vrs", "lvm", "kkm", "additive"]
Rts = Literal["crs", "vrs"]

_MODEL_NAMES = ("ccr", "vrs", "lvm", "kkm", "additive")


@dataclass(frozen=True)
class ModelSpec:
    """Which model to run and under which returns-to-scale assumption."""

    kind: ModelName
    rts: Rts = "vrs"
    orientation: Literal["input"] = "input"

    def __post_init__(self) -> None:
        if self.kind not in _MODEL_NAMES:
            raise ValueError(f"unknown model {self.kind!r}")
        if self.kind == "ccr" and self.rts != "crs":
            raise ValueError("the ccr model is constant-returns by definition")
        if self.kind in ("vrs", "additive") and self.rts != "vrs":
            raise ValueError(f"the {self.kind} model is variable-returns by definition")
        if self.orientation != "input":
            raise ValueError("only input orientation is implemented")

    @property
    def integer_targets(self) -> bool:
        return self.kind in ("lvm", "kkm")

    @classmethod
    def named(cls, kind: ModelName) -> "ModelSpec":
        rts: Rts = "crs" if kind == "ccr" else "vrs"
        return cls(kind, rts)


@dataclass(frozen=True)
class EfficiencyResult:
    """Everything a solve produces, exact and ready for reporting.

    ``theta`` is set for the radial models, ``total_slack`` for the additive
    model.  ``weights`` follows the dataset's DMU order.  ``slacks`` are the
    residuals of the returned optimal vertex; no second-stage slack
    maximization is performed.  ``dominated_by`` stays empty unless filled by
    :func:`overestimation_report`; ``alternates`` is populated only by the
    additive model.
    """

    dmu: str
    model: ModelSpec
    theta: Optional[Rational]
    total_slack: Optional[Rational]
    weights: tuple[Rational, ...]
    targets: Point
    input_slacks: tuple[Rational, ...]
    output_slacks: tuple[Rational, ...]
    dominated_by: tuple[Point, ...] = ()
    alternates: tuple["EfficiencyResult", ...] = ()

    @property
    def score(self) -> Rational:
        return self.theta if self.theta is not None else self.total_slack


def _combo(data: Dataset, weights: tuple[Rational, ...]) -> tuple[tuple[Rational, ...], tuple[Rational, ...]]:
    ins = tuple(
        sum((w * dmu.inputs[j] for w, dmu in zip(weights, data)), start=Fraction(0))
        for j in range(data.m)
    )
    outs = tuple(
        sum((w * dmu.outputs[r] for w, dmu in zip(weights, data)), start=Fraction(0))
        for r in range(data.p)
    )
    return ins, outs


def _radial_real(data: Dataset, target: Point, label: str, spec: ModelSpec) -> EfficiencyResult:
    """Radial contraction against the real technology (``ccr`` / ``vrs``)."""
    n, m, p = data.n, data.m, data.p
    zero = Fraction(0)
    rows = []
    for j in range(m):
        coeffs = [-target.inputs[j]] + [dmu.inputs[j] for dmu in data]
        rows.append(Constraint(tuple(coeffs), "<=", zero))
    for r in range(p):
        coeffs = [zero] + [dmu.outputs[r] for dmu in data]
        rows.append(Constraint(tuple(coeffs), ">=", target.outputs[r]))
    if spec.rts == "vrs":
        rows.append(Constraint(tuple([zero] + [Fraction(1)] * n), "=", Fraction(1)))
    objective = tuple([Fraction(1)] + [zero] * n)
    solution = solve_lp(LpProblem("min", objective, tuple(rows)))
    if solution.status != "optimal":
        raise SolverError(f"radial model for {label} came back {solution.status}")
    theta = solution.objective
    weights = solution.values[1:]
    combo_in, combo_out = _combo(data, weights)
    input_slacks = tuple(theta * x - cx for x, cx in zip(target.inputs, combo_in))
    output_slacks = tuple(cy - y for y, cy in zip(target.outputs, combo_out))
    return EfficiencyResult(
        dmu=label,
        model=spec,
        theta=theta,
        total_slack=None,
        weights=weights,
        targets=Point(combo_in, combo_out),
        input_slacks=input_slacks,
        output_slacks=output_slacks,
    )


def _integer_target_bounds(
    data: Dataset, target: Point, observed: bool
) -> tuple[list[Rational], list[Rational], list[Rational], list[Rational]]:
    """Finite branch-and-bound bounds for the integer target variables.

    Input targets never need to exceed the evaluated DMU's own inputs, since
    benchmarking a DMU against itself always permits a score of 1; for a
    point outside the dataset the componentwise observed maximum works
    instead, because convex weights cannot exceed it.  Output targets live
    between the evaluated outputs and the componentwise observed maximum.
    """
    max_in = data.max_inputs()
    max_out = data.max_outputs()
    t_lower = [Fraction(0)] * data.m
    if observed:
        t_upper = [Fraction(x) for x in target.inputs]
    else:
        t_upper = [Fraction(max(mx, x)) for mx, x in zip(max_in, target.inputs)]
    u_lower = [Fraction(y) for y in target.outputs]
    u_upper = [Fraction(max(my, y)) for my, y in zip(max_out, target.outputs)]
    return t_lower, t_upper, u_lower, u_upper


def _radial_integer(
    data: Dataset,
    target: Point,
    label: str,
    spec: ModelSpec,
    observed: bool,
) -> EfficiencyResult:
    """Radial contraction toward an integer target (``lvm`` / ``kkm``).

    Variable layout: theta, n weights, m integer input targets, p integer
    output targets.  In the equality flavour the targets must equal the
    convex combination; in the dominated flavour they only have to dominate
    it.
    """
    data.require_integer()
    if not target.is_integer:
        raise IntegralityError(f"integer models need an integer point, got {target}")
    n, m, p = data.n, data.m, data.p
    zero = Fraction(0)
    one = Fraction(1)
    n_vars = 1 + n + m + p
    # Variable layout: index 0 is theta, 1..n the weights, then the integer
    # input targets, then the integer output targets.
    first_t = 1 + n
    first_u = 1 + n + m

    def row(entries: dict[int, Rational], relation, rhs) -> Constraint:
        coeffs = [zero] * n_vars
        for idx, value in entries.items():
            coeffs[idx] = value
        return Constraint(tuple(coeffs), relation, rhs)

    equality = spec.kind == "lvm"
    rows = []
    for j in range(m):
        entries = {1 + i: dmu.inputs[j] for i, dmu in enumerate(data)}
        entries[first_t + j] = -one
        rows.append(row(entries, "=" if equality else "<=", zero))
        rows.append(row({first_t + j: one, 0: -target.inputs[j]}, "<=", zero))
    for r in range(p):
        entries = {1 + i: dmu.outputs[r] for i, dmu in enumerate(data)}
        entries[first_u + r] = -one
        rows.append(row(entries, "=" if equality else ">=", zero))
    if spec.rts == "vrs":
        rows.append(row({1 + i: one for i in range(n)}, "=", one))
    t_lower, t_upper, u_lower, u_upper = _integer_target_bounds(data, target, observed)
    lower = tuple([zero] * (1 + n) + t_lower + u_lower)
    upper = tuple([None] * (1 + n) + t_upper + u_upper)
    objective = tuple([one] + [zero] * (n + m + p))
    problem = MilpProblem(
        LpProblem("min", objective, tuple(rows), lower=lower, upper=upper),
        frozenset(range(1 + n, n_vars)),
    )
    solution = solve_milp(problem)
    if solution.status != "optimal":
        raise SolverError(f"integer radial model for {label} came back {solution.status}")
    theta = solution.objective
    weights = solution.values[1 : 1 + n]
    t_values = solution.values[1 + n : 1 + n + m]
    u_values = solution.values[1 + n + m :]
    input_slacks = tuple(theta * x - t for x, t in zip(target.inputs, t_values))
    output_slacks = tuple(u - y for y, u in zip(target.outputs, u_values))
    return EfficiencyResult(
        dmu=label,
        model=spec,
        theta=theta,
        total_slack=None,
        weights=weights,
        targets=Point(t_values, u_values),
        input_slacks=input_slacks,
        output_slacks=output_slacks,
    )


def solve_ccr(data: Dataset, dmu: str) -> EfficiencyResult:
    """Radial input efficiency under constant returns to scale."""
    target = data[dmu].point
    return _radial_real(data, target, dmu, ModelSpec("ccr", "crs"))


def solve_vrs_radial(data: Dataset, dmu: str) -> EfficiencyResult:
    """Radial input efficiency under variable returns to scale."""
    target = data[dmu].point
    return _radial_real(data, target, dmu, ModelSpec("vrs", "vrs"))


def solve_lvm(data: Dataset, dmu: str, rts: Rts = "vrs") -> EfficiencyResult:
    """Integer radial model with equality-constrained targets.

    The integer targets must be exact convex combinations of the observed
    data, so a feasible target is always a lattice point of the real
    technology that the combination itself reaches.
    """
    target = data[dmu].point
    return _radial_integer(data, target, dmu, ModelSpec("lvm", rts), observed=True)


def solve_kkm(data: Dataset, dmu: str, rts: Rts = "vrs") -> EfficiencyResult:
    """Integer radial model with dominated targets.

    The integer targets only need to dominate some real convex combination,
    i.e. they are lattice points of the real technology itself.
    """
    target = data[dmu].point
    return _radial_integer(data, target, dmu, ModelSpec("kkm", rts), observed=True)


def solve_additive(data: Dataset, dmu: str, cap: int = 16) -> EfficiencyResult:
    """Additive (slack-sum) model under variable returns to scale.

    Returns the solver's optimum; every distinct optimal vertex (up to
    ``cap``) is attached as an alternate, because the slack split between
    inputs and outputs is genuinely non-unique on some data.
    """
    spec = ModelSpec("additive", "vrs")
    target = data[dmu].point
    n, m, p = data.n, data.m, data.p
    zero = Fraction(0)
    one = Fraction(1)
    n_vars = n + m + p

    def row(entries: dict[int, Rational], relation, rhs) -> Constraint:
        coeffs = [zero] * n_vars
        for idx, value in entries.items():
            coeffs[idx] = value
        return Constraint(tuple(coeffs), relation, rhs)

    rows = []
    for j in range(m):
        entries = {i: dmu_.inputs[j] for i, dmu_ in enumerate(data)}
        entries[n + j] = one
        rows.append(row(entries, "=", target.inputs[j]))
    for r in range(p):
        entries = {i: dmu_.outputs[r] for i, dmu_ in enumerate(data)}
        entries[n + m + r] = -one
        rows.append(row(entries, "=", target.outputs[r]))
    rows.append(row({i: one for i in range(n)}, "=", one))
    objective = tuple([zero] * n + [one] * (m + p))
    problem = LpProblem("max", objective, tuple(rows))
    solution = solve_lp(problem)
    if solution.status != "optimal":
        raise SolverError(f"additive model for {dmu} came back {solution.status}")

    def as_result(sol: Solution, alternates: tuple = ()) -> EfficiencyResult:
        weights = sol.values[:n]
        s_in = sol.values[n : n + m]
        s_out = sol.values[n + m :]
        return EfficiencyResult(
            dmu=dmu,
            model=spec,
            theta=None,
            total_slack=sol.objective,
            weights=weights,
            targets=Point(
                tuple(x - s for x, s in zip(target.inputs, s_in)),
                tuple(y + s for y, s in zip(target.outputs, s_out)),
            ),
            input_slacks=s_in,
            output_slacks=s_out,
            alternates=alternates,
        )

    vertices = enumerate_optimal_vertices(problem, cap=cap)
    alternates = tuple(as_result(vertex) for vertex in vertices)
    return as_result(solution, alternates)


def solve_model(spec: ModelSpec, data: Dataset, dmu: str) -> EfficiencyResult:
    """Dispatch on a model spec; the entry point used by the CLI."""
    if spec.kind == "ccr":
        return solve_ccr(data, dmu)
    if spec.kind == "vrs":
        return solve_vrs_radial(data, dmu)
    if spec.kind == "lvm":
        return solve_lvm(data, dmu, spec.rts)
    if spec.kind == "kkm":
        return solve_kkm(data, dmu, spec.rts)
    return solve_additive(data, dmu)


def evaluate_point(data: Dataset, point: Point, kind: ModelName, label: str = "point") -> EfficiencyResult:
    """Evaluate an arbitrary activity against the technology of ``data``.

    Unlike the named-DMU entry points the activity is not added to the
    reference set, which is exactly what laboratory experiments about the
    integer models need: scores above 1 become possible and the two integer
    models can disagree.  The integer flavours are variable-returns only.
    """
    if len(point.inputs) != data.m or len(point.outputs) != data.p:
        raise DimensionError(f"point {point} does not match dataset dimensions")
    if kind == "ccr":
        return _radial_real(data, point, label, ModelSpec("ccr", "crs"))
    if kind == "vrs":
        return _radial_real(data, point, label, ModelSpec("vrs", "vrs"))
    if kind in ("lvm", "kkm"):
        return _radial_integer(
            data, point, label, ModelSpec(kind, "vrs"), observed=point in (d.point for d in data)
        )
    raise ValueError(f"cannot evaluate a bare point under model {kind!r}")


def overestimation_report(
    data: Dataset, dmu: str, box: Optional[BoundingBox] = None
) -> tuple[Point, ...]:
    """Integer points of the real technology that dominate the DMU.

    A radial integer score of 1 together with a non-empty report is the
    over-estimation phenomenon: the model calls the DMU efficient even though
    an integer-feasible activity strictly improves on it.  The scan is
    restricted to ``box`` (default: componentwise observed maxima), so a box
    that truncates away the dominating region yields an empty report.
    """
    from .ppslab import membership_real_vrs

    if box is None:
        box = BoundingBox.from_dataset(data)
    if box.m != data.m or box.p != data.p:
        raise DimensionError("box dimensions do not match the dataset")
    own = data[dmu].point
    input_caps = [min(_floor(x), cap) for x, cap in zip(own.inputs, box.input_max)]
    found = []
    output_ranges = [
        range(_ceil(y), cap + 1) for y, cap in zip(own.outputs, box.output_max)
    ]
    for ins in product(*(range(cap + 1) for cap in input_caps)):
        for outs in product(*output_ranges):
            candidate = Point(ins, outs)
            if candidate == own:
                continue
            if not dominates(candidate, own):
                continue
            if membership_real_vrs(data, candidate)[0]:
                found.append(candidate)
    return tuple(sorted(found))


def _floor(value: Rational) -> int:
    return value.numerator // value.denominator


def _ceil(value: Rational) -> int:
    return -((-value.numerator) // value.denominator)
