"""Built-in worked examples with self-checking reports.

Each scenario bundles a tiny integer dataset, runs a fixed battery of
computations on it, and emits a report dictionary with an ``assertions``
list.  Every assertion compares an expected exact value against the value
the library actually produced, so a report doubles as a regression check:
``pass`` is a plain equality on the encoded forms.

The scenario names are short stable identifiers used by the command line;
what each one exercises is spelled out in its description.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .core import BoundingBox, Dataset, Point
from .models import (
    evaluate_point,
    overestimation_report,
    solve_additive,
    solve_ccr,
    solve_kkm,
    solve_lvm,
    solve_vrs_radial,
)
from .ppslab import (
    AxiomOrder,
    axiom_closure,
    convex_combination_witness,
    generation_gap,
    integer_segment_points,
    membership_integer_vrs,
    membership_real_vrs,
)
from .reporting import encode_point, encode_points, encode_rational, encode_result

__all__ = ["FigureSpec", "SCENARIO_ORDER", "list_scenarios", "run_scenario", "figure_spec"]

SCENARIO_ORDER = (
    "fig4",
    "fig7",
    "fig8-9",
    "sec3-abf",
    "sec4-overestimate",
    "sec5-additive",
)


@dataclass(frozen=True)
class FigureSpec:
    """Declarative description of a scenario figure.

    ``overlays`` picks zero or more of ``closure``, ``gap`` and ``frontier``;
    ``extras`` adds labelled point groups; ``segments`` dashed connectors.
    ``axes`` names the two coordinates to plot, e.g. ``("x1", "x2")`` for the
    input plane of a two-input dataset.
    """

    dataset: Dataset
    title: str
    overlays: tuple[str, ...] = ()
    box: BoundingBox | None = None
    fixpoint: bool = False
    axes: tuple[str, str] = ("x1", "y1")
    extras: tuple[tuple[str, tuple[Point, ...]], ...] = ()
    segments: tuple[tuple[Point, Point], ...] = ()


def _pair() -> Dataset:
    return Dataset.from_rows([("A", (5,), (9,)), ("B", (2,), (2,))])


def _triple() -> Dataset:
    return Dataset.from_rows([("A", (5,), (9,)), ("B", (2,), (2,)), ("F", (5,), (6,))])


def _two_input() -> Dataset:
    return Dataset.from_rows(
        [("A", (2, 8), (1,)), ("B", (9, 2), (1,)), ("C", (6, 6), (1,))]
    )


def _slack_chain() -> Dataset:
    return Dataset.from_rows([("A", (2,), (1,)), ("B", (3,), (2,)), ("C", (3,), (1,))])


def _enc(value: Any) -> Any:
    """Recursively encode a value for the report JSON."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return encode_rational(value)
    if isinstance(value, Point):
        return encode_point(value)
    if isinstance(value, (set, frozenset)):
        return [_enc(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [_enc(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _enc(v) for k, v in value.items()}
    raise TypeError(f"cannot encode {type(value).__name__} for a report")


def _assertion(name: str, expected: Any, actual: Any) -> dict[str, Any]:
    enc_expected = _enc(expected)
    enc_actual = _enc(actual)
    return {
        "name": name,
        "expected": enc_expected,
        "actual": enc_actual,
        "pass": enc_expected == enc_actual,
    }


def _dataset_rows(data: Dataset) -> list[dict[str, Any]]:
    return [
        {
            "dmu": dmu.name,
            "inputs": [_enc(Fraction(v)) if v.denominator != 1 else int(v) for v in dmu.inputs],
            "outputs": [_enc(Fraction(v)) if v.denominator != 1 else int(v) for v in dmu.outputs],
        }
        for dmu in data.dmus
    ]


def _box_entry(box: BoundingBox) -> dict[str, list[int]]:
    return {"input_max": list(box.input_max), "output_max": list(box.output_max)}


def _report(
    name: str,
    description: str,
    data: Dataset,
    results: dict[str, Any],
    assertions: list[dict[str, Any]],
    box: BoundingBox | None = None,
) -> dict[str, Any]:
    report: dict[str, Any] = {
        "scenario": name,
        "description": description,
        "dataset": _dataset_rows(data),
        "results": results,
        "assertions": assertions,
        "warnings": [f"zero input in {d} at position {i + 1}" for d, i in data.zero_input_cells()],
    }
    if box is not None:
        report["box"] = _box_entry(box)
    return report


def _provenance_log(state) -> list[dict[str, Any]]:
    entries = []
    for point, prov in state.log():
        entries.append(
            {
                "point": encode_point(point),
                "rule": prov.rule,
                "generation": prov.generation,
                "parents": encode_points(prov.parents),
                "weight": [_enc(w) for w in prov.weight] if prov.weight else None,
            }
        )
    return entries


# --- fig4: a segment between feasible integer points can skip the lattice ---

_FIG4_DESCRIPTION = (
    "Two single-input observations at (5;9) and (2;2): the connecting segment "
    "contains no integer point strictly between its endpoints, yet its real "
    "midpoint is a feasible convex combination."
)


def _run_fig4() -> dict[str, Any]:
    data = _pair()
    a = data["A"].point
    b = data["B"].point
    interior = sorted(integer_segment_points(a, b))
    midpoint = Point((Fraction(7, 2),), (Fraction(11, 2),))
    member, witness = membership_real_vrs(data, midpoint)
    results = {
        "segment_endpoints": [encode_point(a), encode_point(b)],
        "segment_interior_lattice_points": encode_points(interior),
        "midpoint": encode_point(midpoint),
        "midpoint_feasible": member,
        "midpoint_weights": [_enc(w) for w in witness] if witness else None,
    }
    assertions = [
        _assertion("segment-interior-has-no-lattice-points", [], interior),
        _assertion("real-midpoint-is-feasible", True, member),
        _assertion(
            "midpoint-weights",
            (Fraction(1, 2), Fraction(1, 2)),
            witness if witness is not None else (),
        ),
    ]
    return _report("fig4", _FIG4_DESCRIPTION, data, results, assertions)


def _figure_fig4() -> FigureSpec:
    data = _pair()
    midpoint = Point((Fraction(7, 2),), (Fraction(11, 2),))
    return FigureSpec(
        dataset=data,
        title="Lattice-free segment between integer observations",
        segments=((data["A"].point, data["B"].point),),
        extras=(("midpoint", (midpoint,)),),
    )


# --- fig7: one axiom sweep misses part of the integer technology ---

_FIG7_DESCRIPTION = (
    "Applying inclusion, convexity and disposability once each over the "
    "(5;9), (2;2) pair leaves six feasible integer points underivable; the "
    "generation gap lists them."
)

_GAP_POINTS = (
    Point((3,), (3,)),
    Point((3,), (4,)),
    Point((4,), (3,)),
    Point((4,), (4,)),
    Point((4,), (5,)),
    Point((4,), (6,)),
)


def _run_fig7() -> dict[str, Any]:
    data = _pair()
    box = BoundingBox.from_dataset(data)
    state = axiom_closure(data, box, AxiomOrder())
    gap = generation_gap(data, box)
    probe = Point((4,), (6,))
    probe_feasible = membership_integer_vrs(data, probe, box=box, method="identity")
    results = {
        "closure_size": len(state.points),
        "closure_points": encode_points(state.points),
        "gap_points": encode_points(gap),
        "probe": encode_point(probe),
        "probe_in_closure": probe in state.points,
        "probe_feasible": probe_feasible,
    }
    assertions = [
        _assertion("single-sweep-closure-size", 19, len(state.points)),
        _assertion("generation-gap", list(_GAP_POINTS), sorted(gap)),
        _assertion("probe-(4;6)-feasible", True, probe_feasible),
        _assertion("probe-(4;6)-underived", False, probe in state.points),
    ]
    return _report("fig7", _FIG7_DESCRIPTION, data, results, assertions, box=box)


def _figure_fig7() -> FigureSpec:
    data = _pair()
    return FigureSpec(
        dataset=data,
        title="Single axiom sweep and its generation gap",
        overlays=("closure", "gap"),
        box=BoundingBox.from_dataset(data),
    )


# --- fig8-9: iterating the axioms to a fixpoint recovers every point ---

_FIG89_DESCRIPTION = (
    "Iterating convexity and disposability to a fixpoint over the (5;9), "
    "(2;2) pair derives all 25 feasible integer points; the provenance log "
    "shows disposal points enabling later convexity steps."
)


def _run_fig89() -> dict[str, Any]:
    data = _pair()
    box = BoundingBox.from_dataset(data)
    order = AxiomOrder(iterate_to_fixpoint=True)
    state = axiom_closure(data, box, order)
    feasible = {
        point
        for point in box.grid()
        if membership_integer_vrs(data, point, box=box, method="identity")
    }
    disposal_58 = state.provenance[Point((5,), (8,))]
    conv_34 = state.provenance[Point((3,), (4,))]
    conv_46 = state.provenance[Point((4,), (6,))]
    results = {
        "closure_size": len(state.points),
        "feasible_size": len(feasible),
        "generations": state.generations,
        "log": _provenance_log(state),
    }
    assertions = [
        _assertion("fixpoint-equals-feasible-set", sorted(feasible), sorted(state.points)),
        _assertion("fixpoint-size", 25, len(state.points)),
        _assertion("(5;8)-rule", "disposal", disposal_58.rule),
        _assertion("(3;4)-rule", "convexity", conv_34.rule),
        _assertion("(4;6)-rule", "convexity", conv_46.rule),
        _assertion(
            "(5;8)-derived-before-(3;4)", True, disposal_58.generation < conv_34.generation
        ),
        _assertion(
            "(5;8)-derived-before-(4;6)", True, disposal_58.generation < conv_46.generation
        ),
    ]
    return _report("fig8-9", _FIG89_DESCRIPTION, data, results, assertions, box=box)


def _figure_fig89() -> FigureSpec:
    data = _pair()
    return FigureSpec(
        dataset=data,
        title="Axiom fixpoint over the observation box",
        overlays=("closure",),
        box=BoundingBox.from_dataset(data),
        fixpoint=True,
    )


# --- sec3-abf: a third observation unlocks an exact combination ---

_SEC3_DESCRIPTION = (
    "Over (5;9) and (2;2) alone the integer point (4;6) admits no exact "
    "convex combination; adding (5;6) yields weights (4/9, 1/3, 2/9).  On "
    "the same data the equality-constrained integer model scores the new "
    "observation 4/5, and on the virtual point (4;6) it diverges from the "
    "inequality-constrained one."
)


def _run_sec3() -> dict[str, Any]:
    pair = _pair()
    triple = _triple()
    probe = Point((4,), (6,))
    pair_witness = convex_combination_witness(pair, probe)
    triple_witness = convex_combination_witness(triple, probe)
    lvm_f = solve_lvm(triple, "F")
    kkm_virtual = evaluate_point(pair, probe, "kkm")
    lvm_virtual = evaluate_point(pair, probe, "lvm")
    results = {
        "probe": encode_point(probe),
        "pair_witness": [_enc(w) for w in pair_witness] if pair_witness else None,
        "triple_witness": [_enc(w) for w in triple_witness] if triple_witness else None,
        "lvm_F": encode_result(lvm_f),
        "kkm_virtual_probe": encode_result(kkm_virtual),
        "lvm_virtual_probe": encode_result(lvm_virtual),
    }
    assertions = [
        _assertion("no-witness-over-pair", True, pair_witness is None),
        _assertion(
            "witness-over-triple",
            (Fraction(4, 9), Fraction(1, 3), Fraction(2, 9)),
            triple_witness if triple_witness is not None else (),
        ),
        _assertion("lvm-theta-F", Fraction(4, 5), lvm_f.theta),
        _assertion("kkm-theta-virtual-(4;6)", Fraction(1), kkm_virtual.theta),
        _assertion("lvm-theta-virtual-(4;6)", Fraction(5, 4), lvm_virtual.theta),
        _assertion(
            "models-diverge-on-virtual-point",
            True,
            kkm_virtual.theta != lvm_virtual.theta,
        ),
    ]
    return _report("sec3-abf", _SEC3_DESCRIPTION, triple, results, assertions)


def _figure_sec3() -> FigureSpec:
    triple = _triple()
    probe = Point((4,), (6,))
    return FigureSpec(
        dataset=triple,
        title="Exact combination unlocked by a third observation",
        overlays=("frontier",),
        extras=(("probe", (probe,)),),
        segments=((triple["A"].point, triple["B"].point),),
    )


# --- sec4-overestimate: integer models can score a dominated unit 1 ---

_SEC4_DESCRIPTION = (
    "With inputs (2,8), (9,2), (6,6) all producing one output, the radial "
    "score of the third unit is 34/39 in both the constant and variable "
    "returns models, yet both integer variants score it 1 even though "
    "feasible integer points (5,6) and (6,5) dominate it."
)


def _run_sec4() -> dict[str, Any]:
    data = _two_input()
    ccr = solve_ccr(data, "C")
    vrs = solve_vrs_radial(data, "C")
    lvm = solve_lvm(data, "C")
    kkm = solve_kkm(data, "C")
    dominating = overestimation_report(data, "C")
    expected_dominating = (
        Point((5, 6), (1,)),
        Point((6, 5), (1,)),
    )
    results = {
        "ccr_C": encode_result(ccr),
        "vrs_C": encode_result(vrs),
        "lvm_C": encode_result(lvm),
        "kkm_C": encode_result(kkm),
        "dominating_points": encode_points(dominating),
    }
    assertions = [
        _assertion("ccr-theta-C", Fraction(34, 39), ccr.theta),
        _assertion("vrs-theta-C", Fraction(34, 39), vrs.theta),
        _assertion(
            "ccr-weights-C",
            (Fraction(7, 13), Fraction(6, 13), Fraction(0)),
            ccr.weights,
        ),
        _assertion("lvm-theta-C", Fraction(1), lvm.theta),
        _assertion("kkm-theta-C", Fraction(1), kkm.theta),
        _assertion("dominating-integer-points", list(expected_dominating), sorted(dominating)),
    ]
    return _report("sec4-overestimate", _SEC4_DESCRIPTION, data, results, assertions)


def _figure_sec4() -> FigureSpec:
    data = _two_input()
    return FigureSpec(
        dataset=data,
        title="Dominating integer points in the input plane",
        axes=("x1", "x2"),
        extras=(
            ("dominating", (Point((5, 6), (1,)), Point((6, 5), (1,)))),
        ),
    )


# --- sec5-additive: alternate optimal slacks with a common total ---

_SEC5_DESCRIPTION = (
    "On the chain (2;1), (3;2), (3;1) the additive model gives the last "
    "unit a maximal slack sum of 1 attained by two different slack "
    "profiles; the middle unit has none."
)


def _run_sec5() -> dict[str, Any]:
    data = _slack_chain()
    add_c = solve_additive(data, "C")
    add_b = solve_additive(data, "B")
    profiles = sorted(
        (alt.input_slacks, alt.output_slacks) for alt in add_c.alternates
    )
    expected_profiles = [
        ((Fraction(0),), (Fraction(1),)),
        ((Fraction(1),), (Fraction(0),)),
    ]
    totals = {sum(ins) + sum(outs) for ins, outs in profiles}
    results = {
        "additive_C": encode_result(add_c),
        "additive_B": encode_result(add_b),
        "slack_profiles_C": [
            {"input_slacks": [_enc(s) for s in ins], "output_slacks": [_enc(s) for s in outs]}
            for ins, outs in profiles
        ],
    }
    assertions = [
        _assertion("additive-total-slack-C", Fraction(1), add_c.total_slack),
        _assertion("slack-profiles-C", expected_profiles, profiles),
        _assertion("additive-total-slack-B", Fraction(0), add_b.total_slack),
        _assertion("profiles-share-total", [Fraction(1)], sorted(totals)),
    ]
    return _report("sec5-additive", _SEC5_DESCRIPTION, data, results, assertions)


def _figure_sec5() -> FigureSpec:
    data = _slack_chain()
    return FigureSpec(
        dataset=data,
        title="Two optimal slack directions for the dominated unit",
        overlays=("frontier",),
        segments=(
            (data["C"].point, data["A"].point),
            (data["C"].point, data["B"].point),
        ),
    )


@dataclass(frozen=True)
class _Scenario:
    description: str
    run: Callable[[], dict[str, Any]]
    figure: Callable[[], FigureSpec]


_SCENARIOS: dict[str, _Scenario] = {
    "fig4": _Scenario(_FIG4_DESCRIPTION, _run_fig4, _figure_fig4),
    "fig7": _Scenario(_FIG7_DESCRIPTION, _run_fig7, _figure_fig7),
    "fig8-9": _Scenario(_FIG89_DESCRIPTION, _run_fig89, _figure_fig89),
    "sec3-abf": _Scenario(_SEC3_DESCRIPTION, _run_sec3, _figure_sec3),
    "sec4-overestimate": _Scenario(_SEC4_DESCRIPTION, _run_sec4, _figure_sec4),
    "sec5-additive": _Scenario(_SEC5_DESCRIPTION, _run_sec5, _figure_sec5),
}


def list_scenarios() -> tuple[str, ...]:
    return SCENARIO_ORDER


def run_scenario(name: str) -> dict[str, Any]:
    """Run one built-in scenario and return its report dictionary."""
    try:
        scenario = _SCENARIOS[name]
    except KeyError:
        known = ", ".join(SCENARIO_ORDER)
        raise KeyError(f"unknown scenario {name!r}; choose one of: {known}") from None
    return scenario.run()


def figure_spec(name: str) -> FigureSpec:
    try:
        scenario = _SCENARIOS[name]
    except KeyError:
        known = ", ".join(SCENARIO_ORDER)
        raise KeyError(f"unknown scenario {name!r}; choose one of: {known}") from None
    return scenario.figure()
