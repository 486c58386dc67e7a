import random
from fractions import Fraction

import pytest

import oracles
from dealab.core import Dataset, IntegralityError, Point
from dealab.models import (
    EfficiencyResult,
    ModelSpec,
    evaluate_point,
    overestimation_report,
    solve_additive,
    solve_ccr,
    solve_kkm,
    solve_lvm,
    solve_model,
    solve_vrs_radial,
)
from dealab.ppslab import convex_combination_witness, membership_real_vrs

F = Fraction


@pytest.fixture
def two_input():
    return Dataset.from_rows(
        [("A", (2, 8), (1,)), ("B", (9, 2), (1,)), ("C", (6, 6), (1,))]
    )


@pytest.fixture
def pair():
    return Dataset.from_rows([("A", (5,), (9,)), ("B", (2,), (2,))])


@pytest.fixture
def triple():
    return Dataset.from_rows(
        [("A", (5,), (9,)), ("B", (2,), (2,)), ("F", (5,), (6,))]
    )


@pytest.fixture
def chain():
    return Dataset.from_rows([("A", (2,), (1,)), ("B", (3,), (2,)), ("C", (3,), (1,))])


class TestModelSpec:
    def test_named_defaults(self):
        assert ModelSpec.named("ccr").rts == "crs"
        assert ModelSpec.named("lvm").rts == "vrs"

    def test_integer_targets_flag(self):
        assert ModelSpec.named("kkm").integer_targets
        assert not ModelSpec.named("vrs").integer_targets

    def test_ccr_is_constant_returns_only(self):
        with pytest.raises(ValueError):
            ModelSpec("ccr", "vrs")

    def test_additive_is_variable_returns_only(self):
        with pytest.raises(ValueError):
            ModelSpec("additive", "crs")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ModelSpec("bcc")

    def test_output_orientation_not_available(self):
        with pytest.raises(ValueError):
            ModelSpec("vrs", "vrs", orientation="output")


class TestRadialReal:
    def test_ccr_score_of_the_dominated_unit(self, two_input):
        result = solve_ccr(two_input, "C")
        assert result.theta == F(34, 39)
        assert result.weights == (F(7, 13), F(6, 13), F(0))
        assert result.targets == Point((F(68, 13), F(68, 13)), (1,))
        assert result.input_slacks == (F(0), F(0))
        assert result.output_slacks == (F(0),)

    def test_ccr_matches_basis_enumeration_oracle(self, two_input):
        want = oracles.ccr_theta_oracle(
            [dmu.inputs for dmu in two_input],
            [dmu.outputs for dmu in two_input],
            two_input.index("C"),
        )
        assert solve_ccr(two_input, "C").theta == want

    def test_ccr_frontier_units_score_one(self, two_input):
        assert solve_ccr(two_input, "A").theta == F(1)
        assert solve_ccr(two_input, "B").theta == F(1)

    def test_vrs_equals_ccr_on_this_instance(self, two_input):
        assert solve_vrs_radial(two_input, "C").theta == F(34, 39)

    def test_vrs_score_of_interior_unit(self, triple):
        result = solve_vrs_radial(triple, "F")
        assert result.theta == F(26, 35)
        assert result.targets == Point((F(26, 7),), (F(6),))

    def test_score_property(self, two_input):
        result = solve_ccr(two_input, "C")
        assert result.score == result.theta


class TestRadialInteger:
    def test_equality_model_scores_dominated_unit_one(self, two_input):
        result = solve_lvm(two_input, "C")
        assert result.theta == F(1)
        assert result.targets == Point((5, 6), (1,))
        combo_in = tuple(
            sum(w * dmu.inputs[j] for w, dmu in zip(result.weights, two_input))
            for j in range(two_input.m)
        )
        combo_out = tuple(
            sum(w * dmu.outputs[r] for w, dmu in zip(result.weights, two_input))
            for r in range(two_input.p)
        )
        assert combo_in == result.targets.inputs
        assert combo_out == result.targets.outputs

    def test_dominated_model_scores_dominated_unit_one(self, two_input):
        result = solve_kkm(two_input, "C")
        assert result.theta == F(1)
        assert result.targets == Point((5, 6), (1,))

    def test_equality_model_on_interior_unit(self, triple):
        result = solve_lvm(triple, "F")
        assert result.theta == F(4, 5)
        assert result.targets == Point((4,), (6,))

    def test_integer_rounding_lifts_the_interior_score(self, triple):
        # The real target 26/7 is not a lattice point, so both integer
        # models have to settle for input 4 and the score rises.
        assert solve_vrs_radial(triple, "F").theta == F(26, 35)
        assert solve_kkm(triple, "F").theta == F(4, 5)
        assert solve_lvm(triple, "F").theta == F(4, 5)

    def test_observed_units_never_exceed_one(self, two_input):
        for name in two_input.names:
            assert solve_lvm(two_input, name).theta <= 1
            assert solve_kkm(two_input, name).theta <= 1

    def test_non_integer_data_is_rejected(self):
        data = Dataset.from_rows([("A", ("5/2",), (1,)), ("B", (2,), (2,))])
        with pytest.raises(IntegralityError, match="DMU A input 1"):
            solve_lvm(data, "B")
        with pytest.raises(IntegralityError):
            solve_kkm(data, "B")


class TestEvaluatePoint:
    def test_observed_point_scores_like_its_dmu(self, pair):
        virtual = evaluate_point(pair, pair["A"].point, "lvm", label="A-again")
        assert virtual.theta == solve_lvm(pair, "A").theta == F(1)

    def test_models_diverge_on_a_virtual_point(self, pair):
        probe = Point((4,), (6,))
        kkm = evaluate_point(pair, probe, "kkm")
        lvm = evaluate_point(pair, probe, "lvm")
        assert kkm.theta == F(1)
        assert lvm.theta == F(5, 4)
        assert kkm.theta < lvm.theta

    def test_real_radial_score_of_a_virtual_point(self, pair):
        result = evaluate_point(pair, Point((5,), (2,)), "vrs")
        assert result.theta == F(2, 5)

    def test_dimension_mismatch(self, pair):
        with pytest.raises(ValueError):
            evaluate_point(pair, Point((1, 1), (1,)), "vrs")


class TestOverestimation:
    def test_dominating_lattice_points_of_the_scored_unit(self, two_input):
        points = overestimation_report(two_input, "C")
        assert Point((5, 6), (1,)) in points
        assert Point((6, 5), (1,)) in points
        for point in points:
            assert membership_real_vrs(two_input, point)[0]

    def test_frontier_unit_has_no_dominators(self, two_input):
        assert overestimation_report(two_input, "A") == ()


class TestAdditive:
    def test_dominated_unit_slack_total(self, chain):
        result = solve_additive(chain, "C")
        assert result.total_slack == F(1)
        assert result.theta is None
        assert result.score == F(1)

    def test_both_slack_splits_are_reported(self, chain):
        result = solve_additive(chain, "C")
        profiles = sorted(
            (alt.input_slacks, alt.output_slacks) for alt in result.alternates
        )
        assert profiles == [
            ((F(0),), (F(1),)),
            ((F(1),), (F(0),)),
        ]

    def test_efficient_units_have_zero_slack(self, chain):
        assert solve_additive(chain, "A").total_slack == F(0)
        assert solve_additive(chain, "B").total_slack == F(0)

    def test_alternate_results_are_well_formed(self, chain):
        for alt in solve_additive(chain, "C").alternates:
            assert isinstance(alt, EfficiencyResult)
            assert sum(alt.input_slacks) + sum(alt.output_slacks) == F(1)


class TestSolveModelDispatch:
    def test_dispatch_matches_direct_calls(self, two_input):
        for kind in ("ccr", "vrs", "lvm", "kkm", "additive"):
            via_dispatch = solve_model(ModelSpec.named(kind), two_input, "C")
            assert via_dispatch.model.kind == kind

    def test_zero_input_unit_still_solves(self):
        data = Dataset.from_rows([("A", (0, 3), (2,)), ("B", (4, 1), (2,))])
        result = solve_vrs_radial(data, "B")
        assert result.theta <= F(1)


def random_integer_dataset(rng: random.Random) -> Dataset:
    n = rng.randint(1, 6)
    m = rng.randint(1, 2)
    p = rng.randint(1, 2)
    rows = []
    for i in range(n):
        ins = tuple(rng.randint(1, 9) for _ in range(m))
        outs = tuple(rng.randint(1, 9) for _ in range(p))
        rows.append((f"D{i + 1}", ins, outs))
    return Dataset.from_rows(rows)


class TestModelOrdering:
    def test_integer_scores_bracket_the_real_score(self):
        rng = random.Random(987654)
        for _ in range(40):
            data = random_integer_dataset(rng)
            name = rng.choice(data.names)
            vrs = solve_vrs_radial(data, name)
            kkm = solve_kkm(data, name)
            lvm = solve_lvm(data, name)
            assert vrs.theta <= kkm.theta <= lvm.theta <= F(1), (data, name)
            assert convex_combination_witness(data, lvm.targets) is not None
            assert membership_real_vrs(data, kkm.targets)[0]
