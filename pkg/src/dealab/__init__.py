"""Exact rational-arithmetic laboratory for integer data envelopment analysis.

Everything is computed over ``fractions.Fraction``: efficiency scores,
intensity weights, slack profiles, closure points and membership witnesses
are exact values, never floating-point approximations.
"""

from .core import (
    BoundingBox,
    BoxError,
    Dataset,
    DatasetError,
    DimensionError,
    DMU,
    IntegralityError,
    Point,
    Rational,
    dominates,
    load_csv,
    parse_csv,
    rational,
)
from .models import (
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
from .ppslab import (
    AxiomOrder,
    ClosureState,
    Provenance,
    axiom_closure,
    convex_combination_witness,
    generation_gap,
    integer_disposal_points,
    integer_segment_points,
    membership_integer_vrs,
    membership_real_vrs,
)
from .scenarios import list_scenarios, run_scenario
from .solver import (
    Constraint,
    LpProblem,
    MilpProblem,
    Solution,
    SolverError,
    UnboundedIntegerError,
    enumerate_optimal_vertices,
    solve_lp,
    solve_milp,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomOrder",
    "BoundingBox",
    "BoxError",
    "ClosureState",
    "Constraint",
    "Dataset",
    "DatasetError",
    "DimensionError",
    "DMU",
    "EfficiencyResult",
    "IntegralityError",
    "LpProblem",
    "MilpProblem",
    "ModelSpec",
    "Point",
    "Provenance",
    "Rational",
    "Solution",
    "SolverError",
    "UnboundedIntegerError",
    "axiom_closure",
    "convex_combination_witness",
    "dominates",
    "enumerate_optimal_vertices",
    "evaluate_point",
    "generation_gap",
    "integer_disposal_points",
    "integer_segment_points",
    "list_scenarios",
    "load_csv",
    "membership_integer_vrs",
    "membership_real_vrs",
    "overestimation_report",
    "parse_csv",
    "rational",
    "run_scenario",
    "solve_additive",
    "solve_ccr",
    "solve_kkm",
    "solve_lvm",
    "solve_milp",
    "solve_model",
    "solve_lp",
    "solve_vrs_radial",
    "__version__",
]
