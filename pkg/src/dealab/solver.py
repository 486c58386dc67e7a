"""Exact linear and mixed-integer programming over rationals.

A two-phase tableau simplex with Bland's rule does all continuous solving, so
every pivot is exact and termination is guaranteed without cycling.  Integer
variables are handled by depth-first branch and bound with exact pruning; ties
between equally optimal integer points are broken toward the lexicographically
smallest integer-variable vector so results are reproducible.

Public routines accept and return ``fractions.Fraction``.  Internally the
tableau runs on ``gmpy2.mpq`` when available (an order of magnitude faster)
and silently falls back to ``Fraction``; both types share the same exact
semantics, so the backend choice can never change a result.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Literal, Optional, Sequence

from .core import Rational

try:  # optional fast rational backend
    from gmpy2 import mpq as _q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _q = Fraction

__all__ = [
    "Relation",
    "Sense",
    "Status",
    "Constraint",
    "LpProblem",
    "MilpProblem",
    "Solution",
    "SolverError",
    "UnboundedIntegerError",
    "solve_lp",
    "solve_milp",
    "enumerate_optimal_vertices",
]

Relation = Literal["<=", "=", ">="]
Sense = Literal["min", "max"]
Status = Literal["optimal", "infeasible", "unbounded"]

_RELATIONS = ("<=", "=", ">=")

# Hard cap on simplex pivots.  Bland's rule terminates on its own; this guard
# only turns a hypothetical bug into a loud failure instead of a hang.
_MAX_PIVOTS = 100_000


class SolverError(RuntimeError):
    """An operation was asked of a problem in the wrong state."""


class UnboundedIntegerError(ValueError):
    """Branch and bound needs finite bounds on every integer variable."""


@dataclass(frozen=True)
class Constraint:
    """A single row ``coeffs . x  <relation>  rhs``."""

    coeffs: tuple[Rational, ...]
    relation: Relation
    rhs: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class LpProblem:
    """A linear program over rational data.

    Variables carry a finite lower bound (default 0) and an optional upper
    bound.  ``None`` in ``upper`` means the variable is unbounded above.
    """

    sense: Sense
    objective: tuple[Rational, ...]
    constraints: tuple[Constraint, ...]
    lower: tuple[Rational, ...] = ()
    upper: tuple[Optional[Rational], ...] = ()

    def __post_init__(self) -> None:
        if self.sense not in ("min", "max"):
            raise ValueError(f"unknown sense {self.sense!r}")
        objective = tuple(Fraction(c) for c in self.objective)
        object.__setattr__(self, "objective", objective)
        n = len(objective)
        if n == 0:
            raise ValueError("a problem needs at least one variable")
        constraints = tuple(self.constraints)
        for row in constraints:
            if len(row.coeffs) != n:
                raise ValueError(
                    f"constraint has {len(row.coeffs)} coefficients, expected {n}"
                )
        object.__setattr__(self, "constraints", constraints)
        lower = tuple(Fraction(v) for v in self.lower) if self.lower else (Fraction(0),) * n
        upper = (
            tuple(None if v is None else Fraction(v) for v in self.upper)
            if self.upper
            else (None,) * n
        )
        if len(lower) != n or len(upper) != n:
            raise ValueError("bounds must match the number of variables")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def n_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class MilpProblem:
    """A linear program plus a set of integer-constrained variable indices."""

    lp: LpProblem
    integer_vars: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "integer_vars", frozenset(self.integer_vars))
        for idx in self.integer_vars:
            if not 0 <= idx < self.lp.n_vars:
                raise ValueError(f"integer variable index {idx} out of range")


@dataclass(frozen=True)
class Solution:
    """Outcome of a solve: a status plus exact values when optimal."""

    status: Status
    objective: Optional[Rational] = None
    values: tuple[Rational, ...] = ()

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def _frac(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _floor(value) -> int:
    return int(value.numerator) // int(value.denominator)


def _ceil(value) -> int:
    return -((-int(value.numerator)) // int(value.denominator))


class _Tableau:
    """Dense simplex tableau in equality form with Bland's rule pivoting."""

    def __init__(self, rows, basis, n_cols):
        self.rows = rows  # list of lists, last entry is the rhs
        self.basis = basis  # basic variable index per row
        self.n_cols = n_cols  # number of structural columns (rhs excluded)

    def pivot(self, row: int, col: int) -> None:
        rows = self.rows
        pivot_row = rows[row]
        inv = 1 / pivot_row[col]
        if inv != 1:
            rows[row] = pivot_row = [cell * inv for cell in pivot_row]
        for r, other in enumerate(rows):
            if r == row:
                continue
            factor = other[col]
            if factor:
                rows[r] = [a - factor * b for a, b in zip(other, pivot_row)]
        self.basis[row] = col

    def minimize(self, costs) -> Literal["optimal", "unbounded"]:
        """Run phase iterations for ``min costs . x`` from the current basis."""
        rows = self.rows
        basis = self.basis
        n_cols = self.n_cols
        # Reduced-cost row: c - c_B . B^{-1} A, rebuilt from scratch.
        reduced = list(costs) + [_q(0)]
        for r, var in enumerate(basis):
            cost = costs[var]
            if cost:
                row = rows[r]
                reduced = [a - cost * b for a, b in zip(reduced, row)]
        for _ in range(_MAX_PIVOTS):
            entering = -1
            for j in range(n_cols):
                if reduced[j] < 0:
                    entering = j  # Bland: smallest eligible index
                    break
            if entering < 0:
                return "optimal"
            leaving = -1
            best_ratio = None
            for r, row in enumerate(rows):
                coeff = row[entering]
                if coeff > 0:
                    ratio = row[-1] / coeff
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[leaving])
                    ):
                        best_ratio = ratio
                        leaving = r
            if leaving < 0:
                return "unbounded"
            self.pivot(leaving, entering)
            factor = reduced[entering]
            if factor:
                pivot_row = rows[leaving]
                reduced = [a - factor * b for a, b in zip(reduced, pivot_row)]
        raise SolverError("pivot limit exceeded; this should be unreachable")

    def solution(self, n_structural: int):
        values = [_q(0)] * n_structural
        for r, var in enumerate(self.basis):
            if var < n_structural:
                values[var] = self.rows[r][-1]
        return values


def _standardize(problem: LpProblem, extra_rows: Sequence[Constraint] = ()):
    """Shift bounds away and rewrite the problem as ``A x = b, x >= 0``.

    Returns ``(tableau_rows, relations, shifted_costs, shifts, status)`` where
    ``status`` short-circuits to ``"infeasible"`` when a variable's bounds
    cross.  Upper bounds become explicit rows so that vertex enumeration sees
    them too.
    """
    n = problem.n_vars
    lower = [_q(v.numerator, v.denominator) for v in problem.lower]
    costs = [_q(c.numerator, c.denominator) for c in problem.objective]
    if problem.sense == "max":
        costs = [-c for c in costs]
    rows = []
    relations = []
    for source in (problem.constraints, tuple(extra_rows)):
        for con in source:
            coeffs = [_q(c.numerator, c.denominator) for c in con.coeffs]
            rhs = _q(con.rhs.numerator, con.rhs.denominator)
            rhs -= sum(c * l for c, l in zip(coeffs, lower) if c)
            rows.append((coeffs, rhs))
            relations.append(con.relation)
    for j, ub in enumerate(problem.upper):
        if ub is None:
            continue
        gap = _q(ub.numerator, ub.denominator) - lower[j]
        if gap < 0:
            return None, None, None, None, "infeasible"
        coeffs = [_q(0)] * n
        coeffs[j] = _q(1)
        rows.append((coeffs, gap))
        relations.append("<=")
    return rows, relations, costs, lower, None


def _build_phase1(rows, relations, n):
    """Equality form with slack, surplus and artificial columns.

    Returns ``(tableau, slack_count, artificial_cols)``; the tableau starts
    from the canonical slack/artificial basis.
    """
    m = len(rows)
    # Normalize signs so every rhs is non-negative.
    normalized = []
    for (coeffs, rhs), rel in zip(rows, relations):
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        normalized.append((coeffs, rhs, rel))
    slack_specs = []  # (row, sign)
    for r, (_, _, rel) in enumerate(normalized):
        if rel == "<=":
            slack_specs.append((r, 1))
        elif rel == ">=":
            slack_specs.append((r, -1))
    n_slack = len(slack_specs)
    artificial_rows = [
        r for r, (_, _, rel) in enumerate(normalized) if rel != "<="
    ]
    n_art = len(artificial_rows)
    n_cols = n + n_slack + n_art
    zero = _q(0)
    one = _q(1)
    tab_rows = []
    basis = [-1] * m
    slack_col = {}
    for pos, (r, sign) in enumerate(slack_specs):
        slack_col[r] = (n + pos, sign)
    art_col = {}
    for pos, r in enumerate(artificial_rows):
        art_col[r] = n + n_slack + pos
    for r, (coeffs, rhs, rel) in enumerate(normalized):
        row = list(coeffs) + [zero] * (n_slack + n_art) + [rhs]
        if r in slack_col:
            col, sign = slack_col[r]
            row[col] = one if sign > 0 else -one
            if sign > 0:
                basis[r] = col
        if r in art_col:
            row[art_col[r]] = one
            basis[r] = art_col[r]
        tab_rows.append(row)
    tableau = _Tableau(tab_rows, basis, n_cols)
    artificial_cols = set(art_col.values())
    return tableau, n + n_slack, artificial_cols


def _run_two_phase(rows, relations, costs, n):
    """Solve the standardized problem; returns (status, tableau or None)."""
    tableau, n_real_cols, artificial_cols = _build_phase1(rows, relations, n)
    zero = _q(0)
    one = _q(1)
    if artificial_cols:
        phase1_costs = [zero] * tableau.n_cols
        for col in artificial_cols:
            phase1_costs[col] = one
        status = tableau.minimize(phase1_costs)
        if status != "optimal":  # pragma: no cover - phase 1 is always bounded
            raise SolverError("phase 1 reported unbounded")
        infeasibility = sum(
            tableau.rows[r][-1] for r, var in enumerate(tableau.basis) if var in artificial_cols
        )
        if infeasibility > 0:
            return "infeasible", None
        # Pivot lingering artificials out of the basis; drop redundant rows.
        keep = []
        for r in range(len(tableau.rows)):
            if tableau.basis[r] not in artificial_cols:
                keep.append(r)
                continue
            pivot_col = next(
                (
                    j
                    for j in range(n_real_cols)
                    if tableau.rows[r][j] != 0
                ),
                None,
            )
            if pivot_col is None:
                continue  # redundant constraint
            tableau.pivot(r, pivot_col)
            keep.append(r)
        # Strip artificial columns so phase 2 cannot re-enter them and the
        # reduced-cost row stays aligned with the rhs column.
        tableau.rows = [
            tableau.rows[r][:n_real_cols] + [tableau.rows[r][-1]] for r in keep
        ]
        tableau.basis = [tableau.basis[r] for r in keep]
        tableau.n_cols = n_real_cols
    phase2_costs = list(costs) + [zero] * (tableau.n_cols - n)
    status = tableau.minimize(phase2_costs)
    if status == "unbounded":
        return "unbounded", None
    return "optimal", tableau


def solve_lp(problem: LpProblem) -> Solution:
    """Solve a rational LP exactly; never touches floating point.

    The returned values satisfy every constraint exactly, which tests can (and
    do) verify by resubstitution.
    """
    rows, relations, costs, lower, early = _standardize(problem)
    if early == "infeasible":
        return Solution("infeasible")
    status, tableau = _run_two_phase(rows, relations, costs, problem.n_vars)
    if status != "optimal":
        return Solution(status)
    shifted = tableau.solution(problem.n_vars)
    values = tuple(_frac(v + l) for v, l in zip(shifted, lower))
    objective = sum(
        (c * v for c, v in zip(problem.objective, values)),
        start=Fraction(0),
    )
    return Solution("optimal", objective, values)


def _solve_lp_with_bounds(problem: LpProblem, lower, upper) -> Solution:
    return solve_lp(replace(problem, lower=tuple(lower), upper=tuple(upper)))


def _branch_and_bound(problem: LpProblem, integer_vars: Sequence[int], equal_ok: bool):
    """DFS branch and bound; returns (status, best_solution).

    Prunes nodes whose relaxation cannot beat the incumbent.  With
    ``equal_ok`` false the incumbent also prunes ties, which is enough when
    only the optimal value matters.
    """
    sign = 1 if problem.sense == "min" else -1
    best: Optional[Solution] = None
    best_key = None
    stack = [(problem.lower, problem.upper)]
    while stack:
        lower, upper = stack.pop()
        relax = _solve_lp_with_bounds(problem, lower, upper)
        if relax.status == "infeasible":
            continue
        if relax.status == "unbounded":
            return "unbounded", None
        bound = sign * relax.objective
        if best is not None:
            if bound > best_key or (not equal_ok and bound == best_key):
                continue
        branch_var = -1
        branch_frac = None
        for idx in integer_vars:
            value = relax.values[idx]
            if value.denominator == 1:
                continue
            frac = value - _floor(value)
            distance = abs(frac - Fraction(1, 2))
            if branch_frac is None or distance < branch_frac:
                branch_frac = distance
                branch_var = idx
        if branch_var < 0:
            candidate_key = sign * relax.objective
            int_vec = tuple(relax.values[idx] for idx in sorted(integer_vars))
            if best is None or candidate_key < best_key:
                best, best_key = relax, candidate_key
            elif candidate_key == best_key and equal_ok:
                incumbent_vec = tuple(best.values[idx] for idx in sorted(integer_vars))
                if int_vec < incumbent_vec:
                    best = relax
            continue
        value = relax.values[branch_var]
        floor_val = Fraction(_floor(value))
        ceil_val = Fraction(_ceil(value))
        up_lower = list(lower)
        up_lower[branch_var] = max(lower[branch_var], ceil_val)
        stack.append((tuple(up_lower), upper))
        down_upper = list(upper)
        current_ub = upper[branch_var]
        down_upper[branch_var] = floor_val if current_ub is None else min(current_ub, floor_val)
        stack.append((lower, tuple(down_upper)))  # explored first (LIFO)
    if best is None:
        return "infeasible", None
    return "optimal", best


def solve_milp(problem: MilpProblem) -> Solution:
    """Solve a rational MILP by exact branch and bound.

    Every integer variable must carry finite bounds; branching then terminates
    because each branch shrinks an integer interval.  Among equally optimal
    integer points the lexicographically smallest integer-variable vector is
    returned, found by minimizing each integer variable in index order over
    the optimal set.
    """
    lp = problem.lp
    int_vars = sorted(problem.integer_vars)
    if not int_vars:
        return solve_lp(lp)
    for idx in int_vars:
        if lp.upper[idx] is None:
            raise UnboundedIntegerError(
                f"integer variable {idx} has no upper bound; branching would not terminate"
            )
    # Integer variables may as well start on integer bounds.
    lower = list(lp.lower)
    upper = list(lp.upper)
    for idx in int_vars:
        lower[idx] = Fraction(_ceil(lower[idx]))
        upper[idx] = Fraction(_floor(upper[idx]))
    lp = replace(lp, lower=tuple(lower), upper=tuple(upper))
    status, stage1 = _branch_and_bound(lp, int_vars, equal_ok=False)
    if status != "optimal":
        return Solution(status)
    optimum = stage1.objective
    # Lexicographic refinement: pin the objective, then minimize each integer
    # variable in turn over what remains of the optimal set.
    pinned = replace(
        lp,
        sense="min",
        constraints=lp.constraints + (Constraint(lp.objective, "=", optimum),),
    )
    solution = stage1
    for idx in int_vars:
        objective = tuple(
            Fraction(1) if j == idx else Fraction(0) for j in range(lp.n_vars)
        )
        sub = replace(pinned, objective=objective)
        status, best = _branch_and_bound(sub, int_vars, equal_ok=False)
        if status != "optimal":  # pragma: no cover - the optimal set is non-empty
            raise SolverError("lexicographic refinement lost feasibility")
        value = best.objective
        pinned = replace(
            pinned,
            constraints=pinned.constraints + (Constraint(objective, "=", value),),
        )
        solution = best
    values = solution.values
    objective = sum(
        (c * v for c, v in zip(lp.objective, values)),
        start=Fraction(0),
    )
    return Solution("optimal", objective, values)


def _equality_form(problem: LpProblem):
    """Rewrite as ``A x = b`` with slack columns, for basis enumeration."""
    rows, relations, costs, lower, early = _standardize(problem)
    if early == "infeasible":
        return None
    n = problem.n_vars
    n_slack = sum(1 for rel in relations if rel != "=")
    zero = _q(0)
    one = _q(1)
    matrix = []
    rhs = []
    slack_pos = 0
    for (coeffs, b), rel in zip(rows, relations):
        row = list(coeffs) + [zero] * n_slack
        if rel != "=":
            row[n + slack_pos] = one if rel == "<=" else -one
            slack_pos += 1
        matrix.append(row)
        rhs.append(b)
    return matrix, rhs, costs, lower


def _gauss_solve(matrix, rhs):
    """Solve a square exact system; returns None when singular."""
    size = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [cell * inv for cell in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][-1] for r in range(size)]


_ENUMERATION_LIMIT = 200_000


def enumerate_optimal_vertices(problem: LpProblem, cap: int = 16) -> list[Solution]:
    """All distinct basic optimal solutions, lexicographically sorted.

    Works by brute-force basis enumeration on the equality form, so it is only
    meant for the desk-scale problems this laboratory deals with.  Raises
    :class:`SolverError` when the problem has no optimum to enumerate.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    base = solve_lp(problem)
    if base.status != "optimal":
        raise SolverError(f"cannot enumerate optima of an {base.status} problem")
    form = _equality_form(problem)
    if form is None:  # pragma: no cover - optimal problems standardize fine
        raise SolverError("problem became infeasible during standardization")
    matrix, rhs, _, lower = form
    n = problem.n_vars
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    if n_rows == 0:
        return [base]
    total = 1
    for i in range(n_rows):
        total = total * (n_cols - i) // (i + 1)
    if total > _ENUMERATION_LIMIT:
        raise SolverError(
            f"vertex enumeration would inspect {total} bases; problem too large"
        )
    target = base.objective
    zero = _q(0)
    seen = set()
    found = []
    for basis in combinations(range(n_cols), n_rows):
        square = [[matrix[r][c] for c in basis] for r in range(n_rows)]
        values = _gauss_solve(square, rhs)
        if values is None:
            continue
        if any(v < 0 for v in values):
            continue
        full = [zero] * n_cols
        for col, value in zip(basis, values):
            full[col] = value
        point = tuple(_frac(full[j] + lower[j]) for j in range(n))
        if point in seen:
            continue
        objective = sum(
            (c * v for c, v in zip(problem.objective, point)),
            start=Fraction(0),
        )
        if objective != target:
            continue
        seen.add(point)
        found.append(Solution("optimal", objective, point))
    found.sort(key=lambda sol: sol.values)
    return found[:cap]
