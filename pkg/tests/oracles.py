"""Independent brute-force oracles used only by the tests.

Nothing here calls into dealab's solver: linear systems are eliminated with
a local Gaussian routine and linear programs are minimized by enumerating
every basis of their equality form.  Slow on purpose, exact on purpose.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

Matrix = list[list[Fraction]]


def gauss_solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Solve a square rational system; None when singular."""
    n = len(matrix)
    work = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            return None
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [v / pivot for v in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [v - factor * p for v, p in zip(work[r], work[col])]
    return [work[r][n] for r in range(n)]


def brute_force_min(
    columns: Matrix, rhs: Sequence[Fraction], costs: Sequence[Fraction]
) -> Optional[tuple[Fraction, list[Fraction]]]:
    """Minimize costs over {v >= 0 : A v = rhs} by enumerating every basis.

    ``columns`` is given row-major (A has one inner list per equation).
    Returns (optimal value, one optimal vertex) or None when no basic
    feasible solution exists.  Only correct for problems whose optimum is
    attained at a vertex, which holds for every bounded feasible LP.
    """
    n_rows = len(columns)
    n_cols = len(columns[0]) if n_rows else 0
    best: Optional[tuple[Fraction, list[Fraction]]] = None
    for basis in combinations(range(n_cols), n_rows):
        square = [[columns[r][c] for c in basis] for r in range(n_rows)]
        values = gauss_solve(square, rhs)
        if values is None or any(v < 0 for v in values):
            continue
        full = [Fraction(0)] * n_cols
        for c, v in zip(basis, values):
            full[c] = v
        cost = sum(cost_c * v for cost_c, v in zip(costs, full))
        if best is None or cost < best[0]:
            best = (cost, full)
    return best


def output_envelope(points: Sequence[tuple[Fraction, Fraction]], x: Fraction) -> Optional[Fraction]:
    """Largest output reachable at input level x for one-input one-output data.

    The variable-returns technology allows any convex combination of the
    observed points plus free disposal, so the bound at x is the maximum
    over single observations with input <= x and over straight-line
    interpolations between pairs that straddle x.  None when x is below
    every observed input.
    """
    if x < min(px for px, _ in points):
        return None
    candidates = [py for px, py in points if px <= x]
    for (xa, ya), (xb, yb) in combinations(points, 2):
        lo, hi = min(xa, xb), max(xa, xb)
        if xa != xb and lo <= x <= hi:
            candidates.append(ya + (yb - ya) * (x - xa) / (xb - xa))
    return max(candidates)


def real_member_1in_1out(
    points: Sequence[tuple[Fraction, Fraction]], x: Fraction, y: Fraction
) -> bool:
    bound = output_envelope(points, x)
    return bound is not None and 0 <= y <= bound


def ccr_theta_oracle(
    inputs: Sequence[Sequence[Fraction]],
    outputs: Sequence[Sequence[Fraction]],
    target: int,
) -> Fraction:
    """Constant-returns radial input score by full basis enumeration.

    Equality form over variables [theta, lambda_1..n, input slacks, output
    surpluses]: theta * x_t - sum(lambda * x_j) - s = 0 per input and
    sum(lambda * y_j) - e = y_t per output.
    """
    n = len(inputs)
    m = len(inputs[0])
    p = len(outputs[0])
    n_cols = 1 + n + m + p
    columns: Matrix = []
    rhs: list[Fraction] = []
    for i in range(m):
        row = [Fraction(0)] * n_cols
        row[0] = inputs[target][i]
        for j in range(n):
            row[1 + j] = -inputs[j][i]
        row[1 + n + i] = Fraction(-1)
        columns.append(row)
        rhs.append(Fraction(0))
    for r in range(p):
        row = [Fraction(0)] * n_cols
        for j in range(n):
            row[1 + j] = outputs[j][r]
        row[1 + n + m + r] = Fraction(-1)
        columns.append(row)
        rhs.append(outputs[target][r])
    costs = [Fraction(0)] * n_cols
    costs[0] = Fraction(1)
    best = brute_force_min(columns, rhs, costs)
    assert best is not None, "self-reference always gives a feasible point"
    return best[0]
