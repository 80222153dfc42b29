"""Exact rational linear programming for the relaxation lab.

Problems are minimizations over ``>=`` rows with rational data.  The
solver works on the dual (maximize b^T y over A^T y <= c, y >= 0), whose
all-slack basis is feasible whenever the objective is nonnegative, so no
phase-1 is needed for the relaxations built here.  Pivoting uses Bland's
anti-cycling rule on a dense fraction-free integer tableau; the optimal
primal/dual pair is re-verified exactly (feasibility of every original
row plus equal objective values) before it is returned.

Variable nonnegativity is not implicit: a variable counts as nonnegative
only when rows of the program imply it (directly, or through chains like
``x >= y >= 0``).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import ContractError, InvariantError

Row = tuple[dict, Fraction]  # (coefficients by variable id, rhs) meaning >=


@dataclass(frozen=True, slots=True)
class LinearProgram:
    """Rational constraint rows over named variables; all rows are ``>=``."""

    variables: tuple
    rows: tuple[Row, ...]
    objective: dict | None = None


@dataclass(frozen=True, slots=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    values: dict
    objective: Fraction | None
    duals: tuple[Fraction, ...] = field(default=(), repr=False)


_MAX_PIVOTS = 500_000


def _nonneg_closure(var_index, rows):
    """Variables whose nonnegativity follows from the rows.

    Seeds with single-variable rows ``a * x >= 0`` (a > 0); propagates
    through two-variable rows ``a * x - b * y >= 0`` once y is known
    nonnegative.  Returns (nonneg set, indices of pure sign rows).
    """
    nonneg = set()
    sign_rows = set()
    for i, (coeffs, rhs) in enumerate(rows):
        items = [(v, c) for v, c in coeffs.items() if c != 0]
        if rhs == 0 and len(items) == 1 and items[0][1] > 0:
            nonneg.add(items[0][0])
            sign_rows.add(i)
    pair_rows = []
    for coeffs, rhs in rows:
        items = [(v, c) for v, c in coeffs.items() if c != 0]
        if rhs == 0 and len(items) == 2:
            pair_rows.append(items)
    changed = True
    while changed:
        changed = False
        for items in pair_rows:
            for (v, cv), (u, cu) in (items, items[::-1]):
                if cv > 0 and cu < 0 and u in nonneg and v not in nonneg:
                    nonneg.add(v)
                    changed = True
    return nonneg, sign_rows


def solve_min(lp: LinearProgram, objective: dict | None = None) -> LpSolution:
    """Exact optimum of ``min objective . x`` subject to the rows of ``lp``."""
    obj = objective if objective is not None else lp.objective
    if obj is None:
        raise ContractError("no objective attached to the program")
    variables = list(lp.variables)
    var_index = {v: j for j, v in enumerate(variables)}
    for v in obj:
        if v not in var_index:
            raise ContractError(f"objective names unknown variable {v!r}")

    nonneg, sign_rows = _nonneg_closure(var_index, lp.rows)
    free = [v for v in variables if v not in nonneg]
    if free:
        raise ContractError(
            f"rows do not imply nonnegativity of {free[:3]!r}; unsupported"
        )
    cost = [Fraction(obj.get(v, 0)) for v in variables]
    if any(c < 0 for c in cost):
        raise ContractError("negative objective coefficients are unsupported")

    # Integer-scaled matrix rows, skipping the pure sign rows.
    kept = [i for i in range(len(lp.rows)) if i not in sign_rows]
    mat_rows = []
    rhs = []
    for i in kept:
        coeffs, b = lp.rows[i]
        scale = lcm(*(Fraction(c).denominator for c in coeffs.values()), Fraction(b).denominator)
        mat_rows.append({var_index[v]: int(Fraction(c) * scale) for v, c in coeffs.items() if c != 0})
        rhs.append(int(Fraction(b) * scale))

    m = len(mat_rows)
    k = len(variables)
    width = m + k + 1

    # Dual tableau: one row per primal variable (constraint A^T y <= c),
    # columns are the m dual variables, then k slacks, then the rhs.
    tableau = []
    for j in range(k):
        scale = cost[j].denominator
        row = [0] * width
        for i, coeffs in enumerate(mat_rows):
            a = coeffs.get(j)
            if a:
                row[i] = a * scale
        row[m + j] = scale
        row[width - 1] = cost[j].numerator
        tableau.append(row)
    objrow = [0] * width
    for i in range(m):
        objrow[i] = rhs[i]
    tableau.append(objrow)

    basis = [m + j for j in range(k)]  # all-slack start; feasible since c >= 0
    denom = 1
    pivots = 0
    while True:
        enter = next((j for j in range(width - 1) if tableau[k][j] > 0), None)
        if enter is None:
            break
        leave = None
        for r in range(k):
            a = tableau[r][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = r
                continue
            lhs = tableau[r][width - 1] * tableau[leave][enter]
            rhs_cmp = tableau[leave][width - 1] * a
            if lhs < rhs_cmp or (lhs == rhs_cmp and basis[r] < basis[leave]):
                leave = r
        if leave is None:
            # Dual unbounded, so the primal program is infeasible.
            return LpSolution("infeasible", {}, None)
        pivots += 1
        if pivots > _MAX_PIVOTS:
            raise InvariantError("simplex exceeded its pivot budget")
        piv = tableau[leave][enter]
        prow = tableau[leave]
        for r in range(k + 1):
            if r == leave:
                continue
            row = tableau[r]
            f = row[enter]
            if f:
                tableau[r] = [(a * piv - f * b) // denom for a, b in zip(row, prow)]
            else:
                tableau[r] = [a * piv // denom for a in row]
        basis[leave] = enter
        denom = piv

    yvals = [Fraction(0)] * m
    for r in range(k):
        if basis[r] < m:
            yvals[basis[r]] = Fraction(tableau[r][width - 1], denom)
    xvals = [Fraction(-tableau[k][m + j], denom) for j in range(k)]

    _certify(lp, variables, cost, xvals, mat_rows, rhs, yvals)
    values = dict(zip(variables, xvals))
    objective_value = sum((c * x for c, x in zip(cost, xvals)), Fraction(0))
    return LpSolution("optimal", values, objective_value, tuple(yvals))


def _certify(lp, variables, cost, xvals, mat_rows, rhs, yvals):
    """Exact optimality proof: primal and dual feasible with equal value."""
    value_map = dict(zip(variables, xvals))
    for coeffs, b in lp.rows:
        lhs = sum((Fraction(c) * value_map[v] for v, c in coeffs.items()), Fraction(0))
        if lhs < Fraction(b):
            raise InvariantError("simplex returned a primal-infeasible point")
    if any(x < 0 for x in xvals):
        raise InvariantError("simplex returned a negative variable")
    if any(y < 0 for y in yvals):
        raise InvariantError("simplex returned a negative dual multiplier")
    for j in range(len(variables)):
        lhs = sum(coeffs.get(j, 0) * yvals[i] for i, coeffs in enumerate(mat_rows))
        if lhs > cost[j]:
            raise InvariantError("simplex returned a dual-infeasible point")
    primal = sum((c * x for c, x in zip(cost, xvals)), Fraction(0))
    dual = sum((Fraction(b) * y for b, y in zip(rhs, yvals)), Fraction(0))
    if primal != dual:
        raise InvariantError("primal and dual objectives disagree at the claimed optimum")


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def variable_name(var) -> str:
    if var[0] == "x":
        return f"x{var[1]}"
    return f"y{var[1]}_{var[2]}"


def lp_to_text(lp: LinearProgram, objective: dict | None = None) -> str:
    """Human-readable LP listing with exact rational coefficients."""
    obj = objective if objective is not None else (lp.objective or {})
    lines = ["Minimize"]
    terms = [
        f"{Fraction(obj.get(v, 0))} {variable_name(v)}"
        for v in lp.variables
        if obj.get(v, 0)
    ]
    lines.append(" obj: " + (" + ".join(terms) if terms else "0"))
    lines.append("Subject To")
    for i, (coeffs, rhs) in enumerate(lp.rows):
        parts = []
        for v in lp.variables:
            c = coeffs.get(v)
            if not c:
                continue
            c = Fraction(c)
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = -c if c < 0 else c
            parts.append(f"{sign} {mag} {variable_name(v)}" if parts else f"{sign}{mag} {variable_name(v)}")
        lines.append(f" r{i}: " + " ".join(parts) + f" >= {Fraction(rhs)}")
    lines.append("End")
    return "\n".join(lines) + "\n"
