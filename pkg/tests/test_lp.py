import random
from fractions import Fraction

import pytest

from cvd.errors import ContractError
from cvd.lp import LinearProgram, lp_to_text, solve_min


def _lp(variables, rows):
    return LinearProgram(tuple(variables), tuple((dict(c), Fraction(r)) for c, r in rows))


X, Y, Z = ("x", 0), ("x", 1), ("x", 2)


def test_simple_covering():
    lp = _lp([X, Y], [({X: 1}, 0), ({Y: 1}, 0), ({X: 1, Y: 1}, 1)])
    sol = solve_min(lp, {X: 1, Y: 2})
    assert sol.status == "optimal"
    assert sol.objective == 1 and sol.values[X] == 1 and sol.values[Y] == 0


def test_fractional_optimum():
    # three pairwise covers force the 1/2 point
    lp = _lp(
        [X, Y, Z],
        [
            ({X: 1}, 0),
            ({Y: 1}, 0),
            ({Z: 1}, 0),
            ({X: 1, Y: 1}, 1),
            ({Y: 1, Z: 1}, 1),
            ({X: 1, Z: 1}, 1),
        ],
    )
    sol = solve_min(lp, {X: 1, Y: 1, Z: 1})
    assert sol.objective == Fraction(3, 2)
    assert all(v == Fraction(1, 2) for v in sol.values.values())


def test_rational_data():
    lp = _lp([X], [({X: 1}, 0), ({X: Fraction(2, 3)}, Fraction(1, 5))])
    sol = solve_min(lp, {X: Fraction(7, 2)})
    assert sol.values[X] == Fraction(3, 10)
    assert sol.objective == Fraction(21, 20)


def test_infeasible_reported():
    lp = _lp([X], [({X: 1}, 0), ({X: -1}, 1)])  # x >= 0 and x <= -1
    sol = solve_min(lp, {X: 1})
    assert sol.status == "infeasible"


def test_nonneg_through_chain():
    # only y >= 0 explicitly; x >= y makes x nonnegative too
    lp = _lp([X, Y], [({Y: 1}, 0), ({X: 1, Y: -1}, 0), ({X: 1, Y: 1}, 2)])
    sol = solve_min(lp, {X: 3, Y: 1})
    assert sol.status == "optimal"
    assert sol.objective == 4 and sol.values[X] == sol.values[Y] == 1


def test_free_variable_rejected():
    lp = _lp([X], [({X: -1}, -1)])
    with pytest.raises(ContractError, match="nonnegativity"):
        solve_min(lp, {X: 1})


def test_negative_objective_rejected():
    lp = _lp([X], [({X: 1}, 0)])
    with pytest.raises(ContractError):
        solve_min(lp, {X: -1})


def test_degenerate_ties_terminate():
    # many redundant rows with identical ratios: Bland's rule must not cycle
    rows = [({X: 1}, 0), ({Y: 1}, 0)]
    rows += [({X: 1, Y: 1}, 1)] * 6
    rows += [({X: 2, Y: 2}, 2)] * 6
    sol = solve_min(_lp([X, Y], rows), {X: 1, Y: 1})
    assert sol.objective == 1


def test_matches_scipy_on_random_programs():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = random.Random(3)
    for _ in range(40):
        nv = rng.randint(1, 5)
        variables = [("x", i) for i in range(nv)]
        rows = [({variables[i]: 1}, 0) for i in range(nv)]
        for _ in range(rng.randint(1, 8)):
            coeffs = {
                variables[i]: rng.randint(-2, 3)
                for i in range(nv)
                if rng.random() < 0.8
            }
            if not coeffs:
                continue
            rows.append((coeffs, rng.randint(-2, 2)))
        cost = {variables[i]: rng.randint(0, 5) for i in range(nv)}
        lp = _lp(variables, rows)
        sol = solve_min(lp, cost)

        c = [cost[v] for v in variables]
        a_ub, b_ub = [], []
        for coeffs, rhs in lp.rows:
            a_ub.append([-float(coeffs.get(v, 0)) for v in variables])
            b_ub.append(-float(rhs))
        ref = scipy_opt.linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(0, None)] * nv, method="highs")
        if sol.status == "optimal":
            assert ref.success
            assert abs(float(sol.objective) - ref.fun) < 1e-7
        else:
            assert not ref.success


def test_lp_text_export():
    lp = _lp([X, Y], [({X: 1, Y: -1}, 0), ({X: 1}, 0)])
    text = lp_to_text(lp, {X: Fraction(1, 2)})
    assert "Minimize" in text and "1/2 x0" in text and ">= 0" in text
