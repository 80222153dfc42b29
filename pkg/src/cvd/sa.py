"""P3-covering LP relaxations and their one-round Sherali-Adams lift.

Level 0 is the plain covering polytope: one row per induced P3 plus box
bounds.  Level 1 adds a variable for every vertex pair and four row
families: the lifted covering row through a P3's two edges, the two
families tying a P3 to each outside vertex, and the pair bounds
``1 >= x_v >= x_vu >= 0``.  Everything is exact rational.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import localratio
from .errors import ContractError
from .graphs import Graph, P3Witness, bits
from .lp import LinearProgram, LpSolution, solve_min


def _p3_list(g: Graph) -> list[tuple[int, int, int]]:
    """All induced P3s as (end, mid, end) with ends ascending, sorted."""
    out = []
    adj = g.adj
    for mid in range(g.n):
        nbrs = list(bits(adj[mid]))
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                if not adj[a] >> b & 1:
                    out.append((a, mid, b))
    out.sort(key=lambda t: tuple(sorted(t)))
    return out


def _sv(v):
    return ("x", v)


def _pv(u, v):
    return ("y", u, v) if u < v else ("y", v, u)


def build_sa(g: Graph, r: int) -> LinearProgram:
    """The level-``r`` relaxation of the P3 covering problem, r in {0, 1}.

    The objective is attached later by :func:`lp_min`.
    """
    if r not in (0, 1):
        raise ContractError("only rounds 0 and 1 are built explicitly")
    p3s = _p3_list(g)
    rows: list[tuple[dict, Fraction]] = []
    one = Fraction(1)
    if r == 0:
        variables = tuple(_sv(v) for v in range(g.n))
        for a, mid, b in p3s:
            rows.append(({_sv(a): 1, _sv(mid): 1, _sv(b): 1}, one))
        for v in range(g.n):
            rows.append(({_sv(v): 1}, Fraction(0)))
            rows.append(({_sv(v): -1}, -one))
        return LinearProgram(variables, tuple(rows))

    pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    variables = tuple(_sv(v) for v in range(g.n)) + tuple(_pv(u, v) for u, v in pairs)
    for a, mid, b in p3s:
        # lifted covering row; the pair terms are the P3's two edges
        rows.append(
            (
                {_sv(a): 1, _sv(mid): 1, _sv(b): 1, _pv(a, mid): -1, _pv(mid, b): -1},
                one,
            )
        )
    for a, mid, b in p3s:
        triple = 1 << a | 1 << mid | 1 << b
        for z in bits(g.full & ~triple):
            rows.append(
                ({_pv(a, z): 1, _pv(mid, z): 1, _pv(b, z): 1, _sv(z): -1}, Fraction(0))
            )
            rows.append(
                (
                    {
                        _sv(a): 1,
                        _sv(mid): 1,
                        _sv(b): 1,
                        _sv(z): 1,
                        _pv(a, z): -1,
                        _pv(mid, z): -1,
                        _pv(b, z): -1,
                    },
                    one,
                )
            )
    for u, v in pairs:
        rows.append(({_sv(u): 1, _pv(u, v): -1}, Fraction(0)))
        rows.append(({_sv(v): 1, _pv(u, v): -1}, Fraction(0)))
        rows.append(({_pv(u, v): 1}, Fraction(0)))
    for v in range(g.n):
        rows.append(({_sv(v): -1}, -one))
        if g.n == 1:
            rows.append(({_sv(v): 1}, Fraction(0)))
    return LinearProgram(variables, tuple(rows))


def lp_min(lp: LinearProgram, costs) -> LpSolution:
    """Exact minimum of ``sum c(v) x_v`` over the relaxation."""
    costs = [Fraction(c) for c in costs]
    if any(c < 0 for c in costs):
        raise ContractError("costs must be nonnegative")
    objective = {}
    for var in lp.variables:
        if var[0] == "x":
            v = var[1]
            if v >= len(costs):
                raise ContractError("cost vector shorter than the variable set")
            objective[var] = costs[v]
    return solve_min(lp, objective)


def sa_value(g: Graph, costs, r: int) -> Fraction:
    """Convenience: optimum value of the level-``r`` relaxation."""
    solution = lp_min(build_sa(g, r), costs)
    assert solution.status == "optimal"
    return solution.objective


def integrality_gap(g: Graph, costs, r: int) -> Fraction:
    """Exact OPT / LP ratio for one instance; 1 by convention when OPT = 0."""
    opt = localratio.opt_value(g, [Fraction(c) for c in costs])
    if opt == 0:
        return Fraction(1)
    value = sa_value(g, costs, r)
    if value == 0:
        raise ContractError("LP value 0 with positive optimum: infinite gap")
    return opt / value


# ---------------------------------------------------------------------------
# the 2/5 lower-bound point
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FeasibilityReport:
    feasible: bool
    violated_row: int | None = None
    detail: str = ""


def _girth_bfs(g: Graph) -> tuple[int | None, tuple[int, ...] | None]:
    """Exact girth by breadth-first search from every vertex.

    Returns (girth, witness cycle) or (None, None) for a forest.  The
    witness is only materialized for girths 3 and 4, which is all the
    precondition error needs.
    """
    adj = g.adj
    best = None
    for src in range(g.n):
        dist = {src: 0}
        parent = {src: -1}
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for u in bits(adj[v]):
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        parent[u] = v
                        nxt.append(u)
            frontier = nxt
        # Every non-tree edge closes a walk through the root that contains
        # a cycle no longer than the walk; for a root on a shortest cycle
        # the opposite edge realizes the girth exactly.
        for u in dist:
            for w in bits(adj[u]):
                if w > u and w in dist and parent[u] != w and parent[w] != u:
                    cand = dist[u] + dist[w] + 1
                    if best is None or cand < best:
                        best = cand
    if best is None:
        return None, None
    witness = None
    if best == 3:
        for u in range(g.n):
            for v in bits(adj[u]):
                if v > u:
                    both = adj[u] & adj[v]
                    if both:
                        w = (both & -both).bit_length() - 1
                        witness = (u, v, w)
                        break
            if witness:
                break
    elif best == 4:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                both = adj[u] & adj[v] & ~(1 << u) & ~(1 << v)
                if both.bit_count() >= 2:
                    a = (both & -both).bit_length() - 1
                    rest = both ^ (1 << a)
                    b = (rest & -rest).bit_length() - 1
                    witness = (u, a, v, b)
                    break
            if witness:
                break
    return best, witness


def lb_point(g: Graph):
    """The feasible 2/5 point for the level-1 relaxation of a girth-5 graph.

    Singles get 2/5; pairs get 0 on edges and 1/5 on non-edges.  Every
    level-1 row is checked exactly.  Returns (values, report, objective
    under unit costs).  Graphs of girth below 5 are rejected with a short
    cycle named in the error.
    """
    girth, witness = _girth_bfs(g)
    if girth is not None and girth < 5:
        raise ContractError(
            f"girth {girth} below 5: cycle {'-'.join(map(str, witness))} is too short"
        )
    values = {}
    for v in range(g.n):
        values[_sv(v)] = Fraction(2, 5)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            values[_pv(u, v)] = Fraction(0) if g.has_edge(u, v) else Fraction(1, 5)
    lp = build_sa(g, 1)
    report = FeasibilityReport(True)
    for i, (coeffs, rhs) in enumerate(lp.rows):
        lhs = sum((Fraction(c) * values[v] for v, c in coeffs.items()), Fraction(0))
        if lhs < rhs:
            report = FeasibilityReport(False, i, f"row {i}: {lhs} < {rhs}")
            break
    objective = Fraction(2 * g.n, 5) if g.n else Fraction(0)
    return values, report, objective


# ---------------------------------------------------------------------------
# the diagonal property of level-1 points
# ---------------------------------------------------------------------------


def diagonal_scan(g: Graph, values) -> P3Witness | None:
    """Search for a P3 with a diagonal pair whose vertices all sit below 2/5.

    A pair (a, b) is a diagonal when some two vertices u, v form a P3
    with each of a and b.  Any feasible level-1 point must put at least
    2/5 on some vertex of every P3 containing a diagonal, so the scan
    returns None on feasible inputs; a witness is a counterexample.
    """
    p3s = _p3_list(g)
    diag_pairs = set()
    partners: dict[tuple[int, int], set[int]] = {}
    for a, mid, b in p3s:
        triple = tuple(sorted((a, mid, b)))
        for i in range(3):
            pair = tuple(sorted((triple[i], triple[(i + 1) % 3])))
            third = triple[(i + 2) % 3]
            partners.setdefault(pair, set()).add(third)
    for pair, thirds in partners.items():
        for a in thirds:
            for b in thirds:
                if a < b:
                    diag_pairs.add((a, b))
    threshold = Fraction(2, 5)
    for a, mid, b in p3s:
        triple = tuple(sorted((a, mid, b)))
        has_diag = any(
            (triple[i], triple[j]) in diag_pairs
            for i in range(3)
            for j in range(i + 1, 3)
        )
        if not has_diag:
            continue
        if all(values[_sv(v)] < threshold for v in triple):
            return P3Witness(mid, (a, b))
    return None
