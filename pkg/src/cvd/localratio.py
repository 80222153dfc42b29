"""The 2-approximation driver, exact oracles, and solution validation.

The approximation is the classic local-ratio loop: strip zero-cost
vertices (with a re-insertion check), contract true twins, and otherwise
subtract the largest feasible multiple of a 2-good local cost function
rooted at a maximum-degree vertex.  All arithmetic is exact rational;
the multiplier step creates fractions even from integer inputs.

Two independent exact solvers are provided for verification: subset
enumeration with cost pruning, and memoized 3-way branching on an
induced P3.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .certificates import find_2good
from .errors import ContractError
from .graphs import (
    Graph,
    _any_p3_triple,
    _is_cluster,
    _least_twin_pair,
    bits,
    induced,
)


@dataclass(frozen=True, slots=True)
class HittingSet:
    """A vertex set whose removal leaves a cluster graph.

    ``minimal`` records whether removing any single member would break
    the hitting property; ``cost`` is exact under the cost function the
    set was computed for.
    """

    vertices: tuple[int, ...]
    cost: Fraction
    minimal: bool


def unit_costs(n: int) -> list[Fraction]:
    return [Fraction(1)] * n


def _check_costs(g: Graph, costs) -> list[Fraction]:
    if len(costs) != g.n:
        raise ContractError(f"expected {g.n} costs, got {len(costs)}")
    out = [Fraction(c) for c in costs]
    if any(c < 0 for c in out):
        raise ContractError("costs must be nonnegative")
    return out


def validate(g: Graph, costs, x) -> tuple[bool, bool, Fraction]:
    """(is_hitting, is_minimal, cost) for an arbitrary vertex set ``x``."""
    costs = _check_costs(g, costs)
    xs = sorted(set(x))
    if any(not 0 <= v < g.n for v in xs):
        raise ContractError("vertex out of range in candidate set")
    xmask = sum(1 << v for v in xs)
    hitting = _is_cluster(g.adj, g.full & ~xmask)
    minimal = hitting and all(
        not _is_cluster(g.adj, g.full & ~(xmask ^ (1 << v))) for v in xs
    )
    return hitting, minimal, sum((costs[v] for v in xs), Fraction(0))


def lambda_star(costs, local_costs) -> Fraction:
    """Largest multiplier keeping ``costs - lam * local_costs`` nonnegative.

    Both sequences are aligned; entries of ``local_costs`` equal to zero
    are ignored.  The result is min over positive entries of c(v)/c_H(v).
    """
    best = None
    for c, ch in zip(costs, local_costs):
        if ch:
            q = Fraction(c) / ch
            if best is None or q < best:
                best = q
    if best is None:
        raise ContractError("local cost function is identically zero")
    return best


def contract_twins(g: Graph, costs, u: int, u2: int) -> tuple[Graph, list[Fraction]]:
    """Merge true twins: delete ``u2``, fold its cost into ``u``.

    The surviving graph keeps the remaining vertices in ascending order
    (dense reindexing); the optimum value is unchanged.
    """
    costs = _check_costs(g, costs)
    if u == u2 or not g.has_edge(u, u2) or (g.closed(u) != g.closed(u2)):
        raise ContractError(f"{u} and {u2} are not true twins")
    keep = [v for v in range(g.n) if v != u2]
    sub, vmap = induced(g, keep)
    out = [costs[v] for v in vmap]
    out[vmap.index(u)] = costs[u] + costs[u2]
    return sub, out


# ---------------------------------------------------------------------------
# the approximation algorithm
# ---------------------------------------------------------------------------


def cluster_vd_apx(g: Graph, costs) -> HittingSet:
    """Minimal hitting set of cost at most twice the optimum.

    Iterative form of the local-ratio recursion: a forward pass records
    vertex deletions (zero-cost strips and twin contractions) while
    cost-subtraction steps leave the graph unchanged; a backward replay
    reconstructs the hitting set with the re-insertion checks.
    """
    costs = _check_costs(g, costs)
    original = list(costs)
    adj = g.adj
    alive = g.full
    actions: list[tuple] = []
    rounds = 0
    while not _is_cluster(adj, alive):
        rounds += 1
        if rounds > 2 * g.n + 2:
            raise AssertionError("local-ratio loop exceeded its termination bound")
        zero = next((v for v in bits(alive) if costs[v] == 0), None)
        if zero is not None:
            actions.append(("drop", zero))
            alive ^= 1 << zero
            continue
        pair = _least_twin_pair(adj, alive)
        if pair is not None:
            u, u2 = pair
            costs[u] += costs[u2]
            actions.append(("twin", u, u2))
            alive ^= 1 << u2
            continue
        v0 = max(bits(alive), key=lambda v: ((adj[v] & alive).bit_count(), -v))
        sub, vmap = induced(g, frozenset(bits(alive)))
        cert = find_2good(sub, vmap.index(v0))
        lam = lambda_star(
            [costs[vmap[lv]] for lv in cert.vertices], cert.costs
        )
        assert lam > 0
        zeroed = 0
        for lv, ch in zip(cert.vertices, cert.costs):
            if ch:
                v = vmap[lv]
                costs[v] -= lam * ch
                assert costs[v] >= 0
                zeroed += costs[v] == 0
        assert zeroed >= 1

    xmask = 0
    for action in reversed(actions):
        if action[0] == "drop":
            v = action[1]
            alive |= 1 << v
            if not _is_cluster(adj, alive & ~xmask):
                xmask |= 1 << v
        else:
            _, u, u2 = action
            alive |= 1 << u2
            if xmask >> u & 1:
                xmask |= 1 << u2

    verts = tuple(bits(xmask))
    total = sum((original[v] for v in verts), Fraction(0))
    hitting, minimal, _ = validate(g, original, verts)
    assert hitting
    return HittingSet(verts, total, minimal)


# ---------------------------------------------------------------------------
# exact oracles
# ---------------------------------------------------------------------------

_ORACLE_LIMIT = 20


def cluster_vd_exact(g: Graph, costs) -> HittingSet:
    """Exact minimum-cost hitting set by subset enumeration.

    Subsets are scanned by popcount then lexicographically, pruning on
    the incumbent cost; among optima the lexicographically least vertex
    set is returned.  Refuses graphs with more than 20 vertices.
    """
    if g.n > _ORACLE_LIMIT:
        raise ContractError(f"refusing exact solve: n={g.n} exceeds {_ORACLE_LIMIT}")
    costs = _check_costs(g, costs)
    adj, full = g.adj, g.full
    ascending = sorted(costs)
    prefix = [Fraction(0)]
    for c in ascending:
        prefix.append(prefix[-1] + c)
    best_cost = None
    best = None
    for k in range(g.n + 1):
        if best_cost is not None and prefix[k] > best_cost:
            break
        for combo in combinations(range(g.n), k):
            cost = sum((costs[v] for v in combo), Fraction(0))
            if best_cost is not None and cost > best_cost:
                continue
            mask = 0
            for v in combo:
                mask |= 1 << v
            if not _is_cluster(adj, full & ~mask):
                continue
            if best_cost is None or cost < best_cost or (cost == best_cost and combo < best):
                best_cost, best = cost, combo
    hitting, minimal, _ = validate(g, costs, best)
    assert hitting
    return HittingSet(best, best_cost, minimal)


def opt_value(g: Graph, costs) -> Fraction:
    """Exact optimum value only (same enumeration, tighter pruning)."""
    if g.n > _ORACLE_LIMIT:
        raise ContractError(f"refusing exact solve: n={g.n} exceeds {_ORACLE_LIMIT}")
    adj, full = g.adj, g.full
    ascending = sorted(costs)
    prefix = [0]
    for c in ascending:
        prefix.append(prefix[-1] + c)
    best = None
    for k in range(g.n + 1):
        if best is not None and prefix[k] >= best:
            break
        for combo in combinations(range(g.n), k):
            cost = sum(costs[v] for v in combo)
            if best is not None and cost >= best:
                continue
            mask = 0
            for v in combo:
                mask |= 1 << v
            if _is_cluster(adj, full & ~mask):
                best = cost
    return Fraction(best if best is not None else 0)


def branch_opt_value(g: Graph, costs) -> Fraction:
    """Exact optimum by memoized 3-way branching on an induced P3.

    Stays on integer arithmetic when the costs are integers.
    """
    adj = g.adj
    memo: dict[int, int] = {}

    def solve(mask: int):
        got = memo.get(mask)
        if got is not None:
            return got
        w = _any_p3_triple(adj, mask)
        if w is None:
            value = 0
        else:
            value = min(costs[x] + solve(mask ^ (1 << x)) for x in w)
        memo[mask] = value
        return value

    return Fraction(solve(g.full))
