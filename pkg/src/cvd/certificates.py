"""Construction of 2-good local cost functions.

A *certificate* is an induced subgraph H of a host graph together with
integer costs.  A *strong* certificate has total cost at most twice the
local optimum, no matter how H sits in the host.  A *central* certificate
with root v0 covers all of N(v0), puts cost at least 1 on every vertex of
N[v0], and has total cost at most twice the local optimum plus one; since
no minimal hitting set of the host can contain all of N[v0], either kind
charges every minimal hitting set at most twice the local optimum.

Three builders cover every twin-free host: a wheel certificate when the
root's neighborhood has a hole, a 2P3-plus-apex certificate when it has
two anticomplete P3s, and otherwise a hitting-clique construction on the
radius-2 ball, reached by repeatedly peeling distance-2 vertices together
with the true-twin pairs their deletion would create.
"""

from bisect import bisect_left
from dataclasses import dataclass

from .chordal import Hole, TwoP3, clique_tree, find_2p3_chordal, hitting_clique, peo_or_hole, _hole_is_valid
from .errors import ContractError, InvariantError
from .graphs import Graph, P3Witness, _ball2_mask, _components, _least_twin_pair, bits, induced


@dataclass(frozen=True, slots=True)
class GoodCertificate:
    """An induced subgraph (as host-graph indices) plus integer costs.

    ``costs[i]`` belongs to ``vertices[i]``; ``kind`` is ``"strong"`` or
    ``"central"``, and ``root`` is set exactly for central certificates.
    """

    vertices: tuple[int, ...]
    costs: tuple[int, ...]
    kind: str
    root: int | None = None

    def __post_init__(self):
        if self.kind not in ("strong", "central"):
            raise ContractError(f"unknown certificate kind {self.kind!r}")
        if (self.root is None) != (self.kind == "strong"):
            raise ContractError("root must be set exactly for central certificates")
        if len(self.vertices) != len(self.costs):
            raise ContractError("vertices and costs must align")

    def total(self) -> int:
        return sum(self.costs)

    def cost_map(self) -> dict[int, int]:
        return dict(zip(self.vertices, self.costs))


@dataclass(frozen=True, slots=True)
class PeelStep:
    """One peeling move: a distance-2 vertex plus the twin matching it forced.

    ``pairs`` lists the matched edges inside N[v0] whose only distinguisher
    was the removed vertex, as ``(kept, deleted)``; ``kept_vertices`` maps
    each index of the peeled graph back to the pre-peel graph.
    """

    removed: int
    pairs: tuple[tuple[int, int], ...]
    kept_vertices: tuple[int, ...]

    def pre_peel_size(self) -> int:
        return len(self.kept_vertices) + len(self.pairs) + 1


# ---------------------------------------------------------------------------
# strong certificates
# ---------------------------------------------------------------------------


def wheel_certificate(host: Graph, hole: Hole, v0: int) -> GoodCertificate:
    """Strong certificate on a wheel: the hole plus ``v0`` as its center.

    On a k-vertex wheel, cost k-5 on the center and 1 on the rim totals
    2(k-3), and every hitting set costs at least k-3.
    """
    cycle = hole.cycle
    k = len(cycle) + 1
    if k < 5:
        raise ContractError("wheel certificate needs at least 5 vertices")
    if not _hole_is_valid(host.adj, cycle):
        raise ContractError("not an induced cycle in the host graph")
    rim = sum(1 << v for v in cycle)
    if rim & host.adj[v0] != rim or rim >> v0 & 1:
        raise ContractError("hole must lie inside the neighborhood of the center")
    verts = tuple(sorted((v0, *cycle)))
    costs = tuple(k - 5 if v == v0 else 1 for v in verts)
    return GoodCertificate(verts, costs, "strong")


def two_p3_certificate(host: Graph, six: TwoP3, v0: int) -> GoodCertificate:
    """Strong certificate on two anticomplete P3s plus ``v0`` as an apex.

    Cost 2 on the apex and 1 on the six path vertices totals 8, while
    every hitting set of the 7-vertex subgraph costs at least 4.
    """
    t1, t2 = six.first.triple(), six.second.triple()
    if len(set(t1 + t2)) != 6:
        raise ContractError("the two P3s must be vertex-disjoint")
    for p3 in (six.first, six.second):
        a, b = p3.ends
        if not (host.has_edge(p3.mid, a) and host.has_edge(p3.mid, b)) or host.has_edge(a, b):
            raise ContractError("witness does not induce a P3 in the host graph")
    if any(host.has_edge(u, v) for u in t1 for v in t2):
        raise ContractError("the two P3s must be anticomplete")
    mask = sum(1 << v for v in t1 + t2)
    if mask & host.adj[v0] != mask or mask >> v0 & 1:
        raise ContractError("both P3s must lie inside the neighborhood of the apex")
    verts = tuple(sorted((v0, *t1, *t2)))
    costs = tuple(2 if v == v0 else 1 for v in verts)
    return GoodCertificate(verts, costs, "strong")


# ---------------------------------------------------------------------------
# the twin-free base case
# ---------------------------------------------------------------------------


def base_case_certificate(h: Graph, v0: int) -> GoodCertificate:
    """Central certificate for a twin-free ``h`` with universal root ``v0``.

    Requires ``h - v0`` chordal and free of two anticomplete P3s.  A
    hitting clique K0 of ``h - v0`` is found; for each remaining cluster,
    the K0-versus-cluster adjacency submatrix is sorted into staircase
    shape, and each vertex v of K0 receives a stable set S_v = {v} plus
    the first non-neighbor of v in every cluster not complete to v.  The
    costs count stable-set memberships, and the root cost is pinned to
    (total of the others) - 2|K0| + 1.
    """
    if not (0 <= v0 < h.n):
        raise ContractError(f"root {v0} out of range")
    pair = _least_twin_pair(h.adj, h.full)
    if pair is not None:
        raise ContractError(f"graph has true twins {pair}")
    if h.adj[v0] != h.full ^ (1 << v0):
        raise ContractError(f"root {v0} is not universal")

    rest = frozenset(v for v in range(h.n) if v != v0)
    sub, vmap = induced(h, rest)
    if sub.n == 0:
        return GoodCertificate((v0,), (1,), "central", root=v0)

    order = peo_or_hole(sub)
    if isinstance(order, Hole):
        raise ContractError("neighborhood of the root is not chordal")
    tree = clique_tree(sub, order)
    six = find_2p3_chordal(sub, tree)
    if six is not None:
        raise ContractError("neighborhood of the root contains two anticomplete P3s")
    k0 = sorted(hitting_clique(sub, tree))
    k0_mask = sum(1 << v for v in k0)

    adj = sub.adj
    clusters = _components(adj, sub.full & ~k0_mask)
    stable = {v: {v} for v in k0}
    for cmask in clusters:
        cluster = list(bits(cmask))
        col_order = sorted(cluster, key=lambda u: (-(adj[u] & k0_mask).bit_count(), u))
        for v in k0:
            if adj[v] & cmask == cmask:
                continue  # cluster complete to v
            first_zero = next(u for u in col_order if not adj[v] >> u & 1)
            stable[v].add(first_zero)

    _check_stable_family(sub, k0, stable)

    local = [0] * sub.n
    for v in k0:
        for u in stable[v]:
            local[u] += 1
    root_cost = sum(local) - 2 * len(k0) + 1
    if root_cost < 1 or any(c < 1 for c in local):
        raise InvariantError("base-case costs fell below 1")

    costs = [0] * h.n
    costs[v0] = root_cost
    for i, hv in enumerate(vmap):
        costs[hv] = local[i]
    return GoodCertificate(tuple(range(h.n)), tuple(costs), "central", root=v0)


def _check_stable_family(sub: Graph, k0, stable) -> None:
    """Coverage, size, and pairwise-P3 checks for the stable-set family."""
    covered = set()
    for v in k0:
        sv = stable[v]
        if v not in sv or len(sv) < 2:
            raise InvariantError(f"stable set of {v} too small")
        for a in sv:
            for b in sv:
                if a < b and sub.has_edge(a, b):
                    raise InvariantError(f"set of {v} is not stable")
        covered |= sv
    if covered != set(range(sub.n)):
        raise InvariantError("stable sets do not cover the neighborhood")
    for i, v in enumerate(k0):
        for w in k0[i + 1 :]:
            union = sorted(stable[v] | stable[w])
            if not _has_p3(sub, union):
                raise InvariantError(f"no P3 in the union of sets {v} and {w}")


def _has_p3(g: Graph, verts) -> bool:
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            b = verts[j]
            for t in range(j + 1, len(verts)):
                c = verts[t]
                if g.has_edge(a, b) + g.has_edge(a, c) + g.has_edge(b, c) == 2:
                    return True
    return False


# ---------------------------------------------------------------------------
# twin peeling
# ---------------------------------------------------------------------------


def peel_vertex(h: Graph, v0: int, v: int) -> tuple[Graph, PeelStep]:
    """Delete a distance-2 vertex plus one endpoint of each twin pair it hides.

    The matched edges are exactly those inside N[v0] whose only
    distinguisher in ``h`` is ``v``; deleting ``v`` would make them true
    twins, so one endpoint of each (never ``v0``, else the higher index)
    is deleted alongside ``v``.  The result keeps every remaining vertex
    within distance 2 of ``v0``.
    """
    adj = h.adj
    if _ball2_mask(adj, h.full, v0) != h.full:
        raise ContractError("graph has a vertex at distance more than 2 from the root")
    n2 = h.full & ~h.closed(v0)
    if not n2 >> v & 1:
        raise ContractError(f"vertex {v} is not at distance exactly 2 from {v0}")

    closed0 = h.closed(v0)
    vb = 1 << v
    matched = []
    touched = 0
    for u in bits(closed0):
        row_u = adj[u]
        for w in bits(row_u & closed0 & ~((1 << (u + 1)) - 1)):
            diff = (adj[u] ^ adj[w]) & ~(1 << u) & ~(1 << w)
            if diff == vb:
                if (1 << u | 1 << w) & touched:
                    raise InvariantError(
                        "three mutually equivalent vertices: twin pairs do not form a matching"
                    )
                touched |= 1 << u | 1 << w
                matched.append((u, w))
            elif diff == 0:
                raise InvariantError(f"undistinguished true twins {u}, {w} inside N[v0]")

    pairs = []
    drop = vb
    for u, w in matched:
        kept, deleted = (u, w) if w != v0 else (w, u)
        if deleted == v0:  # pragma: no cover - guarded above
            raise InvariantError("attempted to delete the root")
        pairs.append((kept, deleted))
        drop |= 1 << deleted
    keep = frozenset(bits(h.full & ~drop))
    sub, vmap = induced(h, keep)
    step = PeelStep(v, tuple(pairs), vmap)
    new_v0 = bisect_left(vmap, v0)
    assert _ball2_mask(sub.adj, sub.full, new_v0) == sub.full
    return sub, step


def lift_cost(step: PeelStep, inner_costs) -> tuple[int, ...]:
    """Pull costs on the peeled graph back to the pre-peel graph.

    Each deleted twin copies its kept partner's cost; the removed
    distance-2 vertex gets the sum of the kept partners' costs.
    """
    if len(inner_costs) != len(step.kept_vertices):
        raise ContractError("cost vector does not match the peeled graph")
    pos = {hv: i for i, hv in enumerate(step.kept_vertices)}
    out = [0] * step.pre_peel_size()
    for i, hv in enumerate(step.kept_vertices):
        out[hv] = inner_costs[i]
    total = 0
    for kept, deleted in step.pairs:
        ck = inner_costs[pos[kept]]
        out[deleted] = ck
        total += ck
    out[step.removed] = total
    return tuple(out)


# ---------------------------------------------------------------------------
# the orchestrator
# ---------------------------------------------------------------------------


def find_2good(g: Graph, v0: int) -> GoodCertificate:
    """A 2-good certificate rooted at ``v0`` for a twin-free host ``g``.

    If the neighborhood of ``v0`` has a hole, a strong wheel certificate;
    if it has two anticomplete P3s, a strong apex certificate; otherwise a
    central certificate on the radius-2 ball, peeling distance-2 vertices
    in descending index until the base case applies and lifting the costs
    back through the peel stack.
    """
    if not (0 <= v0 < g.n):
        raise ContractError(f"vertex {v0} out of range")
    pair = _least_twin_pair(g.adj, g.full)
    if pair is not None:
        raise ContractError(f"graph has true twins {pair}")

    nbhd = frozenset(bits(g.adj[v0]))
    sub, vmap = induced(g, nbhd)
    order = peo_or_hole(sub)
    if isinstance(order, Hole):
        mapped = tuple(vmap[x] for x in order.cycle)
        return wheel_certificate(g, Hole(mapped), v0)
    tree = clique_tree(sub, order)
    six = find_2p3_chordal(sub, tree)
    if six is not None:
        mapped = TwoP3(_map_p3(six.first, vmap), _map_p3(six.second, vmap))
        return two_p3_certificate(g, mapped, v0)

    h, ballmap = induced(g, frozenset(bits(_ball2_mask(g.adj, g.full, v0))))
    cur_v0 = bisect_left(ballmap, v0)
    steps: list[PeelStep] = []
    while True:
        n2 = h.full & ~h.closed(cur_v0)
        if not n2:
            break
        v = n2.bit_length() - 1
        h, step = peel_vertex(h, cur_v0, v)
        steps.append(step)
        cur_v0 = bisect_left(step.kept_vertices, cur_v0)

    base = base_case_certificate(h, cur_v0)
    costs = list(base.costs)
    for step in reversed(steps):
        costs = list(lift_cost(step, costs))
    return GoodCertificate(ballmap, tuple(costs), "central", root=v0)


def _map_p3(w: P3Witness, vmap) -> P3Witness:
    return P3Witness(vmap[w.mid], (vmap[w.ends[0]], vmap[w.ends[1]]))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_certificate(host: Graph, cert: GoodCertificate, oracle) -> bool:
    """Check every certificate invariant, using ``oracle`` for local optima.

    ``oracle(graph, costs)`` must return the exact minimum hitting-set
    cost; subgraphs larger than 20 vertices are refused.
    """
    verts = cert.vertices
    if len(verts) > 20:
        raise ContractError("refusing to verify: subgraph too large for the exact oracle")
    if len(set(verts)) != len(verts) or list(verts) != sorted(verts):
        return False
    if any(not 0 <= v < host.n for v in verts):
        return False
    if any(not isinstance(c, int) or c < 0 for c in cert.costs):
        return False
    if not any(cert.costs):
        return False

    sub, vmap = induced(host, verts)
    local = [0] * sub.n
    lookup = cert.cost_map()
    for i, hv in enumerate(vmap):
        local[i] = lookup[hv]
    opt = oracle(sub, local)
    total = cert.total()

    if cert.kind == "strong":
        return total <= 2 * opt

    root = cert.root
    if root not in lookup:
        return False
    vset = set(verts)
    closed = set(bits(host.closed(root)))
    if not closed <= vset:
        return False
    if any(lookup[u] < 1 for u in closed):
        return False
    return total <= 2 * opt + 1
