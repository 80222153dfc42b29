"""Chordal-graph machinery: recognition with hole certificates, clique
trees, 2P3 detection, hitting cliques, and maximum-weight cliques.

Chordality is tested by verifying a maximum-cardinality-search order; when
verification fails, a hole is extracted by a shortest-path search that
avoids the common neighborhood of the failing triple.
"""

from dataclasses import dataclass

from .errors import ContractError, InvariantError
from .graphs import Graph, P3Witness, _components, _find_p3, _is_cluster, bits


@dataclass(frozen=True, slots=True)
class Hole:
    """An induced cycle of length at least 4, canonically rotated.

    ``cycle[0]`` is the least vertex and ``cycle[1]`` the smaller of its
    two cycle neighbors.
    """

    cycle: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class TwoP3:
    """Two vertex-disjoint, anticomplete induced P3s, ordered by triple."""

    first: P3Witness
    second: P3Witness

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.first.triple() + self.second.triple()))


@dataclass(frozen=True, slots=True)
class CliqueTree:
    """The maximal cliques of a chordal graph joined into a forest.

    ``nodes`` lists every maximal clique exactly once (ascending tuples,
    sorted lexicographically); ``edges`` are node-index pairs forming one
    tree per connected component, such that for each vertex the nodes
    containing it span a connected subtree.
    """

    nodes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]


# ---------------------------------------------------------------------------
# maximum cardinality search + verification
# ---------------------------------------------------------------------------


def _mcs_elimination(adj, mask: int) -> list[int]:
    """Elimination order from maximum cardinality search.

    MCS visits an unvisited vertex with the most visited neighbors (ties:
    least index); the elimination order is the reverse of the visit order.
    For a chordal graph this is always a perfect elimination order.
    """
    visit = []
    weight = {v: 0 for v in bits(mask)}
    unseen = mask
    while unseen:
        v = max(bits(unseen), key=lambda u: (weight[u], -u))
        visit.append(v)
        unseen ^= 1 << v
        for u in bits(adj[v] & unseen):
            weight[u] += 1
    visit.reverse()
    return visit


def _peo_violation(adj, mask, order):
    """None if ``order`` is a perfect elimination order, else a bad triple.

    A triple (v, p, w) is bad when p and w both follow v in the order, are
    neighbors of v, p is the earliest such neighbor, and pw is a non-edge.
    """
    pos = {v: i for i, v in enumerate(order)}
    remaining = mask
    for v in order:
        remaining ^= 1 << v
        nbrs = adj[v] & remaining
        if not nbrs:
            continue
        p = min(bits(nbrs), key=lambda u: pos[u])
        rest = nbrs & ~(1 << p)
        missing = rest & ~adj[p]
        if missing:
            w = (missing & -missing).bit_length() - 1
            return v, p, w
    return None


def _bfs_path(adj, mask, src, dst):
    """Shortest src->dst path inside ``mask`` (deterministic), or None."""
    if src == dst:
        return [src]
    parent = {src: None}
    frontier = [src]
    seen = 1 << src
    while frontier:
        nxt = []
        for v in frontier:
            for u in bits(adj[v] & mask & ~seen):
                seen |= 1 << u
                parent[u] = v
                if u == dst:
                    path = [u]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                nxt.append(u)
        frontier = nxt
    return None


def _canonical_cycle(cycle):
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    if rot[1] > rot[-1]:
        rot = rot[:1] + rot[1:][::-1]
    return tuple(rot)


def _hole_is_valid(adj, cycle) -> bool:
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = bool(adj[cycle[i]] >> cycle[j] & 1)
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


def _hole_through(adj, mask, v, p, w):
    """Hole through v using non-adjacent neighbors p, w of v, if any.

    Looks for a p-w path avoiding N[v] (except at the endpoints); together
    with v this closes an induced cycle of length >= 4.
    """
    avoid = (adj[v] | 1 << v) & ~(1 << p) & ~(1 << w)
    path = _bfs_path(adj, mask & ~avoid, p, w)
    if path is None:
        return None
    return _canonical_cycle([v] + path)


def _find_hole(adj, mask, triple=None):
    """Some hole of the (non-chordal) subgraph induced by ``mask``."""
    if triple is not None:
        cycle = _hole_through(adj, mask, *triple)
        if cycle is not None:
            return cycle
    # Exhaustive fallback: some vertex of some hole, with its two cycle
    # neighbors, always yields a path avoiding its other neighbors.
    for v in bits(mask):
        nbrs = list(bits(adj[v] & mask))
        for i, p in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                if adj[p] >> w & 1:
                    continue
                cycle = _hole_through(adj, mask, v, p, w)
                if cycle is not None:
                    return cycle
    return None


def _peo_or_hole(adj, mask):
    order = _mcs_elimination(adj, mask)
    bad = _peo_violation(adj, mask, order)
    if bad is None:
        return order, None
    cycle = _find_hole(adj, mask, bad)
    if cycle is None or not _hole_is_valid(adj, cycle):
        raise InvariantError("failed to extract a hole from a non-chordal graph")
    return None, cycle


def peo_or_hole(g: Graph):
    """A verified perfect elimination order of ``g``, or a :class:`Hole`.

    The returned order has every vertex's later neighbors forming a
    clique; a hole is returned exactly when ``g`` is not chordal.
    """
    order, cycle = _peo_or_hole(g.adj, g.full)
    if cycle is not None:
        return Hole(cycle)
    return tuple(order)


# ---------------------------------------------------------------------------
# clique trees
# ---------------------------------------------------------------------------


def _peo_clique_masks(adj, mask, order) -> list[int]:
    """Maximal cliques of a chordal subgraph, from an elimination order."""
    remaining = mask
    cands = []
    for v in order:
        remaining ^= 1 << v
        cands.append((adj[v] & remaining) | 1 << v)
    cands = sorted(set(cands))
    out = []
    for c in cands:
        if not any(c != d and c & d == c for d in cands):
            out.append(c)
    return out


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _clique_forest(adj, mask, clique_masks):
    """Maximum-weight spanning forest of the clique intersection graph.

    Weight of a pair is the intersection size; only pairs within one
    connected component of the graph are joined, so the result is one tree
    per component and satisfies the induced-subtree property.
    """
    comps = _components(adj, mask)
    comp_of = []
    for cm in clique_masks:
        for ci, comp in enumerate(comps):
            if cm & comp == cm:
                comp_of.append(ci)
                break
        else:  # pragma: no cover - cliques are connected
            raise InvariantError("clique straddles components")
    cand = []
    q = len(clique_masks)
    for i in range(q):
        for j in range(i + 1, q):
            if comp_of[i] != comp_of[j]:
                continue
            w = (clique_masks[i] & clique_masks[j]).bit_count()
            cand.append((-w, i, j))
    cand.sort()
    uf = _UnionFind(q)
    edges = []
    for negw, i, j in cand:
        if uf.union(i, j):
            edges.append((i, j))
    edges.sort()
    return edges


def _sorted_clique_nodes(clique_masks):
    nodes = [tuple(bits(cm)) for cm in clique_masks]
    index = sorted(range(len(nodes)), key=lambda i: nodes[i])
    return [clique_masks[i] for i in index]


def _validate_peo(adj, mask, order):
    if sorted(order) != list(bits(mask)):
        raise ContractError("elimination order must enumerate the vertex set")
    if _peo_violation(adj, mask, list(order)) is not None:
        raise ContractError("not a perfect elimination order of this graph")


def clique_tree(g: Graph, order) -> CliqueTree:
    """Clique tree (forest) of chordal ``g`` from elimination order ``order``."""
    _validate_peo(g.adj, g.full, order)
    cms = _sorted_clique_nodes(_peo_clique_masks(g.adj, g.full, list(order)))
    edges = _clique_forest(g.adj, g.full, cms)
    return CliqueTree(tuple(tuple(bits(cm)) for cm in cms), tuple(edges))


def _side_masks(clique_masks, edges, q):
    """For each forest edge, the union of cliques on each side of it."""
    nbrs = [[] for _ in range(q)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)

    def subtree_union(start, banned):
        seen = {start, banned}
        stack = [start]
        acc = 0
        while stack:
            x = stack.pop()
            acc |= clique_masks[x]
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return acc

    return {(a, b): (subtree_union(a, b), subtree_union(b, a)) for a, b in edges}


# ---------------------------------------------------------------------------
# 2P3 detection and hitting cliques
# ---------------------------------------------------------------------------


def _tree_masks(tree: CliqueTree):
    return [sum(1 << v for v in node) for node in tree.nodes]


def find_2p3_chordal(g: Graph, tree: CliqueTree) -> TwoP3 | None:
    """Two disjoint anticomplete induced P3s of chordal ``g``, or None.

    Two non-cluster components immediately give one; inside a single
    component, each clique-tree edge is a separator, and a 2P3 exists iff
    both sides minus the separator fail the cluster test for some edge.
    """
    adj = g.adj
    noncluster = [c for c in _components(adj, g.full) if not _is_cluster(adj, c)]
    if len(noncluster) >= 2:
        return _ordered_2p3(adj, noncluster[0], noncluster[1])
    if not noncluster:
        return None
    cms = _tree_masks(tree)
    sides = _side_masks(cms, list(tree.edges), len(cms))
    for a, b in tree.edges:
        sep = cms[a] & cms[b]
        left, right = sides[(a, b)]
        left &= ~sep
        right &= ~sep
        if not _is_cluster(adj, left) and not _is_cluster(adj, right):
            return _ordered_2p3(adj, left, right)
    return None


def _ordered_2p3(adj, mask_a, mask_b) -> TwoP3:
    pa = _find_p3(adj, mask_a)
    pb = _find_p3(adj, mask_b)
    if pa.triple() > pb.triple():
        pa, pb = pb, pa
    return TwoP3(pa, pb)


def hitting_clique(g: Graph, tree: CliqueTree) -> frozenset[int]:
    """A maximal clique whose removal leaves a cluster graph.

    Exists for every chordal 2P3-free graph: orienting each tree edge
    toward its non-cluster side yields a sink whose removal leaves a
    cluster graph.  Scanning nodes in lexicographic order returns the
    least such sink; failure means the graph contained a 2P3.
    """
    if g.n == 0:
        return frozenset()
    adj = g.adj
    for node in tree.nodes:
        cm = sum(1 << v for v in node)
        if _is_cluster(adj, g.full & ~cm):
            assert _is_maximal_clique(adj, g.full, cm)
            return frozenset(node)
    raise ContractError("no hitting clique: the graph contains a 2P3")


def _is_maximal_clique(adj, mask, cm) -> bool:
    common = mask
    for v in bits(cm):
        if ((adj[v] & cm) | (1 << v)) != cm:
            return False
        common &= adj[v]
    return common & ~cm == 0


def max_weight_clique_chordal(g: Graph, order, costs):
    """Maximum-weight clique of chordal ``g`` for nonnegative ``costs``.

    Scans each vertex with its later neighbors along the elimination
    order; every maximal clique arises this way.  Returns (vertices,
    weight); weight ties go to the lexicographically least vertex set.
    """
    _validate_peo(g.adj, g.full, order)
    adj = g.adj
    remaining = g.full
    best_set, best_w = (), 0
    for v in order:
        remaining ^= 1 << v
        cm = (adj[v] & remaining) | 1 << v
        w = sum(costs[u] for u in bits(cm))
        if w > best_w or (w == best_w and (not best_set or tuple(bits(cm)) < best_set)):
            best_set, best_w = tuple(bits(cm)), w
    return frozenset(best_set), best_w
