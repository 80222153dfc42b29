"""Bit-row graph primitives that every other module builds on.

Vertices are dense 0-based indices.  Adjacency is stored as one Python int
per vertex, with bit ``u`` of ``adj[v]`` set iff ``uv`` is an edge, so row
comparisons and neighborhood intersections are single big-int operations.
Graphs are immutable; anything that removes vertices builds a new induced
subgraph together with an index map, which keeps certificate objects
pointing at stable vertex ids.

All tie-breaking rules (lexicographically least P3, least twin pair, ...)
refer to these dense indices so that repeated runs are reproducible.
"""

from dataclasses import dataclass

from .errors import ContractError, GraphParseError


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable undirected simple graph on vertices ``0 .. n-1``."""

    __slots__ = ("n", "adj", "full")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ContractError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ContractError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self.full = (1 << n) - 1

    # -- basic accessors -------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self.adj[v]))

    def closed(self, v: int) -> int:
        """Closed neighborhood N[v] as a bitmask."""
        return self.adj[v] | 1 << v

    def edge_count(self) -> int:
        return sum(self.adj[v].bit_count() for v in range(self.n)) // 2

    def edges(self):
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    # -- dunder plumbing -------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


@dataclass(frozen=True, slots=True)
class P3Witness:
    """An induced path on three vertices: ``ends[0] - mid - ends[1]``."""

    mid: int
    ends: tuple[int, int]

    def triple(self) -> tuple[int, int, int]:
        return tuple(sorted((self.mid, *self.ends)))


@dataclass(frozen=True, slots=True)
class TwinPartition:
    """Partition of the vertices into classes of pairwise true twins.

    Classes are ascending tuples, sorted by their least vertex; two
    vertices share a class iff their closed neighborhoods are equal.
    """

    classes: tuple[tuple[int, ...], ...]

    def nontrivial(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.classes if len(c) > 1)


# ---------------------------------------------------------------------------
# mask-level workhorses (shared by the solver and the certificate builders)
# ---------------------------------------------------------------------------


def _is_cluster(adj, mask: int) -> bool:
    """True iff the subgraph induced by ``mask`` is a disjoint union of cliques."""
    rem = mask
    while rem:
        low = rem & -rem
        v = low.bit_length() - 1
        comp = (adj[v] & mask) | low
        m = comp
        while m:
            c = m & -m
            u = c.bit_length() - 1
            m ^= c
            if ((adj[u] & mask) | c) != comp:
                return False
        rem &= ~comp
    return True


def _find_p3_triple(adj, mask: int):
    """Least induced P3 inside ``mask`` as a sorted triple, or None."""
    if _is_cluster(adj, mask):
        return None
    verts = list(bits(mask))
    k = len(verts)
    for i in range(k):
        a = verts[i]
        ra = adj[a]
        for j in range(i + 1, k):
            b = verts[j]
            rb = adj[b]
            ab = ra >> b & 1
            for t in range(j + 1, k):
                c = verts[t]
                if ab + (ra >> c & 1) + (rb >> c & 1) == 2:
                    return (a, b, c)
    raise AssertionError("non-cluster subgraph without a P3")  # pragma: no cover


def _any_p3_triple(adj, mask: int):
    """Some induced P3 inside ``mask`` (deterministic but not least), or None.

    Scans vertices ascending as the middle; the first neighbor pair with a
    missing edge wins.  O(n * degree) bit operations.
    """
    rem = mask
    while rem:
        low = rem & -rem
        rem ^= low
        v = low.bit_length() - 1
        nb = adj[v] & mask
        m = nb
        while m:
            ub = m & -m
            m ^= ub
            u = ub.bit_length() - 1
            miss = nb & ~adj[u] & ~ub
            if miss:
                w = (miss & -miss).bit_length() - 1
                return (v, u, w)
    return None


def _find_p3(adj, mask: int):
    """Least induced P3 inside ``mask`` as a witness object, or None."""
    triple = _find_p3_triple(adj, mask)
    if triple is None:
        return None
    a, b, c = triple
    ab, ac, bc = adj[a] >> b & 1, adj[a] >> c & 1, adj[b] >> c & 1
    if not ab:
        return P3Witness(c, (a, b))
    if not ac:
        return P3Witness(b, (a, c))
    return P3Witness(a, (b, c))


def _components(adj, mask: int) -> list[int]:
    """Connected components of the induced subgraph, as masks, by least vertex."""
    comps = []
    rem = mask
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rem &= ~comp
    return comps


def _twin_class_lists(adj, mask: int) -> list[list[int]]:
    """Classes of equal closed-neighborhood rows inside ``mask``.

    Recursive column splitting: every class is split on each vertex column
    in turn, which costs O(n) row-cell operations per column.
    """
    verts = list(bits(mask))
    classes = [verts]
    for j in verts:
        jb = 1 << j
        nxt = []
        busy = False
        for cls in classes:
            if len(cls) == 1:
                nxt.append(cls)
                continue
            busy = True
            ones = []
            zeros = []
            for v in cls:
                if ((adj[v] & mask) | 1 << v) & jb:
                    ones.append(v)
                else:
                    zeros.append(v)
            if zeros:
                nxt.append(zeros)
            if ones:
                nxt.append(ones)
        classes = nxt
        if not busy:
            break
    classes.sort(key=lambda c: c[0])
    return classes


def _least_twin_pair(adj, mask: int):
    """Least-index pair of true twins inside ``mask``, or None."""
    for cls in _twin_class_lists(adj, mask):
        if len(cls) > 1:
            return cls[0], cls[1]
    return None


def _ball2_mask(adj, mask: int, v0: int) -> int:
    out = (adj[v0] & mask) | 1 << v0
    for u in bits(adj[v0] & mask):
        out |= adj[u] & mask
    return out


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def parse_graph(text) -> Graph:
    """Parse the edge-list wire format: ``"n m"`` then m lines ``"u v"``.

    Duplicate edges are ignored.  Malformed headers, out-of-range vertex
    indices and self-loops raise :class:`GraphParseError` naming the
    offending line.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    body = [(i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()]
    if not body:
        raise GraphParseError("line 1: missing header 'n m'")
    lineno, header = body[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphParseError(f"line {lineno}: header must be 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphParseError(f"line {lineno}: header must be two integers") from None
    if n < 0 or m < 0:
        raise GraphParseError(f"line {lineno}: negative count in header")
    if len(body) - 1 != m:
        raise GraphParseError(
            f"line {lineno}: header promises {m} edges, file has {len(body) - 1}"
        )
    edges = []
    for lineno, line in body[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: edge must be 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: edge must be two integers") from None
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: vertex index out of range (n={n})")
        edges.append((u, v))
    return Graph(n, edges)


def graph_to_text(g: Graph) -> str:
    """Serialize back to the edge-list wire format (edges sorted, u < v)."""
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def find_p3(g: Graph) -> P3Witness | None:
    """Least induced P3 of ``g`` (by sorted vertex triple), or None.

    Returns None exactly when ``g`` is a cluster graph.
    """
    return _find_p3(g.adj, g.full)


def is_cluster(g: Graph) -> bool:
    return _is_cluster(g.adj, g.full)


def twin_classes(g: Graph) -> TwinPartition:
    """Group vertices by equal closed neighborhoods (true-twin classes)."""
    return TwinPartition(tuple(tuple(c) for c in _twin_class_lists(g.adj, g.full)))


def ball2(g: Graph, v0: int) -> frozenset[int]:
    """All vertices at distance at most 2 from ``v0``, including ``v0``."""
    if not 0 <= v0 < g.n:
        raise ContractError(f"vertex {v0} out of range")
    return frozenset(bits(_ball2_mask(g.adj, g.full, v0)))


def induced(g: Graph, s) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by vertex set ``s`` plus the new->old index map.

    The map is ascending, so relative vertex order is preserved.
    """
    vmap = tuple(sorted(s))
    if vmap and not (0 <= vmap[0] and vmap[-1] < g.n):
        raise ContractError("induced(): vertex set not within the graph")
    pos = {v: i for i, v in enumerate(vmap)}
    adj = g.adj
    edges = []
    for i, v in enumerate(vmap):
        row = adj[v]
        for j in range(i + 1, len(vmap)):
            if row >> vmap[j] & 1:
                edges.append((i, j))
    return Graph(len(vmap), edges), vmap


def distinguishers(g: Graph, u: int, v: int) -> frozenset[int]:
    """Vertices adjacent to exactly one endpoint of the edge ``uv``.

    Empty iff u and v are true twins.  Requires ``uv`` to be an edge.
    """
    if not g.has_edge(u, v):
        raise ContractError(f"distinguishers: ({u}, {v}) is not an edge")
    diff = (g.adj[u] ^ g.adj[v]) & ~(1 << u) & ~(1 << v)
    return frozenset(bits(diff))
