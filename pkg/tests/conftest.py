"""Shared helpers: labeled-graph enumeration and independent brute-force oracles.

Every oracle here is deliberately naive (subset or triple enumeration) so
the library code is checked against something that cannot share its bugs.
"""

from itertools import combinations

from cvd.graphs import Graph

PAIRS = {n: list(combinations(range(n), 2)) for n in range(15)}


def graph_from_code(n: int, code: int) -> Graph:
    pairs = PAIRS[n]
    return Graph(n, [pairs[i] for i in range(len(pairs)) if code >> i & 1])


def all_graphs(n: int):
    """Every labeled graph on n vertices."""
    for code in range(1 << len(PAIRS[n])):
        yield graph_from_code(n, code)


def induces_p3(g: Graph, a, b, c) -> bool:
    return g.has_edge(a, b) + g.has_edge(a, c) + g.has_edge(b, c) == 2


def brute_least_p3(g: Graph):
    for triple in combinations(range(g.n), 3):
        if induces_p3(g, *triple):
            return triple
    return None


def brute_is_cluster(g: Graph) -> bool:
    return brute_least_p3(g) is None


def brute_has_hole(g: Graph) -> bool:
    """Does some vertex subset induce a cycle of length >= 4?"""
    for k in range(4, g.n + 1):
        for sub in combinations(range(g.n), k):
            degs = [sum(g.has_edge(u, v) for v in sub if v != u) for u in sub]
            if any(d != 2 for d in degs):
                continue
            edge_count = sum(degs) // 2
            if edge_count != k:
                continue
            # all degrees 2 and k edges: a disjoint union of cycles; connected?
            seen = {sub[0]}
            stack = [sub[0]]
            while stack:
                x = stack.pop()
                for y in sub:
                    if y not in seen and g.has_edge(x, y):
                        seen.add(y)
                        stack.append(y)
            if len(seen) == k:
                return True
    return False


def brute_has_2p3(g: Graph) -> bool:
    for six in combinations(range(g.n), 6):
        for t1 in combinations(six, 3):
            t2 = tuple(v for v in six if v not in t1)
            if t1[0] != six[0]:
                break  # fix the least vertex in the first triple
            if not (induces_p3(g, *t1) and induces_p3(g, *t2)):
                continue
            if all(not g.has_edge(u, v) for u in t1 for v in t2):
                return True
    return False


def brute_max_weight_clique(g: Graph, costs):
    best = 0
    for k in range(g.n + 1):
        for sub in combinations(range(g.n), k):
            if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
                best = max(best, sum(costs[v] for v in sub))
    return best


def brute_opt(g: Graph, costs):
    """Minimum-cost hitting set by raw subset enumeration (no pruning)."""
    best = None
    for k in range(g.n + 1):
        for sub in combinations(range(g.n), k):
            rest = [v for v in range(g.n) if v not in sub]
            if all(
                not induces_p3(g, *t) for t in combinations(rest, 3)
            ):
                cost = sum(costs[v] for v in sub)
                if best is None or cost < best:
                    best = cost
    return best if best is not None else 0


def naive_twin_partition(g: Graph):
    """O(n^3) pairwise closed-neighborhood comparison."""
    classes = []
    for v in range(g.n):
        for cls in classes:
            u = cls[0]
            if g.closed(u) == g.closed(v):
                cls.append(v)
                break
        else:
            classes.append([v])
    return sorted(tuple(c) for c in classes)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in range(g.n):
            if y not in seen and g.has_edge(x, y):
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n


def is_twin_free(g: Graph) -> bool:
    return all(
        g.closed(u) != g.closed(v) for u, v in combinations(range(g.n), 2)
    )
