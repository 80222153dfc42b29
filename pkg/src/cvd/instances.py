"""Named and random test instances, plus the cost-file format.

Random graphs use a seeded Mersenne Twister and decide each pair with an
exact integer comparison against the rational edge probability, so a
fixed seed reproduces identical bytes on every platform.
"""

import random
from fractions import Fraction

from .errors import ContractError, GraphParseError
from .graphs import Graph


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ContractError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """Star on ``n`` vertices: center 0 plus ``n - 1`` leaves."""
    if n < 1:
        raise ContractError("a star needs at least 1 vertex")
    return Graph(n, [(0, i) for i in range(1, n)])


def wheel(k: int) -> Graph:
    """Wheel on ``k`` vertices: center 0 joined to a (k-1)-cycle."""
    if k < 4:
        raise ContractError("a wheel needs at least 4 vertices")
    edges = [(0, i) for i in range(1, k)]
    edges += [(i, i + 1) for i in range(1, k - 1)]
    edges.append((1, k - 1))
    return Graph(k, edges)


def two_p3_apex() -> Graph:
    """Two anticomplete paths 0-1-2 and 3-4-5 plus the apex 6."""
    edges = [(0, 1), (1, 2), (3, 4), (4, 5)] + [(6, i) for i in range(6)]
    return Graph(7, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def figure3() -> Graph:
    """8-vertex reference instance: K4 plus three pendants plus an apex.

    Vertex 0 is universal; {1,2,3,4} induce a K4 that is a hitting clique
    of the rest; 5, 6, 7 are pendants of 2, 1, 3 respectively.
    """
    edges = [(0, i) for i in range(1, 8)]
    edges += [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    edges += [(2, 5), (1, 6), (3, 7)]
    return Graph(8, edges)


def figure4() -> Graph:
    """6-vertex reference instance for twin peeling.

    Deleting the distance-2 vertex 5 from the ball around vertex 0 would
    create the true-twin pairs (0,3) and (1,2); peeling reduces the graph
    to the path 1-0-4.
    """
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 3), (3, 4), (1, 5), (3, 5)]
    return Graph(6, edges)


def gnp(n: int, p: Fraction, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with exact rational threshold, seeded."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ContractError("edge probability must be in [0, 1]")
    rng = random.Random(seed)
    scale = 1 << 32
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.getrandbits(32) * p.denominator < p.numerator * scale:
                edges.append((u, v))
    return Graph(n, edges)


NAMED = {
    "path": lambda n=5, **_: path(n),
    "cycle": lambda n=5, **_: cycle(n),
    "wheel": lambda n=6, **_: wheel(n),
    "star": lambda n=5, **_: star(n),
    "2p3apex": lambda **_: two_p3_apex(),
    "petersen": lambda **_: petersen(),
    "figure3": lambda **_: figure3(),
    "figure4": lambda **_: figure4(),
}


def parse_costs(text: str, n: int) -> list[Fraction]:
    """Parse a cost file: lines ``"v p/q"`` or ``"v k"``; default cost 1.

    Costs must be nonnegative; unknown vertices or negative values raise
    :class:`GraphParseError` naming the line.
    """
    costs = [Fraction(1)] * n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: cost line must be 'v value'")
        try:
            v = int(parts[0])
            value = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise GraphParseError(f"line {lineno}: malformed cost entry") from None
        if not 0 <= v < n:
            raise GraphParseError(f"line {lineno}: vertex {v} out of range (n={n})")
        if value < 0:
            raise GraphParseError(f"line {lineno}: negative cost for vertex {v}")
        costs[v] = value
    return costs
