from fractions import Fraction

import pytest

from cvd.errors import ContractError, GraphParseError
from cvd.graphs import is_cluster, parse_graph, graph_to_text, twin_classes
from cvd.instances import (
    cycle,
    figure3,
    figure4,
    gnp,
    parse_costs,
    path,
    petersen,
    star,
    two_p3_apex,
    wheel,
)
from cvd.sa import _girth_bfs


def test_figure3_shape():
    g = figure3()
    assert g.n == 8 and g.edge_count() == 16
    assert g.adj[0] == 0b11111110  # apex is universal
    # pendants hang off 2, 1, 3
    assert g.neighbors(5) == (0, 2) and g.neighbors(6) == (0, 1) and g.neighbors(7) == (0, 3)
    assert twin_classes(g).nontrivial() == ()


def test_figure4_shape():
    g = figure4()
    assert g.n == 6 and g.edge_count() == 10
    assert g.neighbors(5) == (1, 3)
    assert twin_classes(g).nontrivial() == ()


def test_petersen_shape():
    g = petersen()
    assert g.n == 10 and g.edge_count() == 15
    assert all(g.degree(v) == 3 for v in range(10))
    assert _girth_bfs(g)[0] == 5


def test_wheel_star_path_cycle():
    assert wheel(6).degree(0) == 5 and wheel(6).edge_count() == 10
    assert star(5).degree(0) == 4
    assert path(4).edge_count() == 3
    assert cycle(4).edge_count() == 4
    assert is_cluster(path(2))
    with pytest.raises(ContractError):
        cycle(2)


def test_two_p3_apex_shape():
    g = two_p3_apex()
    assert g.n == 7 and g.degree(6) == 6
    assert not g.has_edge(0, 3) and not g.has_edge(2, 5)


def test_gnp_deterministic_and_exact_threshold():
    a = gnp(12, Fraction(1, 3), seed=9)
    b = gnp(12, Fraction(1, 3), seed=9)
    assert a == b
    assert gnp(12, Fraction(1, 3), seed=10) != a
    assert gnp(5, Fraction(0), seed=1).edge_count() == 0
    assert gnp(5, Fraction(1), seed=1).edge_count() == 10


def test_gnp_round_trip():
    g = gnp(9, Fraction(2, 5), seed=3)
    assert parse_graph(graph_to_text(g)) == g


def test_parse_costs_defaults_and_fractions():
    costs = parse_costs("0 3\n2 1/2\n", 4)
    assert costs == [3, 1, Fraction(1, 2), 1]


def test_parse_costs_rejects_negative():
    with pytest.raises(GraphParseError, match="line 1"):
        parse_costs("0 -2", 3)


def test_parse_costs_rejects_unknown_vertex():
    with pytest.raises(GraphParseError, match="line 2"):
        parse_costs("0 1\n7 2", 3)
