"""Cluster vertex deletion toolkit.

A library and CLI for the minimum-cost cluster vertex deletion problem:
a certified 2-approximation built on the local-ratio technique, exact
brute-force oracles for verification, chordal-graph machinery (clique
trees, hitting cliques), and an exact-rational LP lab for the P3-covering
relaxation and its one-round Sherali-Adams lift.
"""

from .certificates import GoodCertificate, find_2good, verify_certificate
from .errors import ContractError, GraphParseError, InvariantError
from .graphs import (
    Graph,
    P3Witness,
    TwinPartition,
    ball2,
    distinguishers,
    find_p3,
    graph_to_text,
    induced,
    is_cluster,
    parse_graph,
    twin_classes,
)
from .localratio import HittingSet, cluster_vd_apx, cluster_vd_exact, validate
from .sa import build_sa, integrality_gap, lb_point, lp_min

__all__ = [
    "ContractError",
    "GraphParseError",
    "InvariantError",
    "Graph",
    "P3Witness",
    "TwinPartition",
    "GoodCertificate",
    "HittingSet",
    "ball2",
    "build_sa",
    "cluster_vd_apx",
    "cluster_vd_exact",
    "distinguishers",
    "find_2good",
    "find_p3",
    "graph_to_text",
    "induced",
    "integrality_gap",
    "is_cluster",
    "lb_point",
    "lp_min",
    "parse_graph",
    "twin_classes",
    "validate",
    "verify_certificate",
]
