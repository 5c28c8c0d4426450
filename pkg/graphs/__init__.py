"""
Graph core: family oracles, {p,q} tilings and materialized balls
"""
from .ball import Ball, materialize_ball, rerun_center_bfs, symmetry_audit, transitivity_spot_check
from .errors import LabError
from .oracles import (
    EdgeListGraph,
    FreeGroup,
    GraphOracle,
    Heisenberg,
    RegularTree,
    ZLattice,
    parse_family,
    random_vertex,
)
from .tiling import HyperbolicTiling, tiling_layer_extend


def neighbors(oracle: GraphOracle, v):
    """Sorted neighbor list of v under the oracle."""
    return oracle.neighbors(v)


__all__ = [
    "Ball",
    "EdgeListGraph",
    "FreeGroup",
    "GraphOracle",
    "Heisenberg",
    "HyperbolicTiling",
    "LabError",
    "RegularTree",
    "ZLattice",
    "materialize_ball",
    "neighbors",
    "parse_family",
    "random_vertex",
    "rerun_center_bfs",
    "symmetry_audit",
    "tiling_layer_extend",
    "transitivity_spot_check",
]
