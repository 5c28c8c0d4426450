"""
Materialized balls: exact finite windows onto an oracle's infinite graph.
"""
import logging
from collections import deque
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from config.settings import get_ball_budget

from .errors import BudgetExceededError, OutOfBallError
from .oracles import GraphOracle, VertexKey, random_vertex

logger = logging.getLogger(__name__)


class Ball:
    """
    Induced subgraph of radius ``radius`` around ``center``.

    Vertices are stored in BFS order, so index 0 is the center and
    ``dist`` is nondecreasing along the index. Adjacency is kept as index
    tuples; ``graph()`` lazily exposes the same structure as a networkx graph
    whose nodes are indices. A completed ball is treated as immutable;
    ``cache`` holds derived data (distance tables) computed by other modules.
    """

    def __init__(
        self,
        oracle: GraphOracle,
        center: VertexKey,
        radius: int,
        vertices: Sequence[VertexKey],
        dist: Sequence[int],
        adjacency: Sequence[Tuple[int, ...]],
    ):
        self.oracle = oracle
        self.center = center
        self.radius = radius
        self.vertices: Tuple[VertexKey, ...] = tuple(vertices)
        self.dist: Tuple[int, ...] = tuple(dist)
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(adjacency)
        self.index: Dict[VertexKey, int] = {v: i for i, v in enumerate(self.vertices)}
        self.cache: Dict[str, Any] = {}
        self._graph: Optional[nx.Graph] = None

    @property
    def family(self) -> str:
        return self.oracle.family

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: VertexKey) -> bool:
        return v in self.index

    def index_of(self, v: VertexKey) -> int:
        try:
            return self.index[v]
        except (KeyError, TypeError):
            raise OutOfBallError(v, self.radius)

    def indices_of(self, vs: Iterable[VertexKey]) -> List[int]:
        return [self.index_of(v) for v in vs]

    def dist_from_center(self, v: VertexKey) -> int:
        return self.dist[self.index_of(v)]

    def on_boundary(self, i: int) -> bool:
        return self.dist[i] == self.radius

    def sphere(self, r: int) -> List[int]:
        """Indices at distance exactly r from the center, in BFS order."""
        return [i for i, d in enumerate(self.dist) if d == r]

    def graph(self) -> nx.Graph:
        if self._graph is None:
            g = nx.Graph()
            g.add_nodes_from(range(len(self.vertices)))
            for i, nbrs in enumerate(self.adjacency):
                g.add_edges_from((i, j) for j in nbrs if j > i)
            self._graph = g
        return self._graph

    def shell_sizes(self) -> List[int]:
        counts = [0] * (self.radius + 1)
        for d in self.dist:
            counts[d] += 1
        return counts

    def summary(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "center": self.center,
            "radius": self.radius,
            "vertex_count": len(self.vertices),
            "edge_count": sum(len(n) for n in self.adjacency) // 2,
        }

    def __repr__(self) -> str:
        return f"Ball({self.family}, center={self.center!r}, R={self.radius}, |V|={len(self.vertices)})"


def materialize_ball(
    oracle: GraphOracle,
    center: Optional[VertexKey] = None,
    radius: int = 0,
    budget: Optional[int] = None,
) -> Ball:
    """
    Breadth-first materialization of B(center, radius)

    Args:
        oracle: Graph family oracle
        center: Center vertex (defaults to the family base vertex)
        radius: Ball radius R >= 0
        budget: Vertex cap; defaults to COARSE_PLANE_BUDGET

    Returns:
        The complete ball; its vertex count is the growth function value at R
        when the center is the base of a vertex-transitive family
    """
    if radius < 0:
        raise ValueError(f"ball radius must be >= 0, got {radius}")
    budget = get_ball_budget() if budget is None else budget
    center = oracle.base if center is None else oracle.canonical(center)

    trust = getattr(oracle, "trust_radius", None)
    if trust is not None and radius > trust:
        logger.warning("%s: ball radius %d exceeds boundary-trust radius %d", oracle.family, radius, trust)

    vertices: List[VertexKey] = [center]
    dist: List[int] = [0]
    index: Dict[VertexKey, int] = {center: 0}
    raw_nbrs: List[Optional[List[VertexKey]]] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        v = vertices[i]
        nbrs = oracle.neighbors_within(v, radius)
        raw_nbrs.append(nbrs)
        if dist[i] == radius:
            continue
        for w in nbrs:
            if w not in index:
                if len(vertices) >= budget:
                    raise BudgetExceededError(
                        f"ball budget of {budget} vertices exceeded at radius {dist[i] + 1} "
                        f"({oracle.family}); set COARSE_PLANE_BUDGET to raise it",
                        attained_radius=dist[i],
                        vertex_count=len(vertices),
                    )
                index[w] = len(vertices)
                vertices.append(w)
                dist.append(dist[i] + 1)
                queue.append(index[w])

    adjacency = []
    for i, nbrs in enumerate(raw_nbrs):
        adjacency.append(tuple(index[w] for w in nbrs if w in index))
    ball = Ball(oracle, center, radius, vertices, dist, adjacency)
    logger.debug("materialized %r", ball)
    return ball


def rerun_center_bfs(ball: Ball) -> List[int]:
    """BFS from the center inside the ball; must reproduce ``ball.dist``."""
    out = [-1] * len(ball)
    out[0] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in ball.adjacency[i]:
            if out[j] < 0:
                out[j] = out[i] + 1
                queue.append(j)
    return out


def transitivity_spot_check(
    oracle: GraphOracle, max_radius: int = 6, samples: int = 20, seed: int = 0, walk: int = 10
) -> Dict[str, Any]:
    """
    Compare |B(v, r)| against |B(base, r)| for random v and r <= max_radius

    Returns:
        {"ok": bool, "reference": [...], "mismatches": [{vertex, radius, size}]}
    """
    rng = np.random.default_rng(seed)
    reference = materialize_ball(oracle, oracle.base, max_radius).shell_sizes()
    mismatches = []
    for _ in range(samples):
        v = random_vertex(oracle, rng, walk)
        shells = materialize_ball(oracle, v, max_radius).shell_sizes()
        if shells != reference:
            mismatches.append({"vertex": v, "shells": shells})
    return {"ok": not mismatches, "reference": reference, "mismatches": mismatches}


def symmetry_audit(oracle: GraphOracle, pairs: int = 10_000, seed: int = 0, walk: int = 8) -> Dict[str, Any]:
    """Check u in neighbors(v) implies v in neighbors(u) on random incident pairs."""
    rng = np.random.default_rng(seed)
    failures = []
    v = oracle.base
    for step in range(pairs):
        if step % walk == 0:
            v = random_vertex(oracle, rng, walk)
        nbrs = oracle.neighbors(v)
        if len(nbrs) != len(set(nbrs)) or v in nbrs or len(nbrs) > oracle.degree_bound:
            failures.append({"vertex": v, "reason": "neighbor list invariant"})
        u = nbrs[int(rng.integers(len(nbrs)))]
        if v not in oracle.neighbors(u):
            failures.append({"vertex": v, "neighbor": u, "reason": "asymmetric"})
        v = u
    return {"ok": not failures, "pairs": pairs, "failures": failures[:20]}
