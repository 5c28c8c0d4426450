"""
Vertex boundaries and the growth-based isoperimetric inequality |A| / phi(2|A|) <= 4 |dA|
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from graphs.ball import Ball
from graphs.errors import MalformedInputError, MarginError

from .tables import GrowthTable, inverse_growth_phi

logger = logging.getLogger(__name__)

PERCOLATION_P = 0.6


def vertex_boundary(ball: Ball, members: Iterable[int]) -> Set[int]:
    """Indices at distance exactly 1 from the index set."""
    return set(nx.node_boundary(ball.graph(), members))


def connected_indices(ball: Ball, members: Iterable[int]) -> bool:
    members = list(members)
    return bool(members) and nx.is_connected(ball.graph().subgraph(members))


@dataclass(frozen=True)
class IsoperimetricSample:
    size: int
    boundary_size: int
    phi: int
    holds: bool
    members: FrozenSet[int] = field(default=frozenset(), compare=False, repr=False)

    @property
    def lhs(self) -> float:
        return self.size / self.phi

    @property
    def rhs(self) -> int:
        return 4 * self.boundary_size

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "boundary_size": self.boundary_size,
            "phi": self.phi,
            "lhs": f"{self.size}/{self.phi}",
            "rhs": self.rhs,
            "holds": self.holds,
        }


def varopoulos_check(ball: Ball, A: Iterable[Any], table: GrowthTable) -> IsoperimetricSample:
    """
    Test |A| / phi(2|A|) <= 4 |dA| in integers (|A| <= 4 |dA| phi)

    Args:
        ball: Ball containing A and its boundary away from the boundary sphere
        A: Vertex keys of a finite connected set
        table: Growth table deep enough for phi(2|A|)

    Raises:
        MalformedInputError: A is empty or disconnected
        MarginError: A or dA reaches the ball's boundary sphere
        TableExhaustedError: 2|A| >= the last tabulated ball size
    """
    members = set(ball.indices_of(A))
    if not connected_indices(ball, members):
        raise MalformedInputError("isoperimetric samples must be nonempty and connected")
    boundary = vertex_boundary(ball, members)
    edge = [i for i in members | boundary if ball.dist[i] >= ball.radius]
    if edge:
        raise MarginError(
            f"set of {len(members)} vertices reaches the boundary sphere of radius {ball.radius} "
            f"at {ball.vertices[edge[0]]!r}"
        )
    phi = inverse_growth_phi(table, 2 * len(members))
    holds = len(members) <= 4 * len(boundary) * phi
    if not holds:
        logger.error("isoperimetric inequality fails: |A|=%d, |dA|=%d, phi=%d", len(members), len(boundary), phi)
    return IsoperimetricSample(len(members), len(boundary), phi, holds, frozenset(members))


def _bfs_truncation(ball: Ball, start: int, size: int, allowed: List[bool], rng: np.random.Generator) -> List[int]:
    out = [start]
    seen = {start}
    head = 0
    while head < len(out) and len(out) < size:
        nbrs = [j for j in ball.adjacency[out[head]] if allowed[j] and j not in seen]
        for k in rng.permutation(len(nbrs)):
            j = nbrs[int(k)]
            seen.add(j)
            out.append(j)
            if len(out) >= size:
                break
        head += 1
    return out


def _percolation_cluster(ball: Ball, start: int, size: int, allowed: List[bool], rng: np.random.Generator) -> List[int]:
    state = {start: True}
    out = [start]
    head = 0
    while head < len(out) and len(out) < size:
        for j in ball.adjacency[out[head]]:
            if not allowed[j] or j in state:
                continue
            state[j] = bool(rng.random() < PERCOLATION_P)
            if state[j]:
                out.append(j)
                if len(out) >= size:
                    break
        head += 1
    return out


def random_connected_sets(
    ball: Ball,
    count: int,
    seed: int = 0,
    max_size: int = 60,
    margin: int = 2,
) -> List[Tuple[Any, ...]]:
    """
    Seeded connected vertex sets kept at least ``margin`` away from the boundary sphere

    Even draws are breadth-first tree truncations with shuffled neighbor
    order; odd draws are site-percolation clusters (p = 0.6) grown from a
    random start. Every set is re-checked for connectivity.
    """
    if ball.radius < margin:
        raise MarginError(f"ball radius {ball.radius} leaves no room for a margin of {margin}")
    rng = np.random.default_rng(seed)
    allowed = [d <= ball.radius - margin for d in ball.dist]
    starts = [i for i, ok in enumerate(allowed) if ok]
    out: List[Tuple[Any, ...]] = []
    draw = 0
    while len(out) < count:
        start = starts[int(rng.integers(len(starts)))]
        size = int(rng.integers(1, max_size + 1))
        grow = _bfs_truncation if draw % 2 == 0 else _percolation_cluster
        members = grow(ball, start, size, allowed, rng)
        draw += 1
        if connected_indices(ball, members):
            out.append(tuple(ball.vertices[i] for i in members))
    return out


@dataclass
class IsoperimetrySummary:
    family: str
    samples: List[IsoperimetricSample]
    seed: int

    @property
    def failures(self) -> List[IsoperimetricSample]:
        return [s for s in self.samples if not s.holds]

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        ratios = [s.size / (s.phi * s.rhs) for s in self.samples if s.rhs]
        return {
            "family": self.family,
            "seed": self.seed,
            "sample_count": len(self.samples),
            "all_pass": self.all_pass,
            "failures": [s.to_dict() for s in self.failures[:20]],
            "worst_ratio": round(max(ratios), 6) if ratios else None,
        }


def isoperimetry_sweep(
    ball: Ball,
    table: GrowthTable,
    count: int,
    seed: int = 0,
    max_size: Optional[int] = None,
) -> IsoperimetrySummary:
    """Run varopoulos_check on ``count`` random connected sets."""
    if max_size is None:
        max_size = max(1, min(60, (table.values[-1] - 1) // 2))
    sets = random_connected_sets(ball, count, seed, max_size)
    samples = [varopoulos_check(ball, A, table) for A in sets]
    summary = IsoperimetrySummary(ball.family, samples, seed)
    logger.info("%s isoperimetry: %d samples, %d failures", ball.family, len(samples), len(summary.failures))
    return summary
