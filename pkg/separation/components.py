"""
Tubular neighborhoods and complement-component decomposition
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from graphs.ball import Ball
from metric.distances import bfs_from
from metric.paths import PathRecord

logger = logging.getLogger(__name__)

VertexSet = Union[PathRecord, Iterable[Any]]


def as_indices(ball: Ball, base: VertexSet) -> List[int]:
    vertices = base.vertices if isinstance(base, PathRecord) else base
    seen, out = set(), []
    for i in ball.indices_of(vertices):
        if i not in seen:
            seen.add(i)
            out.append(i)
    return out


@dataclass(frozen=True)
class TubularNbhd:
    """
    N_sigma(S) inside a ball.

    ``members`` is exact. Non-members within sigma of the ball boundary could
    still be sigma-close to S through the outside; they are listed in
    ``approximate``.
    """

    base: Tuple[int, ...]
    sigma: int
    members: FrozenSet[int]
    approximate: FrozenSet[int]
    dist_to_base: Tuple[int, ...] = field(repr=False)

    def __contains__(self, i: int) -> bool:
        return i in self.members


def tubular_neighborhood(ball: Ball, base: VertexSet, sigma: int) -> TubularNbhd:
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    idx = as_indices(ball, base)
    to_base = bfs_from(ball, idx)
    members = frozenset(i for i, d in enumerate(to_base) if 0 <= d <= sigma)
    near_edge = ball.radius - sigma
    approximate = frozenset(
        i for i, d in enumerate(to_base) if i not in members and ball.dist[i] > near_edge
    )
    return TubularNbhd(tuple(idx), sigma, members, approximate, tuple(to_base))


@dataclass(frozen=True)
class ComponentReport:
    id: int
    size: int
    max_depth_from_base: int
    touches_ball_boundary: bool
    deep: bool
    representative_deep_vertex: Any
    members: FrozenSet[int] = field(default=frozenset(), compare=False, repr=False)

    @property
    def wide(self) -> bool:
        """Finite-scale wide candidate: deep and reaching the boundary sphere."""
        return self.deep and self.touches_ball_boundary

    @property
    def enclosed(self) -> bool:
        return not self.touches_ball_boundary

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "size": self.size,
            "max_depth": self.max_depth_from_base,
            "touches_boundary": self.touches_ball_boundary,
            "deep": self.deep,
            "wide": self.wide,
            "representative": self.representative_deep_vertex,
        }


@dataclass
class Decomposition:
    ball: Ball
    tube: TubularNbhd
    depth_threshold: int
    components: List[ComponentReport]
    label: List[int]

    @property
    def deep(self) -> List[ComponentReport]:
        return [c for c in self.components if c.deep]

    @property
    def wide(self) -> List[ComponentReport]:
        return [c for c in self.components if c.wide]

    def component_of(self, v: Any) -> Optional[ComponentReport]:
        k = self.label[self.ball.index_of(v)]
        return None if k < 0 else self.components[k]


def label_components(ball: Ball, keep: Sequence[bool]) -> List[List[int]]:
    """Connected components of the kept indices, ordered by smallest index."""
    graph = ball.graph()
    sub = graph.subgraph(i for i, flag in enumerate(keep) if flag)
    comps = [sorted(c) for c in nx.connected_components(sub)]
    comps.sort(key=lambda c: c[0])
    return comps


def decompose(ball: Ball, base: VertexSet, sigma: int, D: int) -> Decomposition:
    """Full decomposition of ball minus N_sigma(base) with depth and boundary data."""
    tube = tubular_neighborhood(ball, base, sigma)
    keep = [i not in tube.members for i in range(len(ball))]
    depth = tube.dist_to_base
    vertices = ball.vertices
    components: List[ComponentReport] = []
    label = [-1] * len(ball)
    for cid, comp in enumerate(label_components(ball, keep)):
        for i in comp:
            label[i] = cid
        deepest = max(depth[i] for i in comp)
        rep = min((vertices[i] for i in comp if depth[i] == deepest))
        components.append(
            ComponentReport(
                id=cid,
                size=len(comp),
                max_depth_from_base=deepest,
                touches_ball_boundary=any(ball.dist[i] == ball.radius for i in comp),
                deep=deepest >= D,
                representative_deep_vertex=rep,
                members=frozenset(comp),
            )
        )
    if not components:
        logger.warning(
            "N_%d of the base covers the whole ball of radius %d: empty decomposition", sigma, ball.radius
        )
    return Decomposition(ball, tube, D, components, label)


def complement_components(ball: Ball, S: VertexSet, sigma: int, D: int) -> List[ComponentReport]:
    """
    Components of ball minus N_sigma(S)

    Args:
        ball: Materialized ball containing S
        S: Path or vertex collection
        sigma: Neighborhood radius
        D: Depth threshold for the deep flag

    Returns:
        Component reports ordered by their smallest BFS index
    """
    return decompose(ball, S, sigma, D).components
