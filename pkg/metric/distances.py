"""
Ball-restricted distances, exactness flags and deterministic geodesics.

A distance measured inside a ball of radius R is flagged exact when
2R >= dc(u) + dc(v) + d, where dc is the distance from the ball center:
every vertex of any path of that length from u to v then stays within R.
"""
from collections import OrderedDict, deque
from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from graphs.ball import Ball
from graphs.errors import NoPathError

from .paths import PathRecord

UNREACHED = -1


def bfs_from(
    ball: Ball,
    sources: Iterable[int],
    allowed: Optional[Sequence[bool]] = None,
    limit: Optional[int] = None,
) -> List[int]:
    """
    Multi-source BFS over ball indices

    Args:
        ball: Materialized ball
        sources: Source indices (distance 0)
        allowed: Optional mask; traversal never enters a False index
        limit: Stop expanding beyond this distance

    Returns:
        Per-index distance, UNREACHED (-1) where not reached
    """
    adjacency = ball.adjacency
    out = [UNREACHED] * len(adjacency)
    queue = deque()
    for s in sources:
        if out[s] == UNREACHED and (allowed is None or allowed[s]):
            out[s] = 0
            queue.append(s)
    while queue:
        i = queue.popleft()
        d = out[i] + 1
        if limit is not None and d > limit:
            continue
        for j in adjacency[i]:
            if out[j] == UNREACHED and (allowed is None or allowed[j]):
                out[j] = d
                queue.append(j)
    return out


class BallMetric:
    """Per-ball cache of single-source distance tables."""

    def __init__(self, ball: Ball, cache_size: int = 256):
        self.ball = ball
        self.cache_size = cache_size
        self._tables: "OrderedDict[int, List[int]]" = OrderedDict()

    def distances_from(self, i: int) -> List[int]:
        table = self._tables.get(i)
        if table is None:
            table = bfs_from(self.ball, [i])
            self._tables[i] = table
            if len(self._tables) > self.cache_size:
                self._tables.popitem(last=False)
        else:
            self._tables.move_to_end(i)
        return table

    def distance(self, i: int, j: int) -> int:
        if i == j:
            return 0
        if j in self._tables:
            return self._tables[j][i]
        return self.distances_from(i)[j]

    def exact(self, i: int, j: int, d: int) -> bool:
        return 2 * self.ball.radius >= self.ball.dist[i] + self.ball.dist[j] + d

    def lower_bound(self, i: int, j: int, d: int) -> int:
        """Sound lower bound on the true distance given the ball distance d."""
        dci, dcj = self.ball.dist[i], self.ball.dist[j]
        if self.exact(i, j, d):
            return d
        # any shorter true path must leave the ball: length >= (R+1-dci) + (R+1-dcj)
        return max(abs(dci - dcj), min(d, 2 * self.ball.radius + 2 - dci - dcj))


def metric_for(ball: Ball) -> BallMetric:
    metric = ball.cache.get("metric")
    if metric is None:
        metric = BallMetric(ball)
        ball.cache["metric"] = metric
    return metric


@dataclass(frozen=True)
class DistanceWitness:
    u: Any
    v: Any
    d: int
    exact: bool

    def to_dict(self):
        return {"u": self.u, "v": self.v, "d": self.d, "exact": self.exact}


def dist(ball: Ball, u: Any, v: Any) -> DistanceWitness:
    """Ball-restricted distance from u to v with its exactness flag."""
    i, j = ball.index_of(u), ball.index_of(v)
    metric = metric_for(ball)
    d = metric.distance(i, j)
    if d == UNREACHED:
        raise NoPathError(f"{u!r} and {v!r} are disconnected inside the ball")
    return DistanceWitness(u, v, d, metric.exact(i, j, d))


def distance_to_set(ball: Ball, members: Iterable[int], limit: Optional[int] = None) -> List[int]:
    """dist(v, S) for every ball index v; -1 where beyond ``limit``."""
    return bfs_from(ball, members, limit=limit)


def _walk_down(ball: Ball, table: List[int], start: int, allowed: Optional[Sequence[bool]] = None) -> List[int]:
    vertices = ball.vertices
    path = [start]
    i = start
    while table[i] > 0:
        best = None
        for j in ball.adjacency[i]:
            if table[j] == table[i] - 1 and (allowed is None or allowed[j]):
                if best is None or vertices[j] < vertices[best]:
                    best = j
        path.append(best)
        i = best
    return path


def geodesic_indices(ball: Ball, i: int, j: int) -> List[int]:
    table = metric_for(ball).distances_from(j)
    if table[i] == UNREACHED:
        raise NoPathError(f"{ball.vertices[i]!r} and {ball.vertices[j]!r} are disconnected inside the ball")
    return _walk_down(ball, table, i)


def geodesic_between(ball: Ball, u: Any, v: Any) -> PathRecord:
    """
    Shortest path from u to v inside the ball

    Each step moves to the lexicographically least neighbor one layer closer
    to v, so the output is reproducible.
    """
    path = geodesic_indices(ball, ball.index_of(u), ball.index_of(v))
    return PathRecord(tuple(ball.vertices[k] for k in path))


def restricted_geodesic(ball: Ball, i: int, j: int, allowed: Sequence[bool]) -> List[int]:
    """Shortest index path from i to j that only visits allowed indices."""
    table = bfs_from(ball, [j], allowed=allowed)
    if table[i] == UNREACHED:
        raise NoPathError(f"{ball.vertices[i]!r} cannot reach {ball.vertices[j]!r} in the allowed region")
    return _walk_down(ball, table, i, allowed)


def path_to_set(ball: Ball, i: int, members: Iterable[int]) -> List[int]:
    """Shortest index path from i to the nearest member of a set, least-key ties."""
    table = bfs_from(ball, members)
    if table[i] == UNREACHED:
        raise NoPathError(f"{ball.vertices[i]!r} cannot reach the target set")
    return _walk_down(ball, table, i)


def hausdorff(ball: Ball, a: Sequence[int], b: Sequence[int]) -> Tuple[int, Optional[int]]:
    """
    Finite Hausdorff distance between two index sets inside the ball

    Returns:
        (H, witness index attaining it)
    """
    to_b = bfs_from(ball, b)
    to_a = bfs_from(ball, a)
    best, witness = 0, None
    for i in a:
        if to_b[i] > best:
            best, witness = to_b[i], i
    for i in b:
        if to_a[i] > best:
            best, witness = to_a[i], i
    return best, witness
