"""
Quasi-circle certification and seeded loop search
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from graphs.ball import Ball
from graphs.errors import MalformedInputError
from metric.certify import (
    CERTIFIED,
    QGCertificate,
    QGResult,
    Rational,
    check_constants,
    fmt_rational,
    loop_indices,
    loop_pairs,
    scan_pairs,
)
from metric.distances import bfs_from, geodesic_indices, metric_for
from metric.paths import LOOP, PathRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuasiCircle:
    loop: PathRecord
    lam: Fraction
    c: Fraction
    certificate: QGCertificate

    @property
    def length(self) -> int:
        return self.loop.length

    def to_dict(self) -> Dict[str, Any]:
        return {
            "length": self.length,
            "lambda": fmt_rational(self.lam),
            "c": fmt_rational(self.c),
            "exact": self.certificate.exact,
            "worst_subpath": list(self.certificate.worst_pair),
            "loop": self.loop.to_json(),
        }


def certify_quasi_circle(ball: Ball, loop: PathRecord, lam: Rational, c: Rational) -> Union[QuasiCircle, QGResult]:
    """
    Certify every subpath of length <= len/2 as a (lambda, c)-quasi-geodesic

    Args:
        ball: Ball containing the loop
        loop: Closed PathRecord (kind 'loop')
        lam, c: Quasi-circle constants

    Returns:
        QuasiCircle on success; otherwise the QGViolation or QGIndeterminate
        whose pair is the offending subpath as (start position, length)

    Raises:
        MalformedInputError: the path is not closed
    """
    lam, c = check_constants(lam, c)
    if loop.kind != LOOP:
        raise MalformedInputError("quasi-circles must be closed loops")
    result = scan_pairs(ball, loop_pairs(loop_indices(ball, loop)), lam, c)
    if result.status != CERTIFIED:
        return result
    return QuasiCircle(loop, lam, c, result)


def square_loop(side: int, corner: Tuple[int, int] = (0, 0)) -> PathRecord:
    """Axis-aligned square of the given side in Z^2, counterclockwise from its lower-left corner."""
    if side < 1:
        raise ValueError(f"side must be >= 1, got {side}")
    x0, y0 = corner
    pts = [(x0 + k, y0) for k in range(side)]
    pts += [(x0 + side, y0 + k) for k in range(side)]
    pts += [(x0 + side - k, y0 + side) for k in range(side)]
    pts += [(x0, y0 + side - k) for k in range(side)]
    return PathRecord.loop(pts)


def square_interior(side: int, corner: Tuple[int, int] = (0, 0)) -> List[Tuple[int, int]]:
    x0, y0 = corner
    return [(x0 + i, y0 + j) for i in range(1, side) for j in range(1, side)]


def rectangle_loop(x_left: int, x_right: int, height: int) -> PathRecord:
    """Rectangle with its bottom side on the x-axis, from (x_left, 0) along the axis first."""
    step = 1 if height > 0 else -1
    pts = [(x, 0) for x in range(x_left, x_right + 1)]
    pts += [(x_right, y) for y in range(step, height + step, step)]
    pts += [(x, height) for x in range(x_right - 1, x_left - 1, -1)]
    pts += [(x_left, y) for y in range(height - step, 0, -step)]
    return PathRecord.loop(pts)


def loop_key(cycle: Sequence[Any]) -> Tuple[Any, ...]:
    """Canonical form of a cycle up to rotation and reversal."""
    cycle = tuple(cycle)
    n = len(cycle)
    best = None
    for seq in (cycle, tuple(reversed(cycle))):
        for k in range(n):
            rotated = seq[k:] + seq[:k]
            if best is None or rotated < best:
                best = rotated
    return best


def _penalized_detour(ball: Ball, u: int, v: int, near: List[int], radius: int, penalty: int) -> Optional[List[int]]:
    """Shortest u-v path where edges close to the first path cost more the closer they are."""

    def weight(a, b, _attrs):
        da = near[a] if near[a] >= 0 else radius + 1
        db = near[b] if near[b] >= 0 else radius + 1
        return 1 + penalty * max(0, radius + 1 - min(da, db))

    try:
        return nx.dijkstra_path(ball.graph(), u, v, weight=weight)
    except nx.NetworkXNoPath:
        return None


def search_quasi_circles(
    ball: Ball,
    lam: Rational,
    c: Rational,
    length_range: Tuple[int, int],
    budget: int,
    seed: int = 0,
    sigma: int = 1,
    penalty: int = 4,
) -> List[QuasiCircle]:
    """
    Seeded search for certified (lambda, c)-quasi-circles

    Each attempt draws a target length L from the range, picks endpoints u, v
    at ball distance L // 3, joins them by the least-key geodesic and by a
    second path that pays extra for staying near the first (within
    max(sigma, d // 2)), and certifies the simple loop they bound.

    Args:
        ball: Search region
        lam, c: Quasi-circle constants
        length_range: Inclusive (min, max) loop length
        budget: Number of attempts
        seed: numpy seed
        sigma: Smallest penalized radius

    Returns:
        Distinct certified loops (up to rotation and reversal), shortest first
    """
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    lo, hi = length_range
    lam, c = check_constants(lam, c)
    rng = np.random.default_rng(seed)
    metric = metric_for(ball)
    inner = [i for i, d in enumerate(ball.dist) if 2 * d <= ball.radius]
    found: Dict[Tuple[Any, ...], QuasiCircle] = {}
    for _ in range(budget):
        target = int(rng.integers(lo, hi + 1))
        d = max(1, target // 3)
        radius = max(sigma, d // 2)
        u = inner[int(rng.integers(len(inner)))]
        table = metric.distances_from(u)
        partners = [j for j, dj in enumerate(table) if dj == d and ball.dist[j] <= ball.radius - radius - 1]
        if not partners:
            continue
        v = partners[int(rng.integers(len(partners)))]
        first = geodesic_indices(ball, u, v)
        near = bfs_from(ball, first, limit=radius)
        second = _penalized_detour(ball, u, v, near, radius, penalty)
        if second is None:
            continue
        cycle = first + list(reversed(second))[1:-1]
        if len(cycle) < 3 or len(set(cycle)) != len(cycle) or not lo <= len(cycle) <= hi:
            continue
        key = loop_key([ball.vertices[i] for i in cycle])
        if key in found:
            continue
        loop = PathRecord.loop([ball.vertices[i] for i in cycle])
        result = certify_quasi_circle(ball, loop, lam, c)
        if isinstance(result, QuasiCircle):
            found[key] = result
    circles = sorted(found.values(), key=lambda q: (q.length, loop_key(q.loop.cycle)))
    logger.info(
        "%s loop search (%s, %s) lengths %s: %d certified, max length %s",
        ball.family, lam, c, length_range, len(circles), circles[-1].length if circles else None,
    )
    return circles
