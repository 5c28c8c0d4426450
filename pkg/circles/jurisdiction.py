"""
Depth of enclosed regions, delta-jurisdiction and limited-jurisdiction sweeps
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from graphs.ball import Ball, materialize_ball
from graphs.errors import NotEnclosedError
from graphs.oracles import GraphOracle
from growth.isoperimetry import vertex_boundary
from metric.certify import Rational
from metric.distances import bfs_from
from separation.components import VertexSet, decompose

from .loops import search_quasi_circles

logger = logging.getLogger(__name__)

BOUNDED = "bounded-so-far"
GROWING = "growing"
VACUOUS = "vacuous"


def depth_of_indices(ball: Ball, members: Iterable[int]) -> int:
    members = set(members)
    touching = [i for i in members if ball.on_boundary(i)]
    if touching:
        raise NotEnclosedError(
            f"region reaches the boundary sphere at {ball.vertices[touching[0]]!r}; its depth is not finite here"
        )
    boundary = vertex_boundary(ball, members)
    if not boundary:
        raise NotEnclosedError("region has an empty boundary inside the ball")
    to_boundary = bfs_from(ball, boundary)
    return max(to_boundary[i] for i in members)


def depth(ball: Ball, A: Iterable[Any]) -> int:
    """
    depth(A) = max over v in A of dist(v, dA), by multi-source BFS from dA

    Raises:
        NotEnclosedError: A touches the boundary sphere
    """
    return depth_of_indices(ball, ball.indices_of(A))


@dataclass
class JurisdictionReport:
    delta: int
    enclosed: List[Dict[str, int]]
    open_components: List[int]

    @property
    def jur(self) -> int:
        return max((c["depth"] for c in self.enclosed), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "delta": self.delta,
            "jur": self.jur,
            "enclosed": list(self.enclosed),
            "open_components": list(self.open_components),
        }


def jurisdiction(ball: Ball, S: VertexSet, delta: int) -> JurisdictionReport:
    """
    Jur_delta(S): largest depth among components of ball minus N_delta(S) that avoid the boundary sphere

    Components touching the sphere are listed as open and excluded.
    """
    decomposition = decompose(ball, S, delta, 0)
    enclosed, open_ids = [], []
    for comp in decomposition.components:
        if comp.touches_ball_boundary:
            open_ids.append(comp.id)
            continue
        enclosed.append({"id": comp.id, "size": comp.size, "depth": depth_of_indices(ball, comp.members)})
    report = JurisdictionReport(delta, enclosed, open_ids)
    logger.debug("Jur_%d over %d enclosed component(s): %d", delta, len(enclosed), report.jur)
    return report


def classify_trend(first: int, last: int) -> str:
    """Growing when the last bucket at least doubles the first and adds 4."""
    if last >= 2 * first and last >= first + 4:
        return GROWING
    return BOUNDED


@dataclass
class JurisdictionSweep:
    family: str
    delta: int
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def gaps(self) -> List[Tuple[int, int]]:
        return [tuple(r["bucket"]) for r in self.rows if r["count"] == 0]

    @property
    def trend(self) -> str:
        filled = [r for r in self.rows if r["count"] > 0]
        if not filled:
            return VACUOUS
        return classify_trend(filled[0]["max_jur"], filled[-1]["max_jur"])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "bucket": [f"{lo}-{hi}" for lo, hi in (r["bucket"] for r in self.rows)],
                "count": [r["count"] for r in self.rows],
                "max_jur": [r["max_jur"] for r in self.rows],
            }
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "delta": self.delta,
            "rows": [dict(r, bucket=list(r["bucket"])) for r in self.rows],
            "gaps": [list(g) for g in self.gaps],
            "trend": self.trend,
        }


def limited_jurisdiction_sweep(
    oracle: GraphOracle,
    lam: Rational,
    c: Rational,
    delta: int,
    length_buckets: Sequence[Tuple[int, int]],
    R: int,
    budget: int = 40,
    seed: int = 0,
    ball: Optional[Ball] = None,
) -> JurisdictionSweep:
    """
    Max delta-jurisdiction of found quasi-circles per loop-length bucket

    Args:
        oracle: Family oracle
        lam, c: Quasi-circle constants
        delta: Neighborhood radius for jurisdiction
        length_buckets: Inclusive (min, max) length ranges, ascending
        R: Search ball radius
        budget: Search attempts per bucket

    Returns:
        JurisdictionSweep; empty buckets are reported as gaps
    """
    ball = ball if ball is not None else materialize_ball(oracle, oracle.base, R)
    sweep = JurisdictionSweep(ball.family, delta)
    for k, bucket in enumerate(length_buckets):
        circles = search_quasi_circles(ball, lam, c, tuple(bucket), budget, seed=seed + k)
        jurs = [jurisdiction(ball, qc.loop, delta).jur for qc in circles]
        sweep.rows.append({"bucket": tuple(bucket), "count": len(circles), "max_jur": max(jurs, default=0)})
    if sweep.gaps:
        logger.warning("%s jurisdiction sweep: empty buckets %s", ball.family, sweep.gaps)
    logger.info("%s jurisdiction sweep (delta=%d): %s", ball.family, delta, sweep.trend)
    return sweep
