"""
Finite-scale UBQ / UBG probes, sigma sweeps and the ends probe.

A probe materializes B(base, R), fixes a segment (by default an axis
spanning the ball), removes the sigma-neighborhood and counts wide
candidates: components that contain a vertex at distance >= D from the
segment, touch the boundary sphere and come within sigma + 1 of the
segment's central part (vertices at distance at most R - D - sigma from the
base). Pockets cut off next to the segment's ends are reported as end
pockets, not sides. Exactly two is consistent with uniform bisection at
this scale.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from graphs.ball import Ball, materialize_ball
from graphs.errors import PreconditionError
from graphs.oracles import GraphOracle, random_vertex
from metric.axes import axis_segment
from metric.certify import VIOLATED, QGResult, certify_quasi_geodesic
from metric.distances import bfs_from, geodesic_between
from metric.paths import PathRecord

from .components import ComponentReport, as_indices, decompose, label_components

logger = logging.getLogger(__name__)

QUASI_GEODESIC = "quasi-geodesic"
GEODESIC_ONLY = "geodesic-only"
SAMPLED = "sampled"

CONSISTENT = "consistent-with-UBQ"
TOO_FEW = "violates(too-few-wide)"
TOO_MANY = "violates(too-many-wide)"
INDETERMINATE = "indeterminate"


def verdict_for(wide_count: int) -> str:
    if wide_count == 2:
        return CONSISTENT
    return TOO_FEW if wide_count < 2 else TOO_MANY


@dataclass
class UbqProbeReport:
    family: str
    mode: str
    sigma: int
    D: int
    R: int
    segment: PathRecord
    certificate: QGResult
    wide_count: int
    components: List[ComponentReport]
    verdict: str
    warnings: List[str] = field(default_factory=list)
    sides: List[int] = field(default_factory=list)

    @property
    def end_pockets(self) -> List[int]:
        """Wide components that only meet the segment near its ends."""
        return [c.id for c in self.components if c.wide and c.id not in self.sides]

    @property
    def enclosed(self) -> List[ComponentReport]:
        return [c for c in self.components if c.enclosed]

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "mode": self.mode,
            "sigma": self.sigma,
            "D": self.D,
            "R": self.R,
            "segment_length": self.segment.length,
            "certificate": self.certificate.to_dict(),
            "wide_count": self.wide_count,
            "sides": list(self.sides),
            "end_pockets": self.end_pockets,
            "verdict": self.verdict,
            "components": [c.to_dict() for c in self.components],
            "enclosed": [c.id for c in self.enclosed],
            "warnings": list(self.warnings),
        }


def sampled_segment(oracle: GraphOracle, ball: Ball, lam=1, c=0, seed: int = 0, attempts: int = 32) -> PathRecord:
    """
    Geodesic between two random-walk endpoints, certified (lam, c) in the ball

    Walks have length R // 2, so every vertex of the geodesic stays inside
    B(base, R).

    Raises:
        PreconditionError: no certified segment within ``attempts`` draws
    """
    rng = np.random.default_rng(seed)
    steps = max(1, ball.radius // 2)
    for attempt in range(attempts):
        u = random_vertex(oracle, rng, steps)
        v = random_vertex(oracle, rng, steps)
        if u == v:
            continue
        path = geodesic_between(ball, u, v)
        if certify_quasi_geodesic(ball, path, lam, c).status != VIOLATED:
            logger.debug("sampled segment of length %d after %d draws", path.length, attempt + 1)
            return path
    raise PreconditionError(
        f"no certified ({lam}, {c}) segment in {attempts} draws from seed {seed}",
        details={"seed": seed, "attempts": attempts},
    )


def _resolve_segment(oracle: GraphOracle, ball: Ball, source: Union[str, PathRecord], lam=1, c=0) -> PathRecord:
    if isinstance(source, PathRecord):
        return source
    name, _, seed = source.partition(":")
    if name == SAMPLED:
        return sampled_segment(oracle, ball, lam, c, seed=int(seed or 0))
    return axis_segment(oracle, source, ball.radius, certify=False, ball=ball)


def anchored_sides(ball: Ball, segment: PathRecord, components: List[ComponentReport], sigma: int, D: int) -> List[int]:
    """Ids of wide components within sigma + 1 of the segment's central part."""
    indices = as_indices(ball, segment)
    central = [i for i in indices if ball.dist[i] <= ball.radius - D - sigma] or indices
    reach = bfs_from(ball, central, limit=sigma + 1)
    sides = []
    for comp in components:
        if comp.wide and any(0 <= reach[i] <= sigma + 1 for i in comp.members):
            sides.append(comp.id)
    return sides


def probe_ball(
    ball: Ball,
    segment: PathRecord,
    sigma: int,
    D: int,
    certificate: QGResult,
    mode: str = QUASI_GEODESIC,
) -> UbqProbeReport:
    """Decompose an already certified probe and classify it."""
    decomposition = decompose(ball, segment, sigma, D)
    warnings = []
    if not decomposition.components:
        warnings.append("empty-decomposition")
    sides = anchored_sides(ball, segment, decomposition.components, sigma, D)
    wide_count = len(sides)
    verdict = verdict_for(wide_count)
    if D > ball.radius:
        verdict = INDETERMINATE
        warnings.append("depth-threshold-exceeds-radius")
    return UbqProbeReport(
        family=ball.family,
        mode=mode,
        sigma=sigma,
        D=D,
        R=ball.radius,
        segment=segment,
        certificate=certificate,
        wide_count=wide_count,
        components=decomposition.components,
        verdict=verdict,
        warnings=warnings,
        sides=sides,
    )


def _certify_or_raise(ball: Ball, segment: PathRecord, lam, c) -> QGResult:
    certificate = certify_quasi_geodesic(ball, segment, lam, c)
    if certificate.status == VIOLATED:
        raise PreconditionError(
            f"segment is not a ({certificate.lam}, {certificate.c})-quasi-geodesic: "
            f"pair {certificate.pair} at distance {certificate.distance}",
            details={"pair": list(certificate.pair), "distance": certificate.distance},
        )
    return certificate


def ubq_probe(
    oracle: GraphOracle,
    segment_source: Union[str, PathRecord] = "x",
    lam=1,
    c=0,
    sigma: int = 1,
    D: Optional[int] = None,
    R: int = 30,
    mode: str = QUASI_GEODESIC,
    ball: Optional[Ball] = None,
) -> UbqProbeReport:
    """
    Count wide candidates of B(base, R) minus N_sigma(segment)

    Args:
        oracle: Family oracle
        segment_source: Axis name, an explicit PathRecord inside the ball, or
            'sampled' / 'sampled:<seed>' for a certified random geodesic
        lam, c: Quasi-geodesic constants the segment must not violate
        sigma: Tube radius
        D: Depth threshold (defaults to R // 3)
        R: Probe radius
        mode: 'quasi-geodesic' or 'geodesic-only' (forces (1, 0))
        ball: Reuse an existing ball of radius R around the base

    Returns:
        UbqProbeReport with the full component table
    """
    if mode not in (QUASI_GEODESIC, GEODESIC_ONLY):
        raise ValueError(f"unknown probe mode {mode!r}")
    if mode == GEODESIC_ONLY:
        lam, c = 1, 0
    ball = ball if ball is not None else materialize_ball(oracle, oracle.base, R)
    D = ball.radius // 3 if D is None else D
    segment = _resolve_segment(oracle, ball, segment_source, lam, c)
    certificate = _certify_or_raise(ball, segment, lam, c)
    report = probe_ball(ball, segment, sigma, D, certificate, mode)
    logger.info(
        "%s ubq probe sigma=%d D=%d R=%d: wide=%d -> %s",
        ball.family, sigma, D, ball.radius, report.wide_count, report.verdict,
    )
    return report


@dataclass
class SigmaSweep:
    reports: List[UbqProbeReport]

    @property
    def wide_counts(self) -> List[int]:
        return [r.wide_count for r in self.reports]

    @property
    def nonincreasing(self) -> bool:
        counts = self.wide_counts
        return all(a >= b for a, b in zip(counts, counts[1:]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": [r.to_dict() for r in self.reports],
            "wide_counts": self.wide_counts,
            "wide_count_nonincreasing": self.nonincreasing,
        }


def sigma_sweep(
    oracle: GraphOracle,
    segment: Union[str, PathRecord],
    sigmas: Sequence[int],
    D: Optional[int],
    R: int,
    lam=1,
    c=0,
    mode: str = QUASI_GEODESIC,
) -> SigmaSweep:
    """Run one probe per sigma on a shared ball and segment; monotonicity is recorded only."""
    if mode == GEODESIC_ONLY:
        lam, c = 1, 0
    ball = materialize_ball(oracle, oracle.base, R)
    D = R // 3 if D is None else D
    path = _resolve_segment(oracle, ball, segment, lam, c)
    certificate = _certify_or_raise(ball, path, lam, c)
    reports = [probe_ball(ball, path, s, D, certificate, mode) for s in sigmas]
    sweep = SigmaSweep(reports)
    logger.info("%s sigma sweep %s -> wide counts %s", ball.family, list(sigmas), sweep.wide_counts)
    return sweep


def ends_probe(oracle: GraphOracle, r: int, R: int, D: int, ball: Optional[Ball] = None) -> int:
    """
    Count components of B_R minus the open ball B_r that reach distance r + D and the outer sphere

    Args:
        oracle: Family oracle
        r: Inner radius (vertices with dc < r are removed)
        R: Outer radius
        D: Required depth beyond r
    """
    if r + D > R:
        raise PreconditionError(f"ends probe needs r + D <= R, got r={r}, D={D}, R={R}")
    ball = ball if ball is not None else materialize_ball(oracle, oracle.base, R)
    keep = [d >= r for d in ball.dist]
    count = 0
    for comp in label_components(ball, keep):
        far = max(ball.dist[i] for i in comp)
        if far >= r + D and far == ball.radius:
            count += 1
    logger.info("%s ends probe r=%d R=%d D=%d -> %d", ball.family, r, R, D, count)
    return count
