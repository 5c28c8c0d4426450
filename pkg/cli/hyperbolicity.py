"""
Four-point hyperbolicity estimates over a ladder of radii.

The growing/plateau split is a lab convention with no quantitative backing
at finite scale; every report says so in its ``convention`` field.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from graphs.ball import Ball
from graphs.errors import PreconditionError
from metric.certify import fmt_rational
from metric.distances import metric_for

logger = logging.getLogger(__name__)

GROWING = "growing"
PLATEAU = "plateau"
INDETERMINATE = "indeterminate"

DEFAULT_SAMPLES = 40
MIN_RADIUS = 6
CONVENTION = "artifact convention: growing iff last >= 2*first and last >= first + 2"


def default_ladder(radius: int) -> List[int]:
    """Rungs 2..radius//2 with step max(1, radius//10); rungs stay within exact-distance range."""
    return list(range(2, radius // 2 + 1, max(1, radius // 10)))


def classify_delta_trend(first: Fraction, last: Fraction) -> str:
    if last >= 2 * first and last >= first + 2:
        return GROWING
    return PLATEAU


def four_point_delta(D: np.ndarray) -> Tuple[Fraction, Optional[Tuple[int, int, int, int]]]:
    """
    Largest four-point defect over all quadruples of a distance matrix

    For x, y, z, w the three pair sums d(x,y)+d(z,w), d(x,z)+d(y,w),
    d(x,w)+d(y,z) are sorted; the defect is half the gap between the two
    largest.

    Returns:
        (delta, positions of the maximizing quadruple), (0, None) below four points
    """
    n = D.shape[0]
    if n < 4:
        return Fraction(0), None
    quads = np.array(list(itertools.combinations(range(n), 4)), dtype=np.int64)
    a, b, c, d = quads.T
    sums = np.stack([D[a, b] + D[c, d], D[a, c] + D[b, d], D[a, d] + D[b, c]], axis=1)
    sums.sort(axis=1)
    gaps = sums[:, 2] - sums[:, 1]
    best = int(np.argmax(gaps))
    return Fraction(int(gaps[best]), 2), tuple(int(x) for x in quads[best])


@dataclass
class HyperbolicityReport:
    family: str
    seed: int
    samples: int
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def deltas(self) -> List[Fraction]:
        return [r["delta"] for r in self.rows]

    @property
    def trend(self) -> str:
        if len(self.rows) < 2:
            return INDETERMINATE
        return classify_delta_trend(self.deltas[0], self.deltas[-1])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "seed": self.seed,
            "samples": self.samples,
            "ladder": [
                {"R": r["R"], "delta": fmt_rational(r["delta"]), "pool": r["pool"], "quadruple": r["quadruple"]}
                for r in self.rows
            ],
            "trend": self.trend,
            "convention": CONVENTION,
        }


def hyperbolicity_estimate(
    ball: Ball,
    sample_count: int = DEFAULT_SAMPLES,
    seed: int = 0,
    radii: Optional[Sequence[int]] = None,
) -> HyperbolicityReport:
    """
    Max four-point defect of sampled vertices of B(center, r) for each rung r

    Each rung draws ``sample_count`` vertices (all of them when the sub-ball
    is smaller) and scans every quadruple among them. Rungs never exceed half
    the ball radius, so all distances used are exact.

    Args:
        ball: Materialized ball, radius >= 6
        sample_count: Vertices per rung
        seed: numpy seed
        radii: Ladder override; defaults to default_ladder(ball.radius)

    Returns:
        HyperbolicityReport with per-rung delta and the trend
    """
    if ball.radius < MIN_RADIUS:
        raise PreconditionError(
            f"hyperbolicity needs a ball of radius >= {MIN_RADIUS}, got {ball.radius}",
            {"radius": ball.radius},
        )
    if sample_count < 4:
        raise ValueError(f"sample_count must be >= 4, got {sample_count}")
    radii = default_ladder(ball.radius) if radii is None else sorted(radii)
    too_far = [r for r in radii if 2 * r > ball.radius]
    if too_far:
        raise PreconditionError(f"rungs {too_far} exceed half the ball radius {ball.radius}", {"radii": too_far})
    rng = np.random.default_rng(seed)
    metric = metric_for(ball)
    report = HyperbolicityReport(ball.family, seed, sample_count)
    for r in radii:
        candidates = [i for i, d in enumerate(ball.dist) if d <= r]
        if len(candidates) > sample_count:
            pool = sorted(int(i) for i in rng.choice(candidates, size=sample_count, replace=False))
        else:
            pool = candidates
        D = np.array([[metric.distances_from(i)[j] for j in pool] for i in pool], dtype=np.int64)
        delta, quad = four_point_delta(D)
        report.rows.append({
            "R": r,
            "delta": delta,
            "pool": len(pool),
            "quadruple": [ball.vertices[pool[k]] for k in quad] if quad else [],
        })
        logger.debug("%s delta(%d) = %s over %d vertices", ball.family, r, delta, len(pool))
    logger.info(
        "%s hyperbolicity ladder %s -> %s (%s)",
        ball.family, [r["R"] for r in report.rows], [fmt_rational(d) for d in report.deltas], report.trend,
    )
    return report
