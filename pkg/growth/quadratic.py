"""
Quadratic-growth certificates: depth against boundary along a family of sets,
and the hypothesis audit for sets crossing the three rays of a cross-examiner.

Both audits only check hypotheses on finite samples; the growth conclusion
they would feed is reported as implied, never verified.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from graphs.ball import Ball
from examiner.construct import CrossExaminer
from examiner.validate import CEValidationReport, validate_cross_examiner
from graphs.errors import MalformedInputError, PreconditionError
from metric.certify import Rational, as_rational, fmt_rational
from metric.distances import bfs_from
from metric.paths import PathRecord

from .isoperimetry import connected_indices, vertex_boundary

logger = logging.getLogger(__name__)

HYPOTHESES_MET = "hypotheses met"
HYPOTHESES_UNMET = "hypotheses unmet"
IMPLIED_CONCLUSION = "quadratic growth (implied, not verified)"


def _members(ball: Ball, A: Any) -> List[int]:
    vertices = A.vertices if isinstance(A, PathRecord) else A
    return sorted(set(ball.indices_of(vertices)))


@dataclass(frozen=True)
class QuadGrowthSample:
    size: int
    boundary_size: int
    depth: int
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"size": self.size, "boundary_size": self.boundary_size, "depth": self.depth, "holds": self.holds}


@dataclass
class QuadGrowthCertificate:
    K: Fraction
    samples: List[QuadGrowthSample]

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.samples)

    @property
    def failing(self) -> List[int]:
        return [n for n, s in enumerate(self.samples) if not s.holds]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "K": fmt_rational(self.K),
            "holds": self.holds,
            "failing": self.failing,
            "samples": [s.to_dict() for s in self.samples],
            "conclusion": IMPLIED_CONCLUSION if self.holds else None,
        }


def quad_growth_certificate(ball: Ball, samples: Sequence[Tuple[Iterable[Any], int]], K: Rational) -> QuadGrowthCertificate:
    """
    Check depth(A_n) > |dA_n| / K - K over a family with increasing boundaries

    Args:
        ball: Ball containing every A_n together with its boundary
        samples: (vertex set, depth) pairs; depths come from ``circles.depth``
        K: Positive rational constant

    Raises:
        MalformedInputError: fewer than two samples or non-increasing boundaries
    """
    K = as_rational(K)
    if K <= 0:
        raise MalformedInputError(f"K must be positive, got {K}")
    if len(samples) < 2:
        raise MalformedInputError("a quadratic-growth family needs at least two samples with growing boundaries")
    rows: List[QuadGrowthSample] = []
    for A, depth in samples:
        members = _members(ball, A)
        boundary = len(vertex_boundary(ball, members))
        # depth > b/K - K  <=>  K * depth > b - K^2 for K > 0
        holds = K * depth > boundary - K * K
        rows.append(QuadGrowthSample(len(members), boundary, int(depth), holds))
    sizes = [r.boundary_size for r in rows]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise MalformedInputError(f"sample boundaries must strictly increase, got {sizes}")
    cert = QuadGrowthCertificate(K, rows)
    logger.info("quadratic-growth certificate K=%s over %d samples: holds=%s", K, len(rows), cert.holds)
    return cert


@dataclass
class CrossingAudit:
    K: Fraction
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def met(self) -> bool:
        return all(r["ok"] for r in self.rows)

    @property
    def verdict(self) -> str:
        return HYPOTHESES_MET if self.met else HYPOTHESES_UNMET

    @property
    def failed_clause(self) -> Optional[int]:
        for r in self.rows:
            if not r["ok"]:
                return r["failed_clause"]
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "K": fmt_rational(self.K),
            "verdict": self.verdict,
            "failed_clause": self.failed_clause,
            "conclusion": IMPLIED_CONCLUSION if self.met else None,
            "rows": list(self.rows),
        }


def lemma66_harness(
    ball: Ball,
    ce: CrossExaminer,
    Z: Sequence[Any],
    d: Sequence[int],
    K: Rational,
    validation: Optional[CEValidationReport] = None,
) -> CrossingAudit:
    """
    Audit connected sets Z_n against a cross-examiner's rays

    Per n the clauses are:
      1. Z_n meets all three rays gamma_1, gamma_2, gamma_3
      2. |Z_n| < K d_n + K
      3. dist(v0, Z_n) > d_n / K - K

    Args:
        ball: Ball containing v0, the rays' stored segments and every Z_n
        ce: Cross-examiner; it must pass CE1-CE6 in ``ball``
        Z: Connected vertex sets (PathRecords or vertex collections)
        d: Scale parameters, one per set
        K: Positive rational constant
        validation: Report from ``validate_cross_examiner`` for this ce; the
            audit runs the validation itself when omitted

    Raises:
        MalformedInputError: a Z_n is disconnected or the lists differ in length
        PreconditionError: the cross-examiner has not passed validation
    """
    K = as_rational(K)
    if K <= 0:
        raise MalformedInputError(f"K must be positive, got {K}")
    if len(Z) != len(d):
        raise MalformedInputError(f"{len(Z)} sets but {len(d)} scale values")
    if validation is None:
        validation = validate_cross_examiner(ball, ce)
    elif validation.ce != ce:
        raise PreconditionError("validation report belongs to a different cross-examiner")
    if not validation.passed:
        raise PreconditionError(
            f"crossing-set audit needs a validated cross-examiner; it fails {', '.join(validation.failed)}",
            details={"failed": validation.failed},
        )
    rays = [set(ball.indices_of(g.vertices)) for g in ce.gamma]
    from_v0 = bfs_from(ball, [ball.index_of(ce.v0)])
    audit = CrossingAudit(K)
    for n, (Zn, dn) in enumerate(zip(Z, d)):
        members = _members(ball, Zn)
        if not connected_indices(ball, members):
            raise MalformedInputError(f"Z_{n} is not connected")
        member_set = set(members)
        meets = [bool(member_set & ray) for ray in rays]
        size_bound = K * dn + K
        distance = min(from_v0[i] for i in members)
        distance_bound = Fraction(dn) / K - K
        clauses = [all(meets), len(members) < size_bound, distance > distance_bound]
        failed = next((k + 1 for k, ok in enumerate(clauses) if not ok), None)
        audit.rows.append({
            "n": n,
            "d": dn,
            "size": len(members),
            "size_bound": fmt_rational(size_bound),
            "distance": distance,
            "distance_bound": fmt_rational(distance_bound),
            "meets": meets,
            "ok": failed is None,
            "failed_clause": failed,
        })
    logger.info("crossing-set audit over %d sets: %s", len(Z), audit.verdict)
    return audit
