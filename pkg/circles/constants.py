"""
Derived constants for quasi-circle arguments and the quadrilateral check
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from graphs.ball import Ball
from graphs.errors import HypothesisError, MalformedInputError
from metric.certify import Rational, as_rational, check_constants, fmt_rational, loop_best_lambda
from metric.distances import bfs_from
from metric.paths import PathRecord

from .loops import QuasiCircle, certify_quasi_circle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DerivedConstants:
    lam: Fraction
    c: Fraction
    delta: Fraction
    lam_prime: Fraction
    c_prime: Fraction
    K1: Fraction
    K2: Fraction

    def t_window(self, d: Rational) -> Tuple[Fraction, Fraction]:
        """Admissible range [2 lam d / (2 lam + 1), 2 lam d] for the ray cut-off t_i."""
        d = as_rational(d)
        return 2 * self.lam * d / (2 * self.lam + 1), 2 * self.lam * d

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": fmt_rational(self.lam),
            "c": fmt_rational(self.c),
            "delta": fmt_rational(self.delta),
            "lambda_prime": fmt_rational(self.lam_prime),
            "c_prime": fmt_rational(self.c_prime),
            "K1": fmt_rational(self.K1),
            "K2": fmt_rational(self.K2),
        }


def derived_constants(lam: Rational, c: Rational, delta: Rational = 1) -> DerivedConstants:
    """lambda' = 48 lam^3, c' = 2c, K1 = 21 lam^2 (1 + c), K2 = max(1, delta)."""
    lam, c = check_constants(lam, c)
    delta = as_rational(delta)
    return DerivedConstants(
        lam=lam,
        c=c,
        delta=delta,
        lam_prime=48 * lam ** 3,
        c_prime=2 * c,
        K1=21 * lam ** 2 * (1 + c),
        K2=max(Fraction(1), delta),
    )


@dataclass
class QuadrilateralReport:
    constants: DerivedConstants
    d: int
    audit: List[Dict[str, Any]]
    loop: PathRecord
    certified: bool
    result: Any
    best_lambda: Optional[Fraction]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "constants": self.constants.to_dict(),
            "d": self.d,
            "audit": list(self.audit),
            "length": self.loop.length,
            "certified": self.certified,
            "result": self.result.to_dict(),
            "best_lambda": fmt_rational(self.best_lambda) if self.best_lambda is not None else None,
        }


def _set_distance(ball: Ball, a: PathRecord, b: PathRecord) -> int:
    table = bfs_from(ball, ball.indices_of(b.vertices))
    return min(table[i] for i in ball.indices_of(a.vertices))


def quadrilateral_circle_check(
    ball: Ball,
    gamma1: PathRecord,
    gamma2: PathRecord,
    p1: PathRecord,
    p2: PathRecord,
    alpha: PathRecord,
    lam: Rational,
    c: Rational,
    T: Optional[PathRecord] = None,
) -> QuadrilateralReport:
    """
    Assemble Q = gamma2^-1 . gamma1 . p1 . alpha . p2^-1 and certify it at (48 lam^3, 2c)

    gamma1 and gamma2 are ray prefixes from a shared origin v0; p_i runs from
    the end of gamma_i to the target figure T (alpha by default) and alpha
    joins the ends of p1 and p2. With d = dist(v0, T) and t_i the prefix
    lengths, the audit checks in order:

      1. 2 lam d / (2 lam + 1) <= t_i <= 2 lam d
      2. 2 lam length(p_i) <= t_i
      3. dist(p1, p2) >= 2d / (2 lam + 1) - c
      4. dist(gamma_i, T) > d / (2 lam + 1)
      5. length(Q) <= 16 lam^2 d + c

    Raises:
        MalformedInputError: the pieces do not join up
        HypothesisError: naming the first failed inequality
    """
    constants = derived_constants(lam, c)
    lam, c = constants.lam, constants.c
    if gamma1.start != gamma2.start:
        raise MalformedInputError("gamma1 and gamma2 must start at the same vertex")
    if p1.start != gamma1.end or p2.start != gamma2.end:
        raise MalformedInputError("each p_i must start at the end of gamma_i")
    if alpha.start != p1.end or alpha.end != p2.end:
        raise MalformedInputError("alpha must join the far ends of p1 and p2")
    target = T if T is not None else alpha
    v0 = gamma1.start
    to_target = bfs_from(ball, ball.indices_of(target.vertices))
    d = to_target[ball.index_of(v0)]

    audit: List[Dict[str, Any]] = []

    def record(clause: int, ok: bool, claim: str, detail: str):
        audit.append({"clause": clause, "ok": ok, "claim": claim, "detail": detail})
        if not ok:
            raise HypothesisError(clause, f"{claim} ({detail})", audit)

    lo, hi = constants.t_window(d)
    t = (gamma1.length, gamma2.length)
    record(1, all(lo <= ti <= hi for ti in t), "2λd/(2λ+1) ≤ t_i ≤ 2λd",
           f"t = {t}, window [{fmt_rational(lo)}, {fmt_rational(hi)}]")
    record(2, all(2 * lam * p.length <= ti for p, ti in zip((p1, p2), t)), "2λ·length(p_i) ≤ t_i",
           f"lengths {(p1.length, p2.length)}, t = {t}")
    sep = _set_distance(ball, p1, p2)
    record(3, sep >= Fraction(2 * d) / (2 * lam + 1) - c, "dist(p_1, p_2) ≥ 2d/(2λ+1) − c", f"dist = {sep}, d = {d}")
    gap = min(min(to_target[i] for i in ball.indices_of(g.vertices)) for g in (gamma1, gamma2))
    record(4, gap > Fraction(d) / (2 * lam + 1), "dist(γ_i′, T) > d/(2λ+1)", f"dist = {gap}, d = {d}")

    body = gamma2.reversed().concat(gamma1).concat(p1).concat(alpha).concat(p2.reversed())
    loop = PathRecord(body.vertices, kind="loop")
    record(5, loop.length <= 16 * lam ** 2 * d + c, "length(Q) ≤ 16λ²d + c", f"length = {loop.length}, d = {d}")

    result = certify_quasi_circle(ball, loop, constants.lam_prime, constants.c_prime)
    best = loop_best_lambda(ball, loop, constants.c_prime)
    certified = isinstance(result, QuasiCircle)
    certificate = result.certificate if certified else result
    logger.info("quadrilateral of length %d (d=%d): certified=%s, best lambda %s", loop.length, d, certified, best)
    return QuadrilateralReport(constants, d, audit, loop, certified, certificate, best)
