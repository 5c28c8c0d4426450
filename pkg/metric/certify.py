"""
(lambda, c)-quasi-geodesic certification in exact rational arithmetic.

A pair of parameters (s, t) passes when lambda * (d + c) >= t - s. A pair
whose ball distance already fails is a definite violation, since the true
distance never exceeds the ball distance. A non-exact pair that passes
only on the ball distance is re-tested with the lower bound from
``BallMetric.lower_bound``; if that is inconclusive the result is
indeterminate.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from graphs.ball import Ball
from graphs.errors import DomainError, MalformedInputError

from .distances import metric_for
from .paths import LOOP, PathRecord

Rational = Union[int, Fraction, str]

CERTIFIED = "certified"
VIOLATED = "violated"
INDETERMINATE = "indeterminate"


def as_rational(x: Any) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10_000)
    return Fraction(x)


def fmt_rational(x: Fraction) -> str:
    return str(Fraction(x))


def check_constants(lam: Rational, c: Rational) -> Tuple[Fraction, Fraction]:
    lam, c = as_rational(lam), as_rational(c)
    if lam < 1:
        raise DomainError(f"lambda must be >= 1, got {lam}")
    if c < 0:
        raise DomainError(f"c must be >= 0, got {c}")
    return lam, c


@dataclass(frozen=True)
class QGCertificate:
    lam: Fraction
    c: Fraction
    exact: bool
    worst_pair: Tuple[int, int, int]
    status: str = CERTIFIED

    @property
    def ok(self) -> bool:
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "lambda": fmt_rational(self.lam),
            "c": fmt_rational(self.c),
            "exact": self.exact,
            "worst_pair": list(self.worst_pair),
        }


@dataclass(frozen=True)
class QGViolation:
    lam: Fraction
    c: Fraction
    pair: Tuple[int, int]
    distance: int
    exact: bool
    status: str = VIOLATED

    @property
    def ok(self) -> bool:
        return False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "lambda": fmt_rational(self.lam),
            "c": fmt_rational(self.c),
            "pair": list(self.pair),
            "distance": self.distance,
            "exact": self.exact,
        }


@dataclass(frozen=True)
class QGIndeterminate:
    lam: Fraction
    c: Fraction
    pair: Tuple[int, int]
    ball_distance: int
    lower_bound: int
    status: str = INDETERMINATE

    @property
    def ok(self) -> bool:
        return False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "lambda": fmt_rational(self.lam),
            "c": fmt_rational(self.c),
            "pair": list(self.pair),
            "ball_distance": self.ball_distance,
            "lower_bound": self.lower_bound,
        }


QGResult = Union[QGCertificate, QGViolation, QGIndeterminate]


def scan_pairs(
    ball: Ball,
    pairs: Iterable[Tuple[Tuple[int, int], int, int, int]],
    lam: Fraction,
    c: Fraction,
) -> QGResult:
    """
    Evaluate labelled pairs (label, i, j, span) against lambda * (d + c) >= span.

    Pairs must arrive grouped by source index i so each BFS is reused. A
    definite violation wins over any indeterminate pair; the reported one
    has the largest deficit, earliest in scan order among ties.
    """
    metric = metric_for(ball)
    worst: Optional[Tuple[Fraction, Tuple[int, int], int]] = None
    all_exact = True
    undecided: Optional[QGIndeterminate] = None
    violation: Optional[Tuple[Fraction, QGViolation]] = None
    for label, i, j, span in pairs:
        d = metric.distance(i, j)
        exact = metric.exact(i, j, d)
        slack = d + c - Fraction(span) / lam
        if slack < 0:
            if violation is None or slack < violation[0]:
                violation = (slack, QGViolation(lam, c, label, d, exact))
            continue
        if violation is not None:
            continue
        if not exact:
            all_exact = False
            lb = metric.lower_bound(i, j, d)
            if lam * (lb + c) < span and undecided is None:
                undecided = QGIndeterminate(lam, c, label, d, lb)
        if worst is None or slack < worst[0]:
            worst = (slack, label, d)
    if violation is not None:
        return violation[1]
    if undecided is not None:
        return undecided
    if worst is None:
        return QGCertificate(lam, c, True, (0, 0, 0))
    return QGCertificate(lam, c, all_exact, (worst[1][0], worst[1][1], worst[2]))


def segment_pairs(idx: Sequence[int]) -> Iterator[Tuple[Tuple[int, int], int, int, int]]:
    n = len(idx)
    for s in range(n):
        for t in range(s + 1, n):
            yield (s, t), idx[s], idx[t], t - s


def loop_pairs(cycle_idx: Sequence[int]) -> Iterator[Tuple[Tuple[int, int], int, int, int]]:
    """(start, length) subpaths of a loop up to half its length."""
    m = len(cycle_idx)
    for i in range(m):
        for k in range(1, m // 2 + 1):
            yield (i, k), cycle_idx[i], cycle_idx[(i + k) % m], k


def certify_quasi_geodesic(ball: Ball, path: PathRecord, lam: Rational, c: Rational) -> QGResult:
    """
    Certify a path as a (lambda, c)-quasi-geodesic inside the ball

    Args:
        ball: Ball containing every vertex of the path
        path: Unit-speed segment
        lam: Multiplicative constant (>= 1)
        c: Additive constant (>= 0)

    Returns:
        QGCertificate, the first QGViolation, or QGIndeterminate naming the pair
    """
    lam, c = check_constants(lam, c)
    idx = ball.indices_of(path.vertices)
    return scan_pairs(ball, segment_pairs(idx), lam, c)


def loop_indices(ball: Ball, loop: PathRecord) -> List[int]:
    if loop.kind != LOOP:
        raise MalformedInputError("expected a closed loop")
    return ball.indices_of(loop.cycle)


def loop_best_lambda(ball: Ball, loop: PathRecord, c: Rational = 0) -> Optional[Fraction]:
    """Smallest lambda >= 1 for which the loop is a (lambda, c)-quasi-circle; None if unbounded."""
    c = as_rational(c)
    metric = metric_for(ball)
    best = Fraction(1)
    for _, i, j, span in loop_pairs(loop_indices(ball, loop)):
        denom = metric.distance(i, j) + c
        if denom <= 0:
            return None
        best = max(best, Fraction(span) / denom)
    return best


def path_best_lambda(ball: Ball, path: PathRecord, c: Rational = 0) -> Optional[Fraction]:
    """Smallest lambda >= 1 for which the segment is a (lambda, c)-quasi-geodesic."""
    c = as_rational(c)
    metric = metric_for(ball)
    best = Fraction(1)
    for _, i, j, span in segment_pairs(ball.indices_of(path.vertices)):
        denom = metric.distance(i, j) + c
        if denom <= 0:
            return None
        best = max(best, Fraction(span) / denom)
    return best
