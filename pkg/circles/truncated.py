"""
Truncated quasi-circles: chord extraction from long loops, and the loop
enclosure scenario that traps a witness inside a finite region.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from graphs.ball import Ball
from graphs.errors import ExtractionError, HypothesisError, MalformedInputError
from metric.certify import Rational, as_rational, check_constants, fmt_rational
from metric.distances import bfs_from, path_to_set
from metric.paths import LOOP, PathRecord
from separation.components import decompose
from separation.witnesses import (
    WitnessPair,
    adjacent_steps,
    audit_connector_scenario,
    end_runs,
    joins_end_runs,
)

from .loops import QuasiCircle, certify_quasi_circle

logger = logging.getLogger(__name__)

ENCLOSED = "enclosed"
OPEN = "open"
VACUOUS_FAIL = "vacuous-fail"


@dataclass
class TruncatedQuasiCircle:
    """
    T = F . f where F . F' is a quasi-circle and f shares the endpoints of F'.

    ``extension`` is F'; ``certificate`` is the result of certifying T itself
    as a closed loop at (lam, c).
    """

    major: PathRecord
    minor: PathRecord
    extension: PathRecord
    lam: Fraction
    c: Fraction
    certificate: Any = None
    scan_log: List[str] = field(default_factory=list)

    @property
    def endpoints(self) -> Tuple[Any, Any]:
        return self.major.start, self.major.end

    @property
    def loop(self) -> PathRecord:
        return PathRecord(self.major.concat(self.minor).vertices, LOOP)

    @property
    def certified(self) -> bool:
        return isinstance(self.certificate, QuasiCircle)

    def to_dict(self) -> Dict[str, Any]:
        cert = self.certificate.certificate if self.certified else self.certificate
        return {
            "lambda": fmt_rational(self.lam),
            "c": fmt_rational(self.c),
            "major_length": self.major.length,
            "minor_length": self.minor.length,
            "extension_length": self.extension.length,
            "endpoints": [list(v) if isinstance(v, tuple) else v for v in self.endpoints],
            "certified": self.certified,
            "certificate": cert.to_dict() if cert is not None else None,
            "scan_log": list(self.scan_log),
        }


def _cyclic_runs(flags: List[bool]) -> List[List[int]]:
    """Maximal cyclic runs of True positions; a fully True cycle is one run."""
    n = len(flags)
    if all(flags):
        return [list(range(n))]
    start = next(k for k in range(n) if not flags[k])
    runs, current = [], []
    for step in range(1, n + 1):
        k = (start + step) % n
        if flags[k]:
            current.append(k)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def chord_extraction(
    ball: Ball,
    rho: PathRecord,
    loop: Union[QuasiCircle, PathRecord],
    sigma: int,
    exclusion_radius: int,
    lam: Optional[Rational] = None,
    c: Optional[Rational] = None,
) -> TruncatedQuasiCircle:
    """
    Cut a truncated quasi-circle out of a loop that follows rho near the center

    The major face is the loop run that stays outside N_sigma(rho), whose
    ends are (sigma+1)-close to the two parts of rho outside the exclusion
    ball; the farthest such run from the center wins. The minor face drops
    from the run's end to rho by a geodesic, follows rho, and climbs back.
    T is certified against (lam, c + 5 sigma + 5).

    Raises:
        ExtractionError: with the scan log when no run qualifies
    """
    if isinstance(loop, QuasiCircle):
        base_lam, base_c, path = loop.lam, loop.c, loop.loop
    elif lam is None or c is None:
        raise MalformedInputError("a bare loop needs its quasi-circle constants lam and c")
    else:
        base_lam, base_c, path = as_rational(lam), as_rational(c), loop
    lam_t, c_t = check_constants(base_lam, base_c + 5 * sigma + 5)
    log: List[str] = []
    cycle = ball.indices_of(path.cycle)
    rho_idx = ball.indices_of(rho.vertices)
    rho_set = set(rho_idx)

    if all(ball.dist[i] <= exclusion_radius for i in cycle):
        log.append(f"loop never leaves the exclusion ball of radius {exclusion_radius}")
        raise ExtractionError("no subsegment of the loop exits the exclusion ball", log)
    strays = [ball.vertices[i] for i in cycle if ball.dist[i] <= exclusion_radius and i not in rho_set]
    if strays:
        log.append(f"loop leaves rho inside the exclusion ball at {strays[0]!r}")
        raise ExtractionError("loop must coincide with rho inside the exclusion ball", log)

    inside = [k for k, i in enumerate(rho_idx) if ball.dist[i] <= exclusion_radius]
    if not inside:
        raise ExtractionError("rho does not pass through the exclusion ball", log)
    rho_minus = rho_idx[:inside[0]]
    rho_plus = rho_idx[inside[-1] + 1:]
    to_minus = bfs_from(ball, rho_minus) if rho_minus else [-1] * len(ball)
    to_plus = bfs_from(ball, rho_plus) if rho_plus else [-1] * len(ball)
    to_rho = bfs_from(ball, rho_idx, limit=sigma)

    def close(table: List[int], i: int) -> bool:
        return 0 <= table[i] <= sigma + 1

    candidates = []
    for run in _cyclic_runs([to_rho[i] < 0 for i in cycle]):
        a, b = cycle[run[0]], cycle[run[-1]]
        if (close(to_minus, a) and close(to_plus, b)) or (close(to_plus, a) and close(to_minus, b)):
            reach = min(ball.dist[cycle[k]] for k in run)
            candidates.append((reach, len(run), run))
            log.append(f"run of {len(run)} from {ball.vertices[a]!r} to {ball.vertices[b]!r}: qualifies")
        else:
            log.append(f"run of {len(run)} from {ball.vertices[a]!r} to {ball.vertices[b]!r}: ends not near opposite sides")
    if not candidates:
        raise ExtractionError("no loop run outside N_sigma(rho) joins the two sides of rho", log)
    _, _, run = max(candidates, key=lambda t: (t[0], t[1], -t[2][0]))

    major = PathRecord(tuple(ball.vertices[cycle[k]] for k in run))
    n = len(cycle)
    rest = [cycle[(run[-1] + k) % n] for k in range(0, n - len(run) + 2)]
    extension = PathRecord(tuple(ball.vertices[i] for i in rest))

    a_idx, b_idx = cycle[run[0]], cycle[run[-1]]
    down = path_to_set(ball, b_idx, rho_idx)
    up = list(reversed(path_to_set(ball, a_idx, rho_idx)))
    pos = {i: k for k, i in enumerate(rho_idx)}
    s, e = pos[down[-1]], pos[up[0]]
    along = rho_idx[s:e + 1] if s <= e else list(reversed(rho_idx[e:s + 1]))
    minor_idx = down + along[1:] + up[1:]
    minor = PathRecord(tuple(ball.vertices[i] for i in minor_idx))

    truncated = TruncatedQuasiCircle(major, minor, extension, lam_t, c_t, scan_log=log)
    truncated.certificate = certify_quasi_circle(ball, truncated.loop, lam_t, c_t)
    logger.info(
        "chord extraction: major %d, minor %d, certified at (%s, %s): %s",
        major.length, minor.length, lam_t, c_t, truncated.certified,
    )
    return truncated


@dataclass
class EnclosureReport:
    verdict: str
    audit: List[Dict[str, Any]]
    loop: Optional[PathRecord]
    component: Optional[int]
    enclosed_count: int

    @property
    def enclosed(self) -> bool:
        return self.verdict == ENCLOSED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "audit": list(self.audit),
            "loop_length": self.loop.length if self.loop is not None else None,
            "component": self.component,
            "enclosed_components": self.enclosed_count,
        }


def loop_enclosure_scenario(
    ball: Ball,
    rho: PathRecord,
    pair: WitnessPair,
    p: PathRecord,
    q1: PathRecord,
    q2: PathRecord,
    sigma: int,
) -> EnclosureReport:
    """
    Check that w1(0) is trapped by the loop l = s^-1 . q2

    Clauses 1-5 are the connector audit shared with the chord check. Then:

      6. q1 joins the two end runs of rho outside K = N_{10 sigma}(p) and
         avoids K and N_sigma(w2)
      7. rho minus K' = N_{10 sigma}(q1) leaves two end runs
      8. q2 starts and ends on those runs and avoids K' and N_sigma(w2)
      9. s is the part of rho between the ends of q2 and l closes up

    The verdict is 'enclosed' when the component of w1(0) in ball minus
    N_sigma(l) avoids the boundary sphere, 'vacuous-fail' when l encloses
    nothing (or swallows w1(0)), and 'open' otherwise.

    Raises:
        HypothesisError: naming the first failing clause
    """
    audit, _, runs = audit_connector_scenario(ball, rho, pair, p, sigma)

    def record(clause: int, ok: bool, detail: str):
        audit.append({"clause": clause, "ok": ok, "detail": detail})
        if not ok:
            raise HypothesisError(clause, detail, audit)

    rho_idx = ball.indices_of(rho.vertices)
    p_idx = ball.indices_of(p.vertices)
    w2_near = bfs_from(ball, ball.indices_of(pair.w2.vertices), limit=sigma)
    p_near = bfs_from(ball, p_idx, limit=10 * sigma)
    q1_idx = ball.indices_of(q1.vertices)
    record(
        6,
        adjacent_steps(ball, q1_idx)
        and joins_end_runs(rho_idx, runs, q1_idx)
        and all(p_near[i] < 0 and w2_near[i] < 0 for i in q1_idx),
        "q1 must join the end runs of rho avoiding N_10sigma(p) and N_sigma(w2)",
    )
    inner_runs = end_runs(ball, rho_idx, q1_idx, 10 * sigma)
    record(7, inner_runs is not None, "rho minus N_10sigma(q1) must leave two end runs")

    q2_idx = ball.indices_of(q2.vertices)
    q1_near = bfs_from(ball, q1_idx, limit=10 * sigma)
    pos = {i: k for k, i in enumerate(rho_idx)}

    def on_runs(i: int) -> bool:
        return i in pos and any(lo <= pos[i] <= hi for lo, hi in inner_runs)

    record(
        8,
        adjacent_steps(ball, q2_idx)
        and on_runs(q2_idx[0])
        and on_runs(q2_idx[-1])
        and all(q1_near[i] < 0 and w2_near[i] < 0 for i in q2_idx),
        "q2 must run between the end runs of rho avoiding N_10sigma(q1) and N_sigma(w2)",
    )
    a, b = pos[q2_idx[0]], pos[q2_idx[-1]]
    s_idx = rho_idx[a:b + 1] if a <= b else list(reversed(rho_idx[b:a + 1]))
    loop_idx = list(reversed(s_idx)) + q2_idx[1:]
    record(9, loop_idx[0] == loop_idx[-1], "s^-1 . q2 must close up")

    loop = PathRecord(tuple(ball.vertices[i] for i in loop_idx), LOOP) if len(loop_idx) > 1 else None
    decomposition = decompose(ball, [ball.vertices[i] for i in loop_idx], sigma, 0)
    enclosed = [c for c in decomposition.components if c.enclosed]
    start = ball.index_of(pair.w1.start)
    cid = decomposition.label[start]
    if not enclosed or cid < 0:
        verdict = VACUOUS_FAIL
        cid = None if cid < 0 else cid
    elif decomposition.components[cid].enclosed:
        verdict = ENCLOSED
    else:
        verdict = OPEN
    if verdict == OPEN:
        logger.error("loop enclosure: w1(0) sits in an open component of ball minus N_%d(l)", sigma)
    else:
        logger.info("loop enclosure verdict: %s", verdict)
    return EnclosureReport(verdict, audit, loop, cid, len(enclosed))
