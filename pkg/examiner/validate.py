"""
Finite-scale audit of the six cross-examiner axioms, and the pairwise
witness separation that follows from them.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from graphs.ball import Ball
from graphs.errors import MarginError, OutOfBallError, PreconditionError
from metric.certify import CERTIFIED, INDETERMINATE, certify_quasi_geodesic
from metric.distances import bfs_from
from metric.paths import PathRecord
from separation.components import label_components

from .construct import AXIOMS, CrossExaminer, cyc

logger = logging.getLogger(__name__)

SEPARATED = "separated"
NOT_SEPARATED = "not-separated"
SEPARATION_INDETERMINATE = "indeterminate"


@dataclass
class AxiomResult:
    axiom: str
    ok: bool
    checks: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def witness(self) -> Optional[Any]:
        """Witness of the first failing index, if any."""
        for check in self.checks:
            if not check["ok"]:
                return check.get("witness")
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {"axiom": self.axiom, "ok": self.ok, "witness": _jsonable(self.witness), "checks": _jsonable(self.checks)}


@dataclass
class CEValidationReport:
    ce: CrossExaminer
    results: Dict[str, AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results.values())

    @property
    def failed(self) -> List[str]:
        return [a for a in AXIOMS if not self.results[a].ok]

    def __getitem__(self, axiom: str) -> AxiomResult:
        return self.results[axiom]

    def flags(self) -> Dict[str, bool]:
        return {a: self.results[a].ok for a in AXIOMS}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "failed": self.failed,
            "axioms": [self.results[a].to_dict() for a in AXIOMS],
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _piece_indices(ball: Ball, name: str, path: PathRecord) -> List[int]:
    try:
        idx = ball.indices_of(path.vertices)
    except OutOfBallError as e:
        raise MarginError(f"{name} leaves the ball of radius {ball.radius} at {e.vertex!r}")
    touching = [i for i in idx if ball.on_boundary(i)]
    if touching:
        raise MarginError(f"{name} reaches the boundary sphere at {ball.vertices[touching[0]]!r}")
    return idx


def _runs(flags: Sequence[bool]) -> List[Tuple[int, int]]:
    """Maximal [lo, hi] position ranges where flags hold."""
    runs, lo = [], None
    for k, flag in enumerate(flags):
        if flag and lo is None:
            lo = k
        elif not flag and lo is not None:
            runs.append((lo, k - 1))
            lo = None
    if lo is not None:
        runs.append((lo, len(flags) - 1))
    return runs


def ray_extent(ball: Ball, ce: CrossExaminer) -> int:
    """Largest distance from the center reached by any gamma or w."""
    return max(ball.dist_from_center(v) for path in ce.gamma + ce.w for v in path.vertices)


@dataclass
class RhoSides:
    """Components of {dist(., rho_i) > sigma, dc <= extent}, with their depths."""

    to_rho: List[int]
    label: List[int]
    depth: List[int]

    def components_of(self, idx: Sequence[int]) -> Set[int]:
        return {self.label[j] for j in idx if self.label[j] >= 0}


def rho_sides(ball: Ball, rho_idx: Sequence[int], sigma: int, extent: int) -> RhoSides:
    to_rho = bfs_from(ball, rho_idx)
    keep = [to_rho[j] > sigma and ball.dist[j] <= extent for j in range(len(ball))]
    label = [-1] * len(ball)
    depth = []
    for cid, comp in enumerate(label_components(ball, keep)):
        for j in comp:
            label[j] = cid
        depth.append(max(to_rho[j] for j in comp))
    return RhoSides(to_rho, label, depth)


def validate_cross_examiner(ball: Ball, ce: CrossExaminer) -> CEValidationReport:
    """
    Audit CE1-CE6 on the stored pieces

    The rays are segments, so CE3 and CE4 only speak about the stored range:
    components are taken inside the ball of radius ``ray_extent`` where the
    rays end. Each result lists one check per index i with a witness on
    failure (the offending pair, vertex or parameter).

    Args:
        ball: Ball around v0; radius at least twice the ray extent keeps every
            CE1 distance exact
        ce: Cross-examiner under audit

    Raises:
        MarginError: a piece leaves the ball or touches its boundary sphere
    """
    idx = {name: _piece_indices(ball, name, path) for name, path in ce.pieces()}
    v0 = ball.index_of(ce.v0)
    sigma = ce.sigma
    extent = ray_extent(ball, ce)
    rho_idx = {i: ball.indices_of(ce.rho(i).vertices) for i in (1, 2, 3)}
    sides = {i: rho_sides(ball, rho_idx[i], sigma, extent) for i in (1, 2, 3)}
    results: Dict[str, AxiomResult] = {}

    checks = []
    for i in (1, 2, 3):
        cert = certify_quasi_geodesic(ball, ce.rho(i), ce.lam, ce.c)
        check = {"i": i, "ok": cert.status == CERTIFIED, "status": cert.status}
        if cert.status == INDETERMINATE:
            check["note"] = "ball too small to decide; enlarge the ball"
        if not check["ok"]:
            check["witness"] = cert.to_dict()
        checks.append(check)
    results["CE1"] = AxiomResult("CE1", all(c["ok"] for c in checks), checks)

    q_all = idx["q1"] + idx["q2"] + idx["q3"]
    near_q = bfs_from(ball, q_all, limit=10 * sigma)
    checks = []
    for i in (1, 2, 3):
        seq = rho_idx[i]
        runs = _runs([near_q[j] < 0 for j in seq])
        start = idx[f"w{i}"][0]

        def run_ids(target: int) -> Set[int]:
            return {k for k, (lo, hi) in enumerate(runs) if any(seq[p] == target for p in range(lo, hi + 1))}

        shared = run_ids(start) & run_ids(v0)
        check = {"i": i, "ok": bool(shared)}
        if not shared:
            where = "off rho" if start not in seq else "in another run"
            check["witness"] = {"vertex": ce.w_(i).start, "reason": f"w{i}(0) lies {where}"}
        checks.append(check)
    results["CE2"] = AxiomResult("CE2", all(c["ok"] for c in checks), checks)

    checks = []
    for i in (1, 2, 3):
        side = sides[i]
        w_comps = side.components_of(idx[f"w{i}"])
        g_comps = side.components_of(idx[f"gamma{i}"])
        problem = None
        if len(w_comps) != 1 or len(g_comps) != 1:
            problem = f"w{i} meets {len(w_comps)} and gamma{i} meets {len(g_comps)} components outside N_sigma(rho{i})"
        elif w_comps == g_comps:
            problem = f"w{i} and gamma{i} share component {min(w_comps)}"
        else:
            shallow = [c for c in w_comps | g_comps if side.depth[c] < 10 * sigma]
            if shallow:
                problem = f"component {shallow[0]} has depth {side.depth[shallow[0]]} < {10 * sigma}"
        check = {"i": i, "ok": problem is None, "components": [sorted(w_comps), sorted(g_comps)]}
        if problem:
            check["witness"] = problem
        checks.append(check)
    results["CE3"] = AxiomResult("CE3", all(c["ok"] for c in checks), checks)

    checks = []
    for i in (1, 2, 3):
        to_rho = sides[i].to_rho
        w_idx = idx[f"w{i}"]
        t = next((t for t in range(ce.r + 1, len(w_idx)) if to_rho[w_idx[t]] <= 10 * sigma), None)
        check = {"i": i, "ok": t is None}
        if t is not None:
            j = w_idx[t]
            check["witness"] = {"t": t, "vertex": ball.vertices[j], "distance": to_rho[j]}
        checks.append(check)
    results["CE4"] = AxiomResult("CE4", all(c["ok"] for c in checks), checks)

    checks = []
    for i in (1, 2, 3):
        q = idx[f"q{i}"]
        first, second = cyc(i, 1), cyc(i, 2)
        forbidden = idx[f"w{first}"] + idx[f"w{second}"] + idx[f"gamma{i}"]
        near = bfs_from(ball, forbidden, limit=10 * sigma)
        witness = None
        if q[0] not in set(idx[f"gamma{first}"]):
            witness = {"vertex": ball.vertices[q[0]], "reason": f"q{i} does not start on gamma{first}"}
        elif q[-1] not in set(idx[f"gamma{second}"]):
            witness = {"vertex": ball.vertices[q[-1]], "reason": f"q{i} does not end on gamma{second}"}
        else:
            hit = next((j for j in q if near[j] >= 0), None)
            if hit is not None:
                witness = {
                    "vertex": ball.vertices[hit],
                    "distance": near[hit],
                    "reason": f"q{i} within {10 * sigma} of w{first}, w{second} or gamma{i}",
                }
        check = {"i": i, "ok": witness is None}
        if witness:
            check["witness"] = witness
        checks.append(check)
    results["CE5"] = AxiomResult("CE5", all(c["ok"] for c in checks), checks)

    from_v0 = bfs_from(ball, [v0])
    lo, hi = ce.r + 10 * sigma, ce.R - 10 * sigma
    checks = []
    for i in (1, 2, 3):
        bad = next((j for j in idx[f"q{i}"] if not lo < from_v0[j] <= hi), None)
        check = {"i": i, "ok": bad is None}
        if bad is not None:
            check["witness"] = {"vertex": ball.vertices[bad], "distance": from_v0[bad], "window": [lo, hi]}
        checks.append(check)
    results["CE6"] = AxiomResult("CE6", all(c["ok"] for c in checks), checks)

    report = CEValidationReport(ce, results)
    if report.passed:
        logger.info("cross-examiner passes CE1-CE6 in %r", ball)
    else:
        logger.warning("cross-examiner fails %s", ", ".join(report.failed))
    return report


@dataclass
class SeparationReport:
    sigma: int
    rows: List[Dict[str, Any]]

    @property
    def status(self) -> str:
        statuses = {row["status"] for row in self.rows}
        if NOT_SEPARATED in statuses:
            return NOT_SEPARATED
        if SEPARATION_INDETERMINATE in statuses:
            return SEPARATION_INDETERMINATE
        return SEPARATED

    @property
    def separated(self) -> bool:
        return self.status == SEPARATED

    def to_dict(self) -> Dict[str, Any]:
        return {"sigma": self.sigma, "status": self.status, "rows": _jsonable(self.rows)}


def witness_separation_check(
    ball: Ball,
    ce: CrossExaminer,
    validation: Optional[CEValidationReport],
    sigma: Optional[int] = None,
) -> SeparationReport:
    """
    Check that w_i and w_{i+1} sit in distinct deep components around rho_i

    Components are those of ball minus N_sigma(rho_i), cut off at the ray
    extent. A witness with no vertex outside the neighborhood makes the row
    indeterminate.

    Args:
        ball: Ball the validation ran in
        ce: Cross-examiner
        validation: Report from ``validate_cross_examiner`` for this ce
        sigma: Override of ce.sigma

    Raises:
        PreconditionError: validation missing or run on another cross-examiner
    """
    if validation is None:
        raise PreconditionError("run validate_cross_examiner before the separation check")
    if validation.ce is not ce and validation.ce != ce:
        raise PreconditionError("validation report belongs to a different cross-examiner")
    sigma = ce.sigma if sigma is None else sigma
    extent = ray_extent(ball, ce)
    rows = []
    for i in (1, 2, 3):
        j = cyc(i, 1)
        side = rho_sides(ball, ball.indices_of(ce.rho(i).vertices), sigma, extent)
        comps = [side.components_of(ball.indices_of(ce.w_(k).vertices)) for k in (i, j)]
        row: Dict[str, Any] = {"rho": i, "pair": [f"w{i}", f"w{j}"], "components": [sorted(c) for c in comps]}
        if not comps[0] or not comps[1]:
            row["status"] = SEPARATION_INDETERMINATE
            row["reason"] = f"N_{sigma}(rho{i}) swallows a witness"
        elif len(comps[0]) == 1 and len(comps[1]) == 1 and comps[0] != comps[1] and all(
            side.depth[c] >= 10 * sigma for c in comps[0] | comps[1]
        ):
            row["status"] = SEPARATED
        else:
            row["status"] = NOT_SEPARATED
        rows.append(row)
    report = SeparationReport(sigma, rows)
    logger.info("witness separation at sigma=%d: %s", sigma, report.status)
    return report
