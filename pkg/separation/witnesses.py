"""
Witness pairs: diverging paths in distinct deep components flanking a segment.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from graphs.ball import Ball
from graphs.errors import HypothesisError, PreconditionError
from metric.distances import bfs_from, hausdorff, restricted_geodesic
from metric.paths import PathRecord

from .components import ComponentReport, Decomposition, as_indices, decompose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WitnessPair:
    w1: PathRecord
    w2: PathRecord
    components: Tuple[int, int]
    profiles: Tuple[Tuple[int, ...], Tuple[int, ...]]
    floor: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "w1": self.w1.to_json(),
            "w2": self.w2.to_json(),
            "components": list(self.components),
            "profiles": [list(p) for p in self.profiles],
            "floor": self.floor,
        }


@dataclass(frozen=True)
class WitnessAbsence:
    reason: str
    components: Tuple[ComponentReport, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"reason": self.reason, "components": [c.to_dict() for c in self.components]}


def _climb(ball: Ball, decomposition: Decomposition, comp: ComponentReport) -> List[int]:
    depth = decomposition.tube.dist_to_base
    vertices = ball.vertices
    members = comp.members
    start = min(members, key=lambda i: (depth[i], ball.dist[i], vertices[i]))
    path = [start]
    current = start
    while True:
        up = [j for j in ball.adjacency[current] if j in members and depth[j] > depth[current]]
        if not up:
            break
        current = min(up, key=lambda j: (-depth[j], vertices[j]))
        path.append(current)
    if depth[current] < decomposition.depth_threshold:
        target = ball.index_of(comp.representative_deep_vertex)
        allowed = [False] * len(ball)
        for i in members:
            allowed[i] = True
        path.extend(restricted_geodesic(ball, current, target, allowed)[1:])
    return path


def find_witness_pair(ball: Ball, rho: PathRecord, sigma: int, D: int) -> Union[WitnessPair, WitnessAbsence]:
    """
    Greedy witnesses in the two deepest components of ball minus N_sigma(rho)

    Each witness starts at the component vertex closest to rho (then closest
    to the center, then least key) and repeatedly steps to the neighbor
    farthest from rho, least key on ties. w1 is the witness whose start is
    greater in the vertex order.

    Returns:
        WitnessPair, or WitnessAbsence with the component table when fewer
        than two deep components exist
    """
    decomposition = decompose(ball, rho, sigma, D)
    deep = decomposition.deep
    if len(deep) < 2:
        logger.info("%s: %d deep component(s), no witness pair", ball.family, len(deep))
        return WitnessAbsence(f"{len(deep)} deep component(s) in ball minus N_{sigma}(rho)", tuple(decomposition.components))
    chosen = sorted(deep, key=lambda c: (-c.max_depth_from_base, c.id))[:2]
    paths = [_climb(ball, decomposition, comp) for comp in chosen]
    if ball.vertices[paths[0][0]] < ball.vertices[paths[1][0]]:
        paths.reverse()
        chosen.reverse()
    depth = decomposition.tube.dist_to_base
    records = [PathRecord(tuple(ball.vertices[i] for i in p)) for p in paths]
    profiles = tuple(tuple(depth[i] for i in p) for p in paths)
    return WitnessPair(records[0], records[1], (chosen[0].id, chosen[1].id), profiles, D)


@dataclass
class ProtectionReport:
    hausdorff: int
    bound: int
    trimmed: Tuple[int, int]
    tails: Tuple[Optional[PathRecord], Optional[PathRecord]]
    components: Tuple[Optional[int], Optional[int]]
    preserved: bool
    reason: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "hausdorff": self.hausdorff,
            "bound": self.bound,
            "trimmed": list(self.trimmed),
            "tail_starts": [t.start if t is not None else None for t in self.tails],
            "components": list(self.components),
            "preserved": self.preserved,
            "reason": self.reason,
        }


def witness_protection_demo(
    ball: Ball,
    rho1: PathRecord,
    rho2: PathRecord,
    pair: WitnessPair,
    sigma: int,
    hausdorff_bound: int,
    D: Optional[int] = None,
) -> ProtectionReport:
    """
    Check that witness tails for rho1 still witness a Hausdorff-close rho2

    Each witness is cut after its last vertex within sigma + H of rho1, where
    H is the declared Hausdorff bound; the remaining tails must avoid
    N_sigma(rho2) and sit in distinct deep components of its complement.

    Raises:
        PreconditionError: the measured Hausdorff distance exceeds the bound
    """
    idx1, idx2 = as_indices(ball, rho1), as_indices(ball, rho2)
    measured, witness = hausdorff(ball, idx1, idx2)
    if measured > hausdorff_bound:
        raise PreconditionError(
            f"Hausdorff distance {measured} exceeds declared bound {hausdorff_bound}",
            details={"vertex": ball.vertices[witness], "distance": measured},
        )
    to_rho1 = bfs_from(ball, idx1)
    threshold = sigma + hausdorff_bound
    decomposition = decompose(ball, rho2, sigma, pair.floor if D is None else D)
    tube2 = decomposition.tube

    tails, trimmed, comps = [], [], []
    reason = ""
    for name, w in (("w1", pair.w1), ("w2", pair.w2)):
        widx = ball.indices_of(w.vertices)
        last_close = max((k for k, i in enumerate(widx) if to_rho1[i] <= threshold), default=-1)
        tail_idx = widx[last_close + 1:]
        trimmed.append(last_close + 1)
        tails.append(PathRecord(tuple(ball.vertices[i] for i in tail_idx)) if tail_idx else None)
        if not tail_idx:
            comps.append(None)
            reason = reason or f"{name} never clears N_{threshold}(rho1)"
            continue
        if any(i in tube2.members for i in tail_idx):
            comps.append(None)
            reason = reason or f"{name} tail meets N_{sigma}(rho2)"
            continue
        labels = {decomposition.label[i] for i in tail_idx}
        cid = labels.pop() if len(labels) == 1 else None
        comps.append(cid)
        if cid is None:
            reason = reason or f"{name} tail spans several components"
        elif not decomposition.components[cid].deep:
            reason = reason or f"{name} tail lies in a shallow component"

    preserved = not reason and comps[0] != comps[1]
    if not reason and not preserved:
        reason = "both tails share one component"
    logger.info("witness protection (H=%d, bound=%d): preserved=%s", measured, hausdorff_bound, preserved)
    return ProtectionReport(measured, hausdorff_bound, tuple(trimmed), tuple(tails), tuple(comps), preserved, reason)


@dataclass
class ChordReport:
    meets: List[int]
    audit: List[Dict[str, Any]]
    rho_plus: Tuple[int, int]
    rho_minus: Tuple[int, int]

    @property
    def contradiction(self) -> bool:
        return not self.meets

    def to_dict(self) -> Dict[str, Any]:
        return {
            "meets": list(self.meets),
            "contradiction": self.contradiction,
            "audit": list(self.audit),
            "rho_plus": list(self.rho_plus),
            "rho_minus": list(self.rho_minus),
        }


def end_runs(ball: Ball, rho_idx: Sequence[int], blocked: Sequence[int], radius: int) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """
    The two end runs of rho outside N_radius(blocked), as (first, last) parameter ranges.

    Returns None unless both ends of rho lie outside the neighborhood and the
    neighborhood meets rho somewhere in between.
    """
    near = bfs_from(ball, blocked, limit=radius)
    inside = [0 <= near[i] <= radius for i in rho_idx]
    if inside[0] or inside[-1] or not any(inside):
        return None
    first_in = inside.index(True)
    last_in = len(inside) - 1 - inside[::-1].index(True)
    return (0, first_in - 1), (last_in + 1, len(inside) - 1)


def adjacent_steps(ball: Ball, idx: Sequence[int]) -> bool:
    return all(b in ball.adjacency[a] for a, b in zip(idx, idx[1:]))


def joins_end_runs(
    rho_idx: Sequence[int],
    runs: Tuple[Tuple[int, int], Tuple[int, int]],
    q_idx: Sequence[int],
) -> bool:
    """True when q starts on one end run of rho and ends on the other."""
    pos = {i: k for k, i in enumerate(rho_idx)}

    def in_run(i: int, run: Tuple[int, int]) -> bool:
        return i in pos and run[0] <= pos[i] <= run[1]

    first, second = runs
    return (in_run(q_idx[0], first) and in_run(q_idx[-1], second)) or (
        in_run(q_idx[0], second) and in_run(q_idx[-1], first)
    )


def audit_connector_scenario(
    ball: Ball,
    rho: PathRecord,
    pair: WitnessPair,
    p: PathRecord,
    sigma: int,
) -> Tuple[List[Dict[str, Any]], Decomposition, Optional[Tuple[Tuple[int, int], Tuple[int, int]]]]:
    """
    Clauses shared by the chord and loop-enclosure scenarios

      1. rho is simple and spans the ball (both ends on the boundary sphere)
      2. ball minus N_sigma(rho) has exactly two wide candidates
      3. w1, w2 lie outside N_sigma(rho) in distinct wide candidates
      4. p is a path from w1(0) to w2(0)
      5. both ends of rho clear N_{10 sigma}(p), which meets rho in between

    Returns:
        (audit rows, decomposition of rho, (rho_minus, rho_plus) or None)
    """
    audit: List[Dict[str, Any]] = []

    def record(clause: int, ok: bool, detail: str):
        audit.append({"clause": clause, "ok": ok, "detail": detail})
        if not ok:
            raise HypothesisError(clause, detail, audit)

    rho_idx = ball.indices_of(rho.vertices)
    record(1, rho.is_simple() and ball.on_boundary(rho_idx[0]) and ball.on_boundary(rho_idx[-1]),
           "rho must be simple with both ends on the boundary sphere")
    decomposition = decompose(ball, rho, sigma, pair.floor)
    wide = decomposition.wide
    record(2, len(wide) == 2, f"{len(wide)} wide candidates in ball minus N_{sigma}(rho)")
    labels = []
    for w in (pair.w1, pair.w2):
        ids = {decomposition.label[i] for i in ball.indices_of(w.vertices)}
        labels.append(ids.pop() if len(ids) == 1 else -1)
    wide_ids = {c.id for c in wide}
    record(3, labels[0] in wide_ids and labels[1] in wide_ids and labels[0] != labels[1],
           f"witness components {labels} must be distinct wide candidates")
    p_idx = ball.indices_of(p.vertices)
    record(4, p.start == pair.w1.start and p.end == pair.w2.start and adjacent_steps(ball, p_idx),
           "p must be a path from w1(0) to w2(0)")
    runs = end_runs(ball, rho_idx, p_idx, 10 * sigma)
    record(5, runs is not None, f"rho minus N_{10 * sigma}(p) must leave two end runs")
    return audit, decomposition, runs


def chord_witness_check(
    ball: Ball,
    rho: PathRecord,
    pair: WitnessPair,
    p: PathRecord,
    q: PathRecord,
    sigma: int,
) -> ChordReport:
    """
    Which witnesses meet N_sigma(q) for a chord q joining the two ends of rho

    Hypotheses 1-5 are audited by ``audit_connector_scenario``; clause 6
    requires q to avoid N_{10 sigma}(p) and to run from one end run of rho to
    the other. An empty ``meets`` list is flagged as a contradiction.

    Raises:
        HypothesisError: naming the first failing clause
    """
    audit, _, runs = audit_connector_scenario(ball, rho, pair, p, sigma)
    rho_minus, rho_plus = runs
    rho_idx = ball.indices_of(rho.vertices)
    p_near = bfs_from(ball, ball.indices_of(p.vertices), limit=10 * sigma)
    q_idx = ball.indices_of(q.vertices)
    avoids = all(p_near[i] < 0 for i in q_idx)
    ok = avoids and joins_end_runs(rho_idx, runs, q_idx) and adjacent_steps(ball, q_idx)
    audit.append({"clause": 6, "ok": ok, "detail": "q must avoid N_10sigma(p) and join the two end runs of rho"})
    if not ok:
        raise HypothesisError(6, "q must avoid N_10sigma(p) and join the two end runs of rho", audit)

    to_q = bfs_from(ball, q_idx, limit=sigma)
    meets = [
        k for k, w in ((1, pair.w1), (2, pair.w2))
        if any(0 <= to_q[i] <= sigma for i in ball.indices_of(w.vertices))
    ]
    if not meets:
        logger.error("chord check: neither witness meets N_%d(q)", sigma)
    return ChordReport(meets, audit, rho_plus, rho_minus)
