"""
Cross-examiner data type, the explicit Z^2 construction, a negative tree
fixture and the mutation suite
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from graphs.errors import MalformedInputError, SizingError
from metric.certify import Rational, check_constants, fmt_rational
from metric.paths import PathRecord

logger = logging.getLogger(__name__)

AXIOMS = ("CE1", "CE2", "CE3", "CE4", "CE5", "CE6")
DEFAULT_R_SCALE = 22
MIN_R_SCALE = 21

# (start corner, first step, second step) for the counterclockwise quarter in quadrant k
_QUARTERS = {
    1: ((1, 0), (0, 1), (-1, 0)),
    2: ((0, 1), (-1, 0), (0, -1)),
    3: ((-1, 0), (0, -1), (1, 0)),
    4: ((0, -1), (1, 0), (0, 1)),
}


def cyc(i: int, k: int) -> int:
    """Index i + k on the cycle 1, 2, 3."""
    return (i - 1 + k) % 3 + 1


@dataclass(frozen=True)
class CrossExaminer:
    """
    v0 with three rays gamma, three witnesses w and three connectors q.

    Lists are 0-based in storage; ``gamma_(i)`` and friends take the 1-based
    index used in the axioms, with rho_i = gamma_{i+1}^-1 . gamma_{i+2}.
    """

    v0: Any
    gamma: Tuple[PathRecord, PathRecord, PathRecord]
    w: Tuple[PathRecord, PathRecord, PathRecord]
    q: Tuple[PathRecord, PathRecord, PathRecord]
    R: int
    r: int
    lam: Fraction
    c: Fraction
    sigma: int

    def gamma_(self, i: int) -> PathRecord:
        return self.gamma[i - 1]

    def w_(self, i: int) -> PathRecord:
        return self.w[i - 1]

    def q_(self, i: int) -> PathRecord:
        return self.q[i - 1]

    def rho(self, i: int) -> PathRecord:
        return self.gamma_(cyc(i, 1)).reversed().concat(self.gamma_(cyc(i, 2)))

    def pieces(self) -> List[Tuple[str, PathRecord]]:
        named = [(f"gamma{i}", self.gamma_(i)) for i in (1, 2, 3)]
        named += [(f"w{i}", self.w_(i)) for i in (1, 2, 3)]
        named += [(f"q{i}", self.q_(i)) for i in (1, 2, 3)]
        return named

    def with_piece(self, name: str, path: PathRecord) -> "CrossExaminer":
        """Copy with one named piece (gamma1..q3) swapped out."""
        kind, i = name[:-1], int(name[-1])
        if kind not in ("gamma", "w", "q") or not 1 <= i <= 3:
            raise ValueError(f"unknown piece {name!r}")
        parts = list(getattr(self, kind))
        parts[i - 1] = path
        return replace(self, **{kind: tuple(parts)})

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "v0": list(self.v0) if isinstance(self.v0, tuple) else self.v0,
            "R": self.R,
            "r": self.r,
            "lambda": fmt_rational(self.lam),
            "c": fmt_rational(self.c),
            "sigma": self.sigma,
        }
        for name, path in self.pieces():
            out[name] = path.to_json()
        return out

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "CrossExaminer":
        """Inverse of ``to_dict``; JSON arrays become tuple vertices."""

        def vertex(v: Any) -> Any:
            return tuple(v) if isinstance(v, list) else v

        def path(name: str) -> PathRecord:
            try:
                return PathRecord(tuple(vertex(v) for v in payload[name]))
            except KeyError:
                raise MalformedInputError(f"cross-examiner fixture lacks {name!r}")

        lam, c = check_constants(payload.get("lambda", 1), payload.get("c", 0))
        return cls(
            vertex(payload["v0"]),
            tuple(path(f"gamma{i}") for i in (1, 2, 3)),
            tuple(path(f"w{i}") for i in (1, 2, 3)),
            tuple(path(f"q{i}") for i in (1, 2, 3)),
            int(payload["R"]),
            int(payload["r"]),
            lam,
            c,
            int(payload.get("sigma", 1)),
        )


def l1_arc(radius: int, first_quadrant: int, quarters: int) -> PathRecord:
    """
    Staircase along the l1 circle of the given radius, counterclockwise

    The arc starts on the axis where ``first_quadrant`` begins (quadrant 1
    starts at (radius, 0)) and covers ``quarters`` quarter turns. Inner corners
    lie on norm ``radius``, outer corners on ``radius + 1``.
    """
    if radius < 1 or not 1 <= quarters <= 4 or first_quadrant not in _QUARTERS:
        raise ValueError(f"bad arc: radius={radius}, first_quadrant={first_quadrant}, quarters={quarters}")
    (sx, sy), _, _ = _QUARTERS[first_quadrant]
    pts = [(sx * radius, sy * radius)]
    for k in range(quarters):
        _, (ux, uy), (vx, vy) = _QUARTERS[(first_quadrant - 1 + k) % 4 + 1]
        for _ in range(radius):
            x, y = pts[-1]
            pts.append((x + ux, y + uy))
            pts.append((x + ux + vx, y + uy + vy))
    return PathRecord(tuple(pts))


def axis_ray(direction: Tuple[int, int], length: int) -> PathRecord:
    dx, dy = direction
    return PathRecord(tuple((dx * t, dy * t) for t in range(length + 1)))


def diagonal_staircase(first: Tuple[int, int], second: Tuple[int, int], length: int) -> PathRecord:
    """Alternating steps first, second, first, ... from the origin."""
    pts = [(0, 0)]
    for t in range(length):
        dx, dy = first if t % 2 == 0 else second
        x, y = pts[-1]
        pts.append((x + dx, y + dy))
    return PathRecord(tuple(pts))


def ce_sizes(sigma: int, r_scale: int = DEFAULT_R_SCALE) -> Dict[str, int]:
    """r, connector radius a, R and the smallest admissible halflength."""
    r = r_scale * sigma
    a = r + 10 * sigma + 1
    R = a + 1 + 10 * sigma
    return {"r": r, "a": a, "R": R, "min_halflength": R + 1}


def construct_ce_z2(
    sigma: int = 1,
    r_scale: int = DEFAULT_R_SCALE,
    halflength: int = 80,
    lam: Rational = 1,
    c: Rational = 0,
) -> CrossExaminer:
    """
    Explicit cross-examiner in Z^2 around the origin

    gamma1, gamma2, gamma3 run along +y, -x, +x; w1 runs along -y and w2, w3
    climb staircases through the first and second quadrants. Connectors are
    l1 arcs of radius a = r + 10 sigma + 1: q1 through the lower half plane,
    q2 through the first quadrant, q3 through the second.

    Args:
        sigma: Neighborhood scale
        r_scale: r = r_scale * sigma; below 21 the staircases come within
            10 sigma of their rho past parameter r
        halflength: Stored length of every ray

    Raises:
        SizingError: halflength <= R or r_scale too small
    """
    lam, c = check_constants(lam, c)
    if sigma < 1:
        raise ValueError(f"sigma must be >= 1, got {sigma}")
    sizes = ce_sizes(sigma, r_scale)
    if r_scale < MIN_R_SCALE:
        raise SizingError(f"r_scale={r_scale} puts the staircases within 10 sigma of rho after r", sizes["min_halflength"])
    if halflength < sizes["min_halflength"]:
        raise SizingError(f"halflength {halflength} leaves no ray beyond R={sizes['R']}", sizes["min_halflength"])
    H, a = halflength, sizes["a"]
    gamma = (axis_ray((0, 1), H), axis_ray((-1, 0), H), axis_ray((1, 0), H))
    w = (
        axis_ray((0, -1), H),
        diagonal_staircase((1, 0), (0, 1), H),
        diagonal_staircase((0, 1), (-1, 0), H),
    )
    q = (l1_arc(a, 3, 2), l1_arc(a, 1, 1), l1_arc(a, 2, 1))
    ce = CrossExaminer((0, 0), gamma, w, q, sizes["R"], sizes["r"], lam, c, sigma)
    logger.info("Z^2 cross-examiner: sigma=%d r=%d a=%d R=%d halflength=%d", sigma, sizes["r"], a, sizes["R"], H)
    return ce


def _tree_ray(prefix: Tuple[int, ...], length: int) -> PathRecord:
    """Root, then ``prefix``, then child 0 until the path has ``length`` steps."""
    steps = list(prefix) + [0] * (length - len(prefix))
    return PathRecord(tuple(tuple(steps[:t]) for t in range(length + 1)))


def construct_ce_tree(valence: int = 3, sigma: int = 1, halflength: int = 8) -> CrossExaminer:
    """
    Negative cross-examiner on the regular tree, rooted at its base

    gamma_i follows branch i - 1 from the root. w_i starts at the root as
    well; off rho_i the only exit is gamma_i's branch, so w_i runs along
    gamma_i for sigma + 1 steps before turning into a sibling subtree. Outside
    N_sigma(rho_i) both rays then sit in one component and CE3 fails.
    Connectors are the tree geodesics between gamma_{i+1} and gamma_{i+2}.

    Raises:
        SizingError: halflength too short to split w_i off gamma_i
    """
    if valence < 3:
        raise ValueError(f"a tree cross-examiner needs valence >= 3, got {valence}")
    if sigma < 1:
        raise ValueError(f"sigma must be >= 1, got {sigma}")
    split = sigma + 1
    if halflength < split + 2:
        raise SizingError(f"halflength {halflength} leaves no room to split w off gamma", split + 2)
    H = halflength
    gamma = tuple(_tree_ray((i,), H) for i in range(3))
    w = tuple(_tree_ray((i,) + (0,) * (split - 1) + (1,), H) for i in range(3))
    a = split + 1

    def connector(i: int) -> PathRecord:
        first, second = gamma[cyc(i, 1) - 1], gamma[cyc(i, 2) - 1]
        return first.subpath(0, a).reversed().concat(second.subpath(0, a))

    q = tuple(connector(i) for i in (1, 2, 3))
    ce = CrossExaminer((), gamma, w, q, H - 1, split, Fraction(1), Fraction(0), sigma)
    logger.info("tree:%d cross-examiner: sigma=%d halflength=%d split=%d", valence, sigma, H, split)
    return ce



def _hook(ray: PathRecord, side: Tuple[int, int]) -> PathRecord:
    """Replace the first step of a ray by a three-step detour to the given side."""
    v0, v1 = ray.vertices[0], ray.vertices[1]
    sx, sy = side
    detour = ((v0[0] + sx, v0[1] + sy), (v1[0] + sx, v1[1] + sy))
    return PathRecord((v0,) + detour + ray.vertices[1:])


def _spike(ray: PathRecord, at: int, side: Tuple[int, int]) -> PathRecord:
    """Step sideways and back at parameter ``at``."""
    v = ray.vertices[at]
    out = (v[0] + side[0], v[1] + side[1])
    return PathRecord(ray.vertices[:at + 1] + (out,) + ray.vertices[at:])


def _bent(first: Tuple[int, int], second: Tuple[int, int], corner: int, turn: Tuple[int, int], run: int) -> PathRecord:
    stair = diagonal_staircase(first, second, corner)
    x, y = stair.end
    tail = tuple((x + turn[0] * k, y + turn[1] * k) for k in range(1, run + 1))
    return PathRecord(stair.vertices + tail)


def mutation_suite(ce: CrossExaminer) -> List[Tuple[str, str, CrossExaminer]]:
    """
    Thirty (axiom, description, mutant) cases, five per axiom

    Built for ``construct_ce_z2`` output with sigma = 1; each mutant breaks
    exactly one axiom of the canonical instance. Spikes sit just past R, so
    the rays must extend at least R + 6.

    Raises:
        SizingError: rays too short to carry the spikes
    """
    sigma, r, R = ce.sigma, ce.r, ce.R
    a = r + 10 * sigma + 1
    H = min(g.length for g in ce.gamma)
    if H < R + 6:
        raise SizingError(f"mutation suite needs rays of length >= {R + 6}, got {H}", R + 6)
    spike_at = R + 2
    short = r // 2 + 1
    stair = 12 * sigma
    cases: List[Tuple[str, str, CrossExaminer]] = []

    def add(axiom: str, note: str, mutant: CrossExaminer):
        cases.append((axiom, note, mutant))

    def drop(name: str, k: int) -> PathRecord:
        piece = dict(ce.pieces())[name]
        return piece.subpath(k, piece.length)

    add("CE1", "gamma3 hooks below the axis", ce.with_piece("gamma3", _hook(ce.gamma_(3), (0, -1))))
    add("CE1", "gamma2 hooks below the axis", ce.with_piece("gamma2", _hook(ce.gamma_(2), (0, -1))))
    add("CE1", "gamma1 hooks left of the axis", ce.with_piece("gamma1", _hook(ce.gamma_(1), (-1, 0))))
    add("CE1", "gamma3 spikes upward past R", ce.with_piece("gamma3", _spike(ce.gamma_(3), spike_at, (0, 1))))
    add("CE1", "gamma1 spikes right past R", ce.with_piece("gamma1", _spike(ce.gamma_(1), spike_at, (1, 0))))

    add("CE2", "w1 starts below rho1", ce.with_piece("w1", drop("w1", 1)))
    add("CE2", "w2 starts inside the first quadrant", ce.with_piece("w2", drop("w2", 2)))
    add("CE2", "w3 starts inside the second quadrant", ce.with_piece("w3", drop("w3", 2)))
    add("CE2", "w1 starts three steps down", ce.with_piece("w1", drop("w1", 3)))
    add("CE2", "w3 starts four steps in", ce.with_piece("w3", drop("w3", 4)))

    add("CE3", "w1 is a short spur along gamma1", ce.with_piece("w1", axis_ray((0, 1), short)))
    add("CE3", "w2 is a short staircase into the fourth quadrant", ce.with_piece("w2", diagonal_staircase((1, 0), (0, -1), short)))
    add("CE3", "w3 is a short staircase into the third quadrant", ce.with_piece("w3", diagonal_staircase((-1, 0), (0, -1), short)))
    add("CE3", "w2 is a short staircase into the second quadrant", ce.with_piece("w2", diagonal_staircase((0, 1), (-1, 0), short)))
    add("CE3", "w3 is a short staircase into the first quadrant", ce.with_piece("w3", diagonal_staircase((0, 1), (1, 0), short)))

    add("CE4", "w1 turns left at depth 5", ce.with_piece("w1", _bent((0, -1), (0, -1), 5 * sigma, (-1, 0), r + 3 * sigma)))
    add("CE4", "w1 turns right at depth 5", ce.with_piece("w1", _bent((0, -1), (0, -1), 5 * sigma, (1, 0), r + 3 * sigma)))
    add("CE4", "w2 flattens along +x", ce.with_piece("w2", _bent((1, 0), (0, 1), stair, (1, 0), r - 4 * sigma)))
    add("CE4", "w3 flattens along -x", ce.with_piece("w3", _bent((0, 1), (-1, 0), stair, (-1, 0), r - 4 * sigma)))
    add("CE4", "w2 flattens along +y", ce.with_piece("w2", _bent((1, 0), (0, 1), stair, (0, 1), r - 4 * sigma)))

    add("CE5", "q1 crosses gamma1 at (0, a)", ce.with_piece("q1", l1_arc(a, 1, 2).reversed()))
    add("CE5", "q2 runs backwards", ce.with_piece("q2", ce.q_(2).reversed()))
    add("CE5", "q3 stops short of gamma2", ce.with_piece("q3", ce.q_(3).subpath(0, ce.q_(3).length - 1)))
    add("CE5", "q2 goes the long way round", ce.with_piece("q2", l1_arc(a, 2, 3).reversed()))
    add("CE5", "q1 runs backwards", ce.with_piece("q1", ce.q_(1).reversed()))

    add("CE6", "R shrunk below the outer corners", replace(ce, R=R - 1))
    add("CE6", "r grown to the inner corners", replace(ce, r=r + 1))
    add("CE6", "q2 pushed out one step", ce.with_piece("q2", l1_arc(a + 1, 1, 1)))
    add("CE6", "q1 pulled in one step", ce.with_piece("q1", l1_arc(a - 1, 3, 2)))
    add("CE6", "q3 pushed out one step", ce.with_piece("q3", l1_arc(a + 1, 2, 1)))
    logger.debug("built %d mutants", len(cases))
    return cases
