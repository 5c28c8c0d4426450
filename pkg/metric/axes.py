"""
Named axes: long geodesic segments standing in for bi-infinite lines.
"""
import logging
from typing import Any, List, Optional

from graphs.ball import Ball, materialize_ball
from graphs.errors import PreconditionError, UnsupportedDirectionError
from graphs.oracles import FreeGroup, GraphOracle, Heisenberg, RegularTree, ZLattice
from graphs.tiling import HyperbolicTiling

from .certify import VIOLATED, certify_quasi_geodesic
from .distances import geodesic_indices, metric_for
from .paths import PathRecord

logger = logging.getLogger(__name__)

_LATTICE_AXES = {"x": 0, "y": 1, "z": 2, "w": 3}


def _lattice_axis(oracle: ZLattice, direction: str, h: int) -> List[Any]:
    name = direction.lower()
    if name in _LATTICE_AXES:
        coord = _LATTICE_AXES[name]
    elif name.startswith("e") and name[1:].isdigit():
        coord = int(name[1:])
    else:
        raise UnsupportedDirectionError(f"{oracle.family} has no axis {direction!r}; use x, y, z, w or e<i>")
    if coord >= oracle.dim:
        raise UnsupportedDirectionError(f"{oracle.family} has no axis {direction!r}")
    out = []
    for k in range(-h, h + 1):
        v = [0] * oracle.dim
        v[coord] = k
        out.append(tuple(v))
    return out


def _heisenberg_axis(direction: str, h: int) -> List[Any]:
    name = direction.lower()
    if name == "x":
        return [(k, 0, 0) for k in range(-h, h + 1)]
    if name == "y":
        return [(0, k, 0) for k in range(-h, h + 1)]
    raise UnsupportedDirectionError(f"heisenberg has axes 'x' and 'y', not {direction!r}")


def _free_axis(oracle: FreeGroup, direction: str, h: int) -> List[Any]:
    name = direction.lower()
    if len(name) != 1 or not "a" <= name <= "z" or ord(name) - ord("a") >= oracle.rank:
        raise UnsupportedDirectionError(f"{oracle.family} has generator axes a..{chr(ord('a') + oracle.rank - 1)}")
    g = ord(name) - ord("a") + 1
    return [(-g,) * (-k) for k in range(-h, 0)] + [(g,) * k for k in range(0, h + 1)]


def _tree_axis(direction: str, h: int) -> List[Any]:
    if direction.lower() != "ray":
        raise UnsupportedDirectionError(f"trees only support the 'ray' axis, not {direction!r}")
    back = [(1,) + (0,) * (k - 1) for k in range(h, 0, -1)]
    forth = [(0,) * k for k in range(1, h + 1)]
    return back + [()] + forth


def tiling_axis(ball: Ball, halflength: int) -> PathRecord:
    """
    Segment through the ball center joining two sphere vertices at ball distance 2h.

    Sphere vertices are scanned in key order; both halves are lexicographic
    geodesics through the center.
    """
    h = halflength
    if h > ball.radius:
        raise PreconditionError(f"halflength {h} exceeds ball radius {ball.radius}")
    metric = metric_for(ball)
    sphere = sorted(ball.sphere(h), key=lambda i: ball.vertices[i])
    for u in sphere:
        table = metric.distances_from(u)
        partners = [w for w in sphere if table[w] == 2 * h]
        if partners:
            w = min(partners, key=lambda i: ball.vertices[i])
            first = geodesic_indices(ball, u, 0)
            second = list(reversed(geodesic_indices(ball, w, 0)))
            idx = first + second[1:]
            return PathRecord(tuple(ball.vertices[i] for i in idx))
    raise PreconditionError(f"no pair of radius-{h} sphere vertices at distance {2 * h} in {ball.family}")


def axis_segment(
    oracle: GraphOracle,
    direction: str,
    halflength: int,
    certify: bool = True,
    enclosing_radius: Optional[int] = None,
    ball: Optional[Ball] = None,
) -> PathRecord:
    """
    Geodesic segment of length 2 * halflength centered at the base vertex

    Args:
        oracle: Family oracle
        direction: Axis name (lattice x/y/z/w or e<i>, heisenberg x/y,
            free-group letters, 'ray' for trees and tilings)
        halflength: Half the segment length
        certify: Attach a (1, 0) certificate computed in an enclosing ball
        enclosing_radius: Certification ball radius; defaults to 2 * halflength
            for polynomial-growth families and halflength otherwise
        ball: Ball to search in for tiling rays (radius >= halflength)

    Returns:
        PathRecord, with ``certificate`` set when certify is true
    """
    if halflength < 0:
        raise ValueError(f"halflength must be >= 0, got {halflength}")
    h = halflength
    if isinstance(oracle, ZLattice):
        path = PathRecord(tuple(_lattice_axis(oracle, direction, h)))
    elif isinstance(oracle, Heisenberg):
        path = PathRecord(tuple(_heisenberg_axis(direction, h)))
    elif isinstance(oracle, FreeGroup):
        path = PathRecord(tuple(_free_axis(oracle, direction, h)))
    elif isinstance(oracle, RegularTree):
        path = PathRecord(tuple(_tree_axis(direction, h)))
    elif isinstance(oracle, HyperbolicTiling):
        if direction.lower() != "ray":
            raise UnsupportedDirectionError(f"tilings only support the 'ray' axis, not {direction!r}")
        if ball is None or ball.radius < h or ball.center != oracle.base:
            ball = materialize_ball(oracle, oracle.base, h)
        path = tiling_axis(ball, h)
    else:
        raise UnsupportedDirectionError(f"{oracle.family} has no named axes")

    if not certify:
        return path
    polynomial = isinstance(oracle, (ZLattice, Heisenberg))
    radius = enclosing_radius if enclosing_radius is not None else (2 * h if polynomial else h)
    if ball is None or ball.radius != radius or ball.center != oracle.base:
        ball = materialize_ball(oracle, oracle.base, radius)
    certificate = certify_quasi_geodesic(ball, path, 1, 0)
    if certificate.status == VIOLATED:
        raise PreconditionError(
            f"{oracle.family} axis {direction!r} is not geodesic at pair {certificate.pair}",
            details=certificate.to_dict(),
        )
    logger.debug("%s axis %s (h=%d): %s", oracle.family, direction, h, certificate.status)
    return path.with_certificate(certificate)


def default_axis(oracle: GraphOracle) -> str:
    """Axis the probes use when none is named."""
    if isinstance(oracle, (ZLattice, Heisenberg)):
        return "x"
    if isinstance(oracle, FreeGroup):
        return "a"
    if isinstance(oracle, (RegularTree, HyperbolicTiling)):
        return "ray"
    raise UnsupportedDirectionError(f"{oracle.family} has no named axes")
