import os
import sys

PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from fractions import Fraction

import numpy as np

from graphs import EdgeListGraph, Heisenberg, HyperbolicTiling, RegularTree, ZLattice, materialize_ball
from graphs.errors import OutOfBallError, UnsupportedDirectionError
from metric import (
    CERTIFIED,
    INDETERMINATE,
    VIOLATED,
    PathRecord,
    axis_segment,
    certify_quasi_geodesic,
    dist,
    geodesic_between,
    path_best_lambda,
)


def staircase(n):
    pts = [(0, 0)]
    x = y = 0
    for k in range(n):
        if k % 2 == 0:
            x += 1
        else:
            y += 1
        pts.append((x, y))
    return PathRecord(tuple(pts))


def test_lattice_distances():
    ball = materialize_ball(ZLattice(2), (0, 0), 10)
    w = dist(ball, (0, 0), (3, 4))
    assert (w.d, w.exact) == (7, True)
    w = dist(ball, (2, 2), (2, 2))
    assert (w.d, w.exact) == (0, True)
    try:
        dist(ball, (0, 0), (11, 0))
    except OutOfBallError:
        pass
    else:
        raise AssertionError("expected out-of-ball error")


def test_tree_leaves_not_exact():
    ball = materialize_ball(RegularTree(3), (), 8)
    u = (0,) * 8
    v = (1,) + (0,) * 7
    w = dist(ball, u, v)
    assert w.d == 16
    assert w.exact is False


def test_staircase_is_geodesic():
    ball = materialize_ball(ZLattice(2), (0, 0), 20)
    cert = certify_quasi_geodesic(ball, staircase(20), 1, 0)
    assert cert.status == CERTIFIED
    assert cert.exact
    assert cert.worst_pair[2] == cert.worst_pair[1] - cert.worst_pair[0]


def test_there_and_back_violates():
    out = [(x, 0) for x in range(0, 11)]
    path = PathRecord(tuple(out + out[-2::-1]))
    assert path.length == 20
    ball = materialize_ball(ZLattice(2), (0, 0), 12)
    result = certify_quasi_geodesic(ball, path, 2, 0)
    assert result.status == VIOLATED
    assert result.pair == (0, 20)
    assert result.distance == 0


def test_relaxed_bound_goes_indeterminate():
    ball = materialize_ball(ZLattice(2), (0, 0), 30)
    axis = axis_segment(ZLattice(2), "x", 30, certify=False)
    result = certify_quasi_geodesic(ball, axis, 1, 0)
    assert result.status == INDETERMINATE
    assert result.pair == (0, 32)
    assert result.lower_bound == 30


def test_geodesic_tie_break():
    ball = materialize_ball(ZLattice(2), (0, 0), 5)
    path = geodesic_between(ball, (0, 0), (2, 1))
    assert path.length == 3
    assert path.vertices == ((0, 0), (0, 1), (1, 1), (2, 1))
    assert geodesic_between(ball, (0, 0), (2, 1)) == path


def test_tree_geodesic_is_unique_path():
    ball = materialize_ball(RegularTree(3), (), 4)
    path = geodesic_between(ball, (0, 1, 0), (2, 1))
    assert path.vertices == ((0, 1, 0), (0, 1), (0,), (), (2,), (2, 1))


def test_tiling_geodesic_length_matches_distance():
    ball = materialize_ball(HyperbolicTiling(4, 5), (0, 0), 5)
    layer3 = sorted(v for v in ball.vertices if v[0] == 3)
    u, v = layer3[0], layer3[len(layer3) // 2]
    path = geodesic_between(ball, u, v)
    assert path.length == dist(ball, u, v).d
    path.validate(ball.oracle)


def test_axis_segments():
    z2 = axis_segment(ZLattice(2), "x", 30)
    assert z2.vertices[0] == (-30, 0) and z2.vertices[-1] == (30, 0)
    assert z2.certificate.status == CERTIFIED and z2.certificate.exact
    heis = axis_segment(Heisenberg(), "x", 8)
    assert heis.length == 16
    assert heis.certificate.status == CERTIFIED and heis.certificate.exact
    tree = axis_segment(RegularTree(3), "ray", 20, certify=False)
    assert tree.length == 40 and () in tree.vertices
    tree.validate(RegularTree(3))
    tiling = axis_segment(HyperbolicTiling(4, 5), "ray", 4)
    assert tiling.length == 8
    assert tiling.vertices[4] == (0, 0)
    assert tiling.certificate.status != VIOLATED


def test_unsupported_directions():
    for oracle, direction in [
        (ZLattice(2), "z"),
        (Heisenberg(), "ray"),
        (EdgeListGraph([("a", "b")]), "x"),
    ]:
        try:
            axis_segment(oracle, direction, 3)
        except UnsupportedDirectionError:
            pass
        else:
            raise AssertionError(f"{oracle.family} accepted axis {direction}")


def test_symmetry_and_triangle_inequality():
    rng = np.random.default_rng(11)
    for oracle, radius in [
        (ZLattice(2), 10),
        (Heisenberg(), 5),
        (RegularTree(3), 6),
        (HyperbolicTiling(4, 5), 4),
    ]:
        ball = materialize_ball(oracle, oracle.base, radius)
        pool = [ball.vertices[int(i)] for i in rng.choice(len(ball), size=min(40, len(ball)), replace=False)]
        for _ in range(10_000):
            a, b, c = (pool[int(i)] for i in rng.integers(len(pool), size=3))
            ab, bc, ac = dist(ball, a, b).d, dist(ball, b, c).d, dist(ball, a, c).d
            assert ac <= ab + bc
            assert ab == dist(ball, b, a).d


def test_certify_iff_geodesic():
    oracle = ZLattice(2)
    ball = materialize_ball(oracle, (0, 0), 12)
    inner = [v for v in ball.vertices if abs(v[0]) + abs(v[1]) <= 3]
    rng = np.random.default_rng(5)
    for _ in range(100):
        u, v = (inner[int(i)] for i in rng.integers(len(inner), size=2))
        path = geodesic_between(ball, u, v)
        assert certify_quasi_geodesic(ball, path, 1, 0).status == CERTIFIED
    non_geodesic = 0
    for _ in range(100):
        walk = [inner[int(rng.integers(len(inner)))]]
        for _ in range(int(rng.integers(1, 7))):
            nbrs = [w for w in oracle.neighbors(walk[-1]) if abs(w[0]) + abs(w[1]) <= 4]
            walk.append(nbrs[int(rng.integers(len(nbrs)))])
        path = PathRecord(tuple(walk))
        geodesic = path.length == dist(ball, path.start, path.end).d
        status = certify_quasi_geodesic(ball, path, 1, 0).status
        assert (status == CERTIFIED) == geodesic
        non_geodesic += not geodesic
    assert non_geodesic > 0


def test_exactness_rule_is_sound():
    rng = np.random.default_rng(9)
    for oracle, radius in [(ZLattice(2), 10), (RegularTree(3), 6)]:
        small = materialize_ball(oracle, oracle.base, radius)
        large = materialize_ball(oracle, oracle.base, radius + 5)
        for _ in range(300):
            u, v = (small.vertices[int(i)] for i in rng.integers(len(small), size=2))
            w = dist(small, u, v)
            if w.exact:
                assert dist(large, u, v).d == w.d


def test_best_lambda_of_a_detour():
    ball = materialize_ball(ZLattice(2), (0, 0), 10)
    detour = PathRecord(((0, 0), (0, 1), (1, 1), (2, 1), (2, 0)))
    assert path_best_lambda(ball, detour) == Fraction(2)


if __name__ == "__main__":
    tests = [obj for name, obj in sorted(globals().items()) if name.startswith("test_") and callable(obj)]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
        except Exception as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")
    print(f"{len(tests) - failed}/{len(tests)} passed")
    sys.exit(1 if failed else 0)
