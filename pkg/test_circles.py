import os
import sys

PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from fractions import Fraction

import numpy as np

from circles import (
    BOUNDED,
    ENCLOSED,
    GROWING,
    VACUOUS,
    VACUOUS_FAIL,
    QuasiCircle,
    certify_quasi_circle,
    chord_extraction,
    depth,
    derived_constants,
    jurisdiction,
    limited_jurisdiction_sweep,
    loop_enclosure_scenario,
    loop_key,
    quadrilateral_circle_check,
    rectangle_loop,
    search_quasi_circles,
    square_interior,
    square_loop,
)
from graphs import HyperbolicTiling, RegularTree, ZLattice, materialize_ball
from graphs.errors import DomainError, ExtractionError, HypothesisError, MalformedInputError, NotEnclosedError
from metric import VIOLATED, PathRecord, axis_segment
from separation import find_witness_pair

CONNECTOR = PathRecord(((0, 2), (0, 1), (0, 0), (0, -1), (0, -2)))


def l1(u, v):
    return sum(abs(a - b) for a, b in zip(u, v))


def rectangle_chord(x_left, x_right, height):
    step = 1 if height > 0 else -1
    pts = [(x_left, y) for y in range(0, height + step, step)]
    pts += [(x, height) for x in range(x_left + 1, x_right + 1)]
    pts += [(x_right, y) for y in range(height - step, -step, -step)]
    return PathRecord(tuple(pts))


def brute_quasi_circle(cycle, lam, c):
    m = len(cycle)
    return all(
        k <= lam * (l1(cycle[i], cycle[(i + k) % m]) + c)
        for i in range(m)
        for k in range(1, m // 2 + 1)
    )


def quadrilateral(lam, h, t):
    gamma1 = PathRecord(tuple((x, 0) for x in range(0, t + 1)))
    gamma2 = PathRecord(tuple((-x, 0) for x in range(0, t + 1)))
    p1 = PathRecord(tuple((t, -y) for y in range(0, h + 1)))
    p2 = PathRecord(tuple((-t, -y) for y in range(0, h + 1)))
    alpha = PathRecord(tuple((x, -h) for x in range(t, -t - 1, -1)))
    return gamma1, gamma2, p1, p2, alpha


def test_square_loop_constants():
    ball = materialize_ball(ZLattice(2), (0, 0), 30)
    square = square_loop(5, (-2, -2))
    assert square.length == 20
    assert isinstance(certify_quasi_circle(ball, square, 2, 0), QuasiCircle)
    tight = certify_quasi_circle(ball, square, 1, 0)
    assert tight.status == VIOLATED
    assert isinstance(certify_quasi_circle(ball, square, 20, 20), QuasiCircle)


def test_folded_loop_is_violated():
    ball = materialize_ball(ZLattice(2), (0, 0), 10)
    folded = PathRecord.loop([(0, 0), (1, 0), (2, 0), (3, 0), (2, 0), (1, 0)])
    result = certify_quasi_circle(ball, folded, 2, 0)
    assert result.status == VIOLATED
    start, length = result.pair
    assert 0 <= start < 6 and length <= 3
    try:
        certify_quasi_circle(ball, PathRecord(((0, 0), (1, 0))), 2, 0)
    except MalformedInputError:
        pass
    else:
        raise AssertionError("an open path is not a quasi-circle")


def test_square_family_is_two_quasi_circles():
    ball = materialize_ball(ZLattice(2), (0, 0), 40)
    for L in range(4, 21):
        result = certify_quasi_circle(ball, square_loop(L, (-(L // 2), -(L // 2))), 2, 0)
        assert isinstance(result, QuasiCircle), L


def test_certifier_matches_brute_force_on_rectangles():
    ball = materialize_ball(ZLattice(2), (0, 0), 40)
    rng = np.random.default_rng(3)
    constants = [(1, 0), (Fraction(3, 2), 0), (2, 0), (2, 1), (3, 2)]
    for _ in range(100):
        x0, y0 = (int(v) for v in rng.integers(-8, 1, size=2))
        w, h = (int(v) for v in rng.integers(1, 9, size=2))
        pts = [(x0 + k, y0) for k in range(w)] + [(x0 + w, y0 + k) for k in range(h)]
        pts += [(x0 + w - k, y0 + h) for k in range(w)] + [(x0, y0 + h - k) for k in range(h)]
        loop = PathRecord.loop(pts)
        lam, c = constants[int(rng.integers(len(constants)))]
        ours = isinstance(certify_quasi_circle(ball, loop, lam, c), QuasiCircle)
        assert ours == brute_quasi_circle(pts, lam, c), (x0, y0, w, h, lam, c)


def test_search_finds_lattice_circles():
    small = search_quasi_circles(materialize_ball(ZLattice(2), (0, 0), 40), 18, 0, (20, 80), 20, seed=1)
    assert small
    keys = [loop_key(q.loop.cycle) for q in small]
    assert len(set(keys)) == len(keys)
    for q in small:
        assert 20 <= q.length <= 80
        assert len(set(q.loop.cycle)) == len(q.loop.cycle)
    again = search_quasi_circles(materialize_ball(ZLattice(2), (0, 0), 40), 18, 0, (20, 80), 20, seed=1)
    assert [loop_key(q.loop.cycle) for q in again] == keys


def test_search_in_tree_is_empty():
    ball = materialize_ball(RegularTree(3), (), 8)
    assert search_quasi_circles(ball, 2, 0, (6, 30), 25) == []
    try:
        search_quasi_circles(ball, 2, 0, (6, 30), 0)
    except ValueError:
        pass
    else:
        raise AssertionError("a zero budget must be refused")


def test_depth_examples():
    ball = materialize_ball(ZLattice(2), (0, 0), 10)
    assert depth(ball, [(0, 0)]) == 1
    assert depth(ball, [(x, 0) for x in range(6)]) == 1
    assert depth(ball, square_interior(8, (-4, -4))) == 4
    try:
        depth(ball, [(10, 0)])
    except NotEnclosedError:
        pass
    else:
        raise AssertionError("a set on the sphere has no finite depth here")


def test_depth_matches_enumeration():
    ball = materialize_ball(ZLattice(2), (0, 0), 30)
    regions = [
        square_interior(9, (-4, -4)),
        square_interior(14, (-7, -3)),
        [(x, y) for x in range(-6, 7) for y in range(0, 4)] + [(x, y) for x in range(0, 4) for y in range(4, 12)],
    ]
    for region in regions:
        members = set(region)
        boundary = {
            (x + dx, y + dy)
            for x, y in members
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
            if (x + dx, y + dy) not in members
        }
        expected = max(min(l1(v, b) for b in boundary) for v in members)
        assert depth(ball, region) == expected


def test_square_jurisdiction():
    ball = materialize_ball(ZLattice(2), (0, 0), 40)
    jurs = [jurisdiction(ball, square_loop(L, (-(L // 2), -(L // 2))), 1).jur for L in range(8, 25)]
    assert all(a <= b for a, b in zip(jurs, jurs[1:]))
    evens = jurs[::2]
    assert all(a < b for a, b in zip(evens, evens[1:]))
    assert jurs[0] == 3
    assert [jurs[L - 8] for L in (8, 12, 16, 20, 24)] == [3, 5, 7, 9, 11]

    square = square_loop(12, (-6, -6))
    by_delta = [jurisdiction(ball, square, delta).jur for delta in (1, 2, 3)]
    assert by_delta == [5, 4, 3]
    report = jurisdiction(ball, square, 1)
    assert len(report.enclosed) == 1 and len(report.open_components) == 1

    whole = jurisdiction(ball, list(ball.vertices), 0)
    assert whole.jur == 0 and whole.enclosed == []


def test_lattice_jurisdiction_grows():
    sweep = limited_jurisdiction_sweep(ZLattice(2), 18, 0, 1, [(16, 30), (90, 130)], R=50, budget=10)
    assert sweep.gaps == []
    assert sweep.trend == GROWING
    frame = sweep.to_frame()
    assert list(frame.columns) == ["bucket", "count", "max_jur"]


def test_tiling_and_tree_jurisdiction():
    tiling = limited_jurisdiction_sweep(HyperbolicTiling(4, 5), 2, 0, 2, [(6, 16), (20, 40)], R=6, budget=10)
    assert tiling.trend in (BOUNDED, VACUOUS)
    tree = limited_jurisdiction_sweep(RegularTree(3), 2, 0, 1, [(6, 20)], R=8, budget=10)
    assert tree.trend == VACUOUS
    assert tree.gaps == [(6, 20)]


def test_derived_constants():
    base = derived_constants(1, 0, 3)
    assert (base.lam_prime, base.c_prime, base.K1, base.K2) == (48, 0, 21, 3)
    assert derived_constants(1, 0, Fraction(1, 2)).K2 == 1
    assert derived_constants(18, 0).lam_prime == 279936
    assert derived_constants(2, 1).K1 == 168
    assert derived_constants(2, 1).t_window(5) == (Fraction(4), Fraction(20))
    rng = np.random.default_rng(9)
    for _ in range(50):
        lam = Fraction(int(rng.integers(1, 40)), int(rng.integers(1, 5))) + 1
        c = Fraction(int(rng.integers(0, 30)), int(rng.integers(1, 7)))
        dc = derived_constants(lam, c)
        assert dc.lam_prime / dc.lam ** 3 == 48
        assert dc.c_prime == 2 * c
    try:
        derived_constants(Fraction(1, 2), 0)
    except DomainError:
        pass
    else:
        raise AssertionError("lambda < 1 must be refused")


def test_quadrilateral_instance():
    ball = materialize_ball(ZLattice(2), (0, 0), 30)
    report = quadrilateral_circle_check(ball, *quadrilateral(1, 3, 6), lam=1, c=0)
    assert report.d == 3
    assert [row["clause"] for row in report.audit] == [1, 2, 3, 4, 5]
    assert report.certified
    assert report.loop.length == 30
    assert report.best_lambda <= 48


def test_quadrilateral_names_violated_claim():
    ball = materialize_ball(ZLattice(2), (0, 0), 30)
    try:
        quadrilateral_circle_check(ball, *quadrilateral(1, 3, 4), lam=1, c=0)
    except HypothesisError as e:
        assert e.clause == 2
        assert "2λ·length(p_i) ≤ t_i" in e.reason
    else:
        raise AssertionError("long drops must fail the length claim")


def test_random_quadrilaterals_respect_derived_constants():
    ball = materialize_ball(ZLattice(2), (0, 0), 50)
    rng = np.random.default_rng(17)
    for _ in range(20):
        lam = int(rng.integers(1, 3))
        h = int(rng.integers(2, 6))
        report = quadrilateral_circle_check(ball, *quadrilateral(lam, h, 2 * lam * h), lam=lam, c=0)
        assert report.certified
        assert report.best_lambda <= report.constants.lam_prime


def test_chord_extraction_from_rectangle():
    oracle = ZLattice(2)
    ball = materialize_ball(oracle, (0, 0), 40)
    rho = axis_segment(oracle, "x", 40, certify=False)
    rect = rectangle_loop(-12, 12, 8)
    truncated = chord_extraction(ball, rho, rect, 1, 5, lam=2, c=0)
    assert truncated.endpoints == ((12, 2), (-12, 2))
    assert truncated.major.length == 36
    assert truncated.minor.length == 28
    assert truncated.extension.start == truncated.major.end
    assert truncated.extension.end == truncated.major.start
    assert (truncated.lam, truncated.c) == (2, 10)
    assert truncated.certified

    circle = certify_quasi_circle(ball, rect, 18, 0)
    assert isinstance(circle, QuasiCircle)
    from_circle = chord_extraction(ball, rho, circle, 1, 5)
    assert (from_circle.lam, from_circle.c) == (18, 10)
    assert from_circle.to_dict()["certified"]


def test_chord_extraction_failures():
    oracle = ZLattice(2)
    ball = materialize_ball(oracle, (0, 0), 40)
    rho = axis_segment(oracle, "x", 40, certify=False)
    try:
        chord_extraction(ball, rho, square_loop(2, (-1, -1)), 1, 5, lam=2, c=0)
    except ExtractionError as e:
        assert e.scan_log
    else:
        raise AssertionError("a loop inside the exclusion ball has nothing to extract")
    try:
        chord_extraction(ball, rho, rectangle_loop(-12, 12, 8), 1, 5)
    except MalformedInputError:
        pass
    else:
        raise AssertionError("a bare loop needs its constants")


def enclosure_setup():
    oracle = ZLattice(2)
    ball = materialize_ball(oracle, (0, 0), 60)
    rho = axis_segment(oracle, "x", 60, certify=False)
    pair = find_witness_pair(ball, rho, 1, 20)
    return ball, rho, pair


def test_loop_enclosure_canonical_instance():
    ball, rho, pair = enclosure_setup()
    report = loop_enclosure_scenario(
        ball, rho, pair, CONNECTOR, rectangle_chord(-20, 20, 13), rectangle_chord(-32, 32, 25), 1
    )
    assert report.verdict == ENCLOSED and report.enclosed
    assert [row["clause"] for row in report.audit] == list(range(1, 10))
    assert report.loop.length == 2 * 64 + 2 * 25
    assert report.to_dict()["enclosed_components"] >= 1


def test_loop_enclosure_clause_eight():
    ball, rho, pair = enclosure_setup()
    try:
        loop_enclosure_scenario(
            ball, rho, pair, CONNECTOR, rectangle_chord(-20, 20, 13), rectangle_chord(-32, 32, -25), 1
        )
    except HypothesisError as e:
        assert e.clause == 8
    else:
        raise AssertionError("q2 crossing the lower witness must fail clause 8")


def test_loop_enclosure_collapsed_loop():
    ball, rho, pair = enclosure_setup()
    q2 = PathRecord(tuple((x, 0) for x in range(40, 46)))
    report = loop_enclosure_scenario(ball, rho, pair, CONNECTOR, rectangle_chord(-20, 20, 13), q2, 1)
    assert report.verdict == VACUOUS_FAIL
    assert report.enclosed_count == 0


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
