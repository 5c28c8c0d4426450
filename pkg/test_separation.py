import os
import sys

PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

import numpy as np

from graphs import Heisenberg, HyperbolicTiling, RegularTree, ZLattice, materialize_ball
from graphs.errors import HypothesisError, PreconditionError
from metric import PathRecord, axis_segment
from metric.certify import VIOLATED
from separation import (
    CONSISTENT,
    GEODESIC_ONLY,
    SAMPLED,
    TOO_FEW,
    TOO_MANY,
    WitnessAbsence,
    WitnessPair,
    chord_witness_check,
    complement_components,
    decompose,
    ends_probe,
    find_witness_pair,
    sampled_segment,
    sigma_sweep,
    ubq_probe,
    witness_protection_demo,
)


def lattice_axis_setup(R, sigma=1, D=15):
    oracle = ZLattice(2)
    ball = materialize_ball(oracle, (0, 0), R)
    rho = axis_segment(oracle, "x", R, certify=False)
    pair = find_witness_pair(ball, rho, sigma, D)
    return ball, rho, pair


def rectangle_chord(x_left, x_right, height):
    step = 1 if height > 0 else -1
    pts = [(x_left, y) for y in range(0, height + step, step)]
    pts += [(x, height) for x in range(x_left + 1, x_right + 1)]
    pts += [(x_right, y) for y in range(height - step, -step, -step)]
    return PathRecord(tuple(pts))


CONNECTOR = PathRecord(((0, 2), (0, 1), (0, 0), (0, -1), (0, -2)))


def test_lattice_axis_has_two_deep_components():
    ball = materialize_ball(ZLattice(2), (0, 0), 40)
    comps = complement_components(ball, axis_segment(ZLattice(2), "x", 40, certify=False), 1, 15)
    assert sum(c.deep for c in comps) == 2


def test_z3_axis_has_one_deep_component():
    ball = materialize_ball(ZLattice(3), (0, 0, 0), 25)
    comps = complement_components(ball, axis_segment(ZLattice(3), "x", 25, certify=False), 2, 10)
    assert sum(c.deep for c in comps) == 1


def test_tree_deep_components_grow_with_radius():
    counts = []
    for R in (10, 12):
        ball = materialize_ball(RegularTree(3), (), R)
        comps = complement_components(ball, axis_segment(RegularTree(3), "ray", R, certify=False), 1, 5)
        counts.append(sum(c.deep for c in comps))
    assert counts[0] >= 3
    assert counts[1] > counts[0]


def test_components_partition_the_complement():
    ball = materialize_ball(ZLattice(2), (0, 0), 20)
    d = decompose(ball, axis_segment(ZLattice(2), "x", 20, certify=False), 2, 5)
    for i in range(len(ball)):
        in_tube = i in d.tube.members
        assert in_tube == (d.label[i] < 0)
    assert sum(c.size for c in d.components) + len(d.tube.members) == len(ball)


def test_lattice_deep_count_is_two_for_all_small_sigma():
    ball = materialize_ball(ZLattice(2), (0, 0), 60)
    axis = axis_segment(ZLattice(2), "x", 60, certify=False)
    for sigma in range(1, 9):
        comps = complement_components(ball, axis, sigma, 2)
        assert sum(c.deep for c in comps) == 2, sigma


def test_ubq_probe_trichotomy():
    z2 = ubq_probe(ZLattice(2), "x", sigma=1, D=20, R=60)
    assert z2.wide_count == 2 and z2.verdict == CONSISTENT
    z1 = ubq_probe(ZLattice(1), "x", sigma=1, D=5, R=30)
    assert z1.wide_count == 0 and z1.verdict == TOO_FEW
    assert "empty-decomposition" in z1.warnings
    z3 = ubq_probe(ZLattice(3), "x", sigma=2, D=10, R=25)
    assert z3.wide_count == 1 and z3.verdict == TOO_FEW
    t3 = ubq_probe(RegularTree(3), "ray", sigma=1, D=5, R=12)
    assert t3.wide_count >= 3 and t3.verdict == TOO_MANY
    payload = z2.to_dict()
    assert payload["wide_count"] == 2 and len(payload["components"]) == len(z2.components)


def test_geodesic_only_mode():
    report = ubq_probe(ZLattice(2), "x", lam=4, c=3, sigma=1, R=30, mode=GEODESIC_ONLY)
    assert report.verdict == CONSISTENT
    assert report.certificate.lam == 1 and report.certificate.c == 0


def test_uncertified_segment_is_rejected():
    out = [(x, 0) for x in range(-10, 11)]
    back_and_forth = PathRecord(tuple(out + out[-2::-1]))
    try:
        ubq_probe(ZLattice(2), back_and_forth, lam=1, c=0, sigma=1, R=20)
    except PreconditionError as e:
        assert "pair" in e.details
    else:
        raise AssertionError("a folded segment must fail the precondition")


def test_sigma_sweeps():
    sweep = sigma_sweep(ZLattice(2), "x", [1, 2, 4, 8], None, 60)
    assert sweep.wide_counts == [2, 2, 2, 2]
    assert all(r.D == 20 for r in sweep.reports)
    tree = sigma_sweep(RegularTree(3), "ray", [1, 2, 3], None, 12)
    assert all(count >= 3 for count in tree.wide_counts)
    swallowed = sigma_sweep(ZLattice(2), "x", [25], None, 10)
    assert swallowed.reports[0].warnings == ["empty-decomposition"]
    assert swallowed.wide_counts == [0]


def test_tiling_end_pockets_are_not_sides():
    # at D = 2 the sphere cuts off small pockets beside the ends of the
    # axis; only the two sides along the middle of the segment count
    report = ubq_probe(HyperbolicTiling(4, 5), "ray", sigma=1, D=2, R=6)
    assert report.wide_count == 2 and report.verdict == CONSISTENT
    assert report.end_pockets
    assert len(report.sides) + len(report.end_pockets) == sum(c.wide for c in report.components)
    for pocket in report.end_pockets:
        comp = next(c for c in report.components if c.id == pocket)
        assert comp.touches_ball_boundary and comp.id not in report.sides
    payload = report.to_dict()
    assert payload["sides"] == report.sides and payload["end_pockets"] == report.end_pockets


def test_tiling_sweeps_find_two_sides_at_every_radius():
    for R in (6, 7, 8):
        sweep = sigma_sweep(HyperbolicTiling(4, 5), "ray", [1], None, R)
        assert sweep.wide_counts == [2], (R, sweep.wide_counts)


def test_sampled_segment_source():
    oracle = ZLattice(2)
    ball = materialize_ball(oracle, (0, 0), 20)
    path = sampled_segment(oracle, ball, seed=3)
    assert path.length >= 1
    assert path == sampled_segment(oracle, ball, seed=3)
    assert all(v in ball for v in path.vertices)
    report = ubq_probe(oracle, f"{SAMPLED}:3", sigma=1, D=5, R=20, ball=ball)
    assert report.segment == path
    assert report.certificate.status != VIOLATED
    default_seed = ubq_probe(oracle, SAMPLED, sigma=1, D=5, R=20, ball=ball)
    assert default_seed.segment == sampled_segment(oracle, ball, seed=0)


def test_ends_probe():
    assert ends_probe(ZLattice(2), 5, 40, 20) == 1
    assert ends_probe(ZLattice(2), 10, 40, 20) == 1
    assert ends_probe(RegularTree(3), 2, 12, 6) == 6
    assert ends_probe(ZLattice(1), 3, 20, 5) == 2
    assert ends_probe(Heisenberg(), 1, 8, 3) == 1
    assert ends_probe(HyperbolicTiling(4, 5), 1, 5, 2) == 1
    tree_counts = [ends_probe(RegularTree(3), r, 12, 6) for r in (1, 2, 3)]
    assert tree_counts == [3, 6, 12]
    try:
        ends_probe(ZLattice(2), 10, 20, 15)
    except PreconditionError:
        pass
    else:
        raise AssertionError("r + D > R must be rejected")


def test_lattice_witnesses_follow_the_y_axis():
    ball, rho, pair = lattice_axis_setup(50)
    assert isinstance(pair, WitnessPair)
    assert pair.w1.start == (0, 2) and pair.w2.start == (0, -2)
    assert all(v[0] == 0 and v[1] > 0 for v in pair.w1.vertices)
    assert all(v[0] == 0 and v[1] < 0 for v in pair.w2.vertices)
    for profile in pair.profiles:
        assert all(a < b for a, b in zip(profile, profile[1:]))
        assert profile[-1] >= pair.floor


def test_z3_has_no_witness_pair():
    ball = materialize_ball(ZLattice(3), (0, 0, 0), 12)
    result = find_witness_pair(ball, axis_segment(ZLattice(3), "x", 12, certify=False), 1, 4)
    assert isinstance(result, WitnessAbsence)
    assert sum(c.deep for c in result.components) == 1


def test_tree_witnesses_use_distinct_components():
    ball = materialize_ball(RegularTree(3), (), 12)
    pair = find_witness_pair(ball, axis_segment(RegularTree(3), "ray", 12, certify=False), 1, 5)
    assert isinstance(pair, WitnessPair)
    assert pair.components[0] != pair.components[1]
    assert pair.profiles[0][-1] >= 5 and pair.profiles[1][-1] >= 5


def test_witness_protection_under_detour_and_shift():
    R = 50
    ball, rho, pair = lattice_axis_setup(R)
    detour = (
        [(x, 0) for x in range(-R, -4)]
        + [(-5, y) for y in range(1, 6)]
        + [(x, 5) for x in range(-4, 6)]
        + [(5, y) for y in range(4, -1, -1)]
        + [(x, 0) for x in range(6, R + 1)]
    )
    report = witness_protection_demo(ball, rho, PathRecord(tuple(detour)), pair, 1, 5)
    assert report.hausdorff == 5
    assert report.preserved, report.reason

    same = witness_protection_demo(ball, rho, rho, pair, 1, 0)
    assert same.preserved and same.trimmed == (0, 0)

    shifted = PathRecord(tuple((x, 3) for x in range(-(R - 3), R - 2)))
    report = witness_protection_demo(ball, rho, shifted, pair, 1, 6)
    assert report.preserved, report.reason
    assert report.tails[0].start == (0, 8)
    assert report.trimmed[0] >= 3 + 1
    try:
        witness_protection_demo(ball, rho, shifted, pair, 1, 5)
    except PreconditionError as e:
        assert e.details["vertex"] == (-R, 0)
        assert e.details["distance"] == 6
    else:
        raise AssertionError("Hausdorff bound 5 should be rejected")


def test_chord_meets_the_witness_on_its_side():
    ball, rho, pair = lattice_axis_setup(60, D=20)
    upper = chord_witness_check(ball, rho, pair, CONNECTOR, rectangle_chord(-20, 20, 13), 1)
    assert upper.meets == [1]
    lower = chord_witness_check(ball, rho, pair, CONNECTOR, rectangle_chord(-20, 20, -13), 1)
    assert lower.meets == [2]
    try:
        chord_witness_check(ball, rho, pair, CONNECTOR, rectangle_chord(-20, 20, 5), 1)
    except HypothesisError as e:
        assert e.clause == 6
        assert [row["clause"] for row in e.report] == [1, 2, 3, 4, 5, 6]
    else:
        raise AssertionError("a chord hugging the connector must fail clause 6")


def test_chord_check_never_reports_neither():
    ball, rho, pair = lattice_axis_setup(60, D=20)
    rng = np.random.default_rng(2024)
    for _ in range(50):
        x_left = -int(rng.integers(12, 41))
        x_right = int(rng.integers(12, 41))
        top = 60 - max(-x_left, x_right)
        height = int(rng.integers(13, top + 1)) * (1 if rng.random() < 0.5 else -1)
        report = chord_witness_check(ball, rho, pair, CONNECTOR, rectangle_chord(x_left, x_right, height), 1)
        assert not report.contradiction
        assert report.meets == ([1] if height > 0 else [2])


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
