import os
import sys
import tempfile

PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

import json
from fractions import Fraction

import numpy as np

from cli import (
    EUCLIDEAN,
    GROWING,
    HYPERBOLIC,
    INDETERMINATE,
    PLATEAU,
    UBQ_FAILS,
    RunConfig,
    classify,
    classify_delta_trend,
    decide,
    default_ladder,
    four_point_delta,
    hyperbolicity_estimate,
    main,
)
from graphs import RegularTree, ZLattice, materialize_ball
from graphs.errors import PreconditionError
from pydantic import ValidationError


def run(argv):
    """main() with usage errors from argparse turned into their exit code."""
    try:
        return main(argv)
    except SystemExit as e:
        return e.code


def test_four_point_delta_of_squares():
    # corners of an n x n square in the l1 metric
    for n in (1, 3, 5):
        pts = [(0, 0), (n, 0), (0, n), (n, n)]
        D = np.array([[abs(a - c) + abs(b - d) for c, d in pts] for a, b in pts])
        delta, quad = four_point_delta(D)
        assert delta == n and sorted(quad) == [0, 1, 2, 3]
    assert four_point_delta(np.zeros((3, 3), dtype=int)) == (Fraction(0), None)


def test_default_ladder():
    assert default_ladder(40) == [2, 6, 10, 14, 18]
    assert default_ladder(6) == [2, 3]
    assert default_ladder(12) == [2, 3, 4, 5, 6]


def test_delta_trend_rule():
    assert classify_delta_trend(Fraction(2), Fraction(4)) == GROWING
    assert classify_delta_trend(Fraction(2), Fraction(3)) == PLATEAU
    assert classify_delta_trend(Fraction(0), Fraction(1)) == PLATEAU
    assert classify_delta_trend(Fraction(0), Fraction(2)) == GROWING


def test_tree_is_zero_hyperbolic():
    ball = materialize_ball(RegularTree(3), (), 12)
    report = hyperbolicity_estimate(ball, 40, seed=3)
    assert all(d == 0 for d in report.deltas)
    assert report.trend == PLATEAU
    assert report.to_dict()["ladder"][0] == {"R": 2, "delta": "0", "pool": 10, "quadruple": report.rows[0]["quadruple"]}


def test_lattice_delta_grows():
    ball = materialize_ball(ZLattice(2), (0, 0), 40)
    report = hyperbolicity_estimate(ball, 40, seed=0)
    # B(2) has 13 vertices, so the first rung is exact: the 2x2 square gives 2
    assert report.rows[0]["pool"] == 13 and report.deltas[0] == 2
    assert report.trend == GROWING
    again = hyperbolicity_estimate(ball, 40, seed=0)
    assert again.to_dict() == report.to_dict()


def test_hyperbolicity_preconditions():
    try:
        hyperbolicity_estimate(materialize_ball(ZLattice(2), (0, 0), 5))
    except PreconditionError:
        pass
    else:
        raise AssertionError("balls of radius below 6 must be refused")
    try:
        hyperbolicity_estimate(materialize_ball(ZLattice(2), (0, 0), 10), radii=[3, 6])
    except PreconditionError as e:
        assert e.details["radii"] == [6]
    else:
        raise AssertionError("rungs beyond half the radius must be refused")


def test_decision_table_is_total():
    assert decide({1: 2, 2: 1}, 2.0, False, GROWING)[0] == UBQ_FAILS
    assert decide({1: 2}, 2.0, False, GROWING)[0] == EUCLIDEAN
    assert decide({1: 2}, 5.0, True, PLATEAU)[0] == HYPERBOLIC
    assert decide(None, 2.0, False, GROWING)[0] == EUCLIDEAN
    for counts in (None, {1: 2}, {1: 3}):
        for slope in (None, 1.0, 2.0, 4.0):
            for sp in (False, True):
                for trend in (GROWING, PLATEAU, "indeterminate"):
                    label, why = decide(counts, slope, sp, trend)
                    assert label in (EUCLIDEAN, HYPERBOLIC, UBQ_FAILS, INDETERMINATE) and why
    label, why = decide({1: 2}, 2.0, False, PLATEAU)
    assert label == INDETERMINATE and "plateau" in why


def test_classification_pipeline():
    z2 = classify("z2", seed=0)
    assert z2.label == EUCLIDEAN, z2.explanation
    assert z2.evidence["ubq"]["wide_counts"] == {"1": 2, "2": 2}
    tiling = classify("tiling:4,5", seed=0)
    assert tiling.label == HYPERBOLIC, tiling.explanation
    for family in ("z3", "t3", "z1"):
        verdict = classify(family, seed=0)
        assert verdict.label == UBQ_FAILS, (family, verdict.explanation)
    assert classify("t3", seed=0).to_dict() == classify("t3", seed=0).to_dict()


def test_run_config_validation():
    cfg = RunConfig(command="ubq", family="z2", sigma="1,2", lam="3/2", c="0.5")
    assert cfg.sigma == [1, 2] and cfg.lam == "3/2" and cfg.c == "1/2"
    assert cfg.echo()["lambda"] == "3/2"
    for bad in (
        {"command": "ubq", "family": "q9"},
        {"command": "ubq", "lam": "1/2"},
        {"command": "ubq", "c": "-1"},
        {"command": "iso", "format": "csv"},
        {"command": "ubq", "format": "dot"},
        {"command": "growth", "family": "tiling:3,3"},
    ):
        try:
            RunConfig(**bad)
        except ValidationError:
            pass
        else:
            raise AssertionError(f"{bad} must be refused")


def test_growth_csv_command():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "t3.csv")
        assert run(["growth", "--family", "t3", "--N", "15", "--format", "csv", "--out", path]) == 0
        with open(path) as fh:
            lines = fh.read().strip().split("\n")
        assert lines[0] == "n,count"
        assert all(lines[n + 1] == f"{n},{3 * 2 ** n - 2}" for n in range(1, 16))


def test_ubq_report_is_deterministic():
    with tempfile.TemporaryDirectory() as tmp:
        paths = [os.path.join(tmp, f"ubq{k}.json") for k in (1, 2)]
        for path in paths:
            argv = ["ubq", "--family", "z2", "--sigma", "1", "--R", "60", "--D", "20", "--no-meta", "--out", path]
            assert run(argv) == 0
        with open(paths[0], "rb") as a, open(paths[1], "rb") as b:
            first, second = a.read(), b.read()
        assert first == second
        report = json.loads(first)
        assert report["schema"] == 1 and report["command"] == "ubq"
        assert report["result"]["wide_count"] == 2
        assert "meta" not in report


def test_ubq_tiling_and_sampled_axis():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "tiling.json")
        assert run(["ubq", "--family", "tiling:4,5", "--strict", "--no-meta", "--out", out]) == 0
        with open(out) as fh:
            result = json.load(fh)["result"]
        assert result["wide_count"] == 2 and len(result["sides"]) == 2
        assert result["end_pockets"]
        paths = [os.path.join(tmp, f"sampled{k}.json") for k in (1, 2)]
        for path in paths:
            argv = ["ubq", "--family", "z2", "--R", "20", "--axis", "sampled", "--seed", "4", "--no-meta", "--out", path]
            assert run(argv) == 0
        with open(paths[0]) as a, open(paths[1]) as b:
            first, second = json.load(a), json.load(b)
        assert first == second
        assert first["result"]["certificate"]["status"] != "violated"


def test_strict_exit_codes():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "r.json")
        assert run(["ubq", "--family", "z2", "--R", "30", "--sigma", "1", "--strict", "--out", out]) == 0
        assert run(["ubq", "--family", "z1", "--R", "30", "--sigma", "1", "--strict", "--out", out]) == 2
        with open(out) as fh:
            assert json.load(fh)["exit_status"] == 2
        assert run(["ubq", "--family", "z1", "--R", "30", "--sigma", "1", "--out", out]) == 0
        assert run(["ubq", "--family", "z2", "--R", "9", "--D", "10", "--sigma", "1", "--strict", "--out", out]) == 3
        argv = ["iso", "--family", "z2", "--R", "20", "--N", "10", "--samples", "1000", "--seed", "7", "--strict", "--out", out]
        assert run(argv) == 0
        with open(out) as fh:
            summary = json.load(fh)["result"]
        assert summary["all_pass"] and summary["sample_count"] == 1000


def test_usage_and_lab_errors():
    assert run(["ubq", "--lambda", "1/2"]) == 64
    assert run(["growth", "--family", "q9"]) == 64
    assert run(["nonsense"]) == 64
    assert run(["growth", "--N", "many"]) == 64
    assert run(["iso", "--format", "csv"]) == 64
    # no canonical cross-examiner outside Z^2
    assert run(["ce", "--family", "z3"]) == 1


def test_config_file_defaults():
    with tempfile.TemporaryDirectory() as tmp:
        conf = os.path.join(tmp, "run.conf")
        out = os.path.join(tmp, "g.json")
        with open(conf, "w") as fh:
            fh.write("# tree growth\nfamily = t3\nN = 5\nno-meta = true\n")
        assert run(["growth", "--config", conf, "--out", out]) == 0
        with open(out) as fh:
            report = json.load(fh)
        assert report["result"]["values"] == [3 * 2 ** n - 2 for n in range(6)]
        assert "meta" not in report
        assert run(["growth", "--config", conf, "--N", "3", "--out", out]) == 0
        with open(out) as fh:
            assert len(json.load(fh)["result"]["values"]) == 4
        with open(conf, "w") as fh:
            fh.write("colour = blue\n")
        assert run(["growth", "--config", conf]) == 64


def test_hyperbolicity_and_jurisdiction_commands():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "h.json")
        assert run(["hyperbolicity", "--family", "t3", "--out", out]) == 0
        with open(out) as fh:
            result = json.load(fh)["result"]
        assert result["trend"] == PLATEAU
        assert {row["delta"] for row in result["ladder"]} == {"0"}
        assert "convention" in result
        csv = os.path.join(tmp, "j.csv")
        argv = ["jurisdiction", "--family", "z2", "--R", "12", "--buckets", "4-8", "--samples", "10", "--format", "csv", "--out", csv]
        assert run(argv) == 0
        with open(csv) as fh:
            lines = fh.read().strip().split("\n")
        assert lines[0] == "bucket,count,max_jur" and lines[1].startswith("4-8,")


def test_circles_dot_and_growth_plot():
    with tempfile.TemporaryDirectory() as tmp:
        dot = os.path.join(tmp, "loops.dot")
        assert run(["circles", "--family", "z2", "--R", "10", "--length", "4-12", "--samples", "20", "--format", "dot", "--out", dot]) == 0
        with open(dot) as fh:
            assert fh.read().startswith('graph "z2"')
        png = os.path.join(tmp, "growth.png")
        assert run(["growth", "--family", "z2", "--N", "12", "--plot", png, "--out", os.path.join(tmp, "g.json")]) == 0
        assert os.path.getsize(png) > 0


def test_ce_command():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "ce.json")
        assert run(["ce", "--N", "50", "--strict", "--no-meta", "--out", out]) == 0
        with open(out) as fh:
            result = json.load(fh)["result"]
        assert result["validation"]["passed"] and result["validation"]["failed"] == []
        assert result["sizes"] == {"sigma": 1, "r": 22, "R": 44, "halflength": 50, "ball_radius": 100}
        assert result["separation"]["status"] == "separated"
        assert result["delta_graph"]["alternating_cycle"]
        assert result["good_subpath_check"]["counterexamples"] == []
        tree_out = os.path.join(tmp, "tree.json")
        assert run(["ce", "--family", "t3", "--strict", "--no-meta", "--out", tree_out]) == 2
        with open(tree_out) as fh:
            tree = json.load(fh)["result"]
        assert "CE3" in tree["validation"]["failed"]
        assert tree["sizes"]["ball_radius"] == 10 and tree["separation"] is None


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
