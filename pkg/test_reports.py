import os
import sys
import tempfile

PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

import json

from circles import JurisdictionSweep
from graphs import RegularTree, ZLattice, materialize_ball
from graphs.errors import MalformedInputError
from growth import growth_table
from metric.paths import PathRecord
from reports import (
    component_color,
    dump_report,
    dumps_report,
    envelope,
    growth_chart,
    growth_csv,
    jurisdiction_chart,
    jurisdiction_csv,
    load_report,
    read_growth_csv,
    render_dot,
    report_schema,
    validate_json,
)
from separation import decompose


def _sweep():
    sweep = JurisdictionSweep("z2", 1)
    sweep.rows.extend([
        {"bucket": (8, 12), "count": 3, "max_jur": 2},
        {"bucket": (13, 20), "count": 0, "max_jur": 0},
        {"bucket": (21, 28), "count": 2, "max_jur": 6},
    ])
    return sweep


def test_growth_csv_matches_tree_formula():
    table = growth_table(RegularTree(3), 15)
    text = growth_csv(table)
    lines = text.strip().split("\n")
    assert lines[0] == "n,count"
    assert len(lines) == 17
    assert lines[-1] == f"15,{3 * 2 ** 15 - 2}"
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "t3.csv")
        growth_csv(table, path)
        back = read_growth_csv(path, "tree:3")
        assert back.values == table.values


def test_growth_csv_rejects_gaps():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "bad.csv")
        with open(path, "w") as fh:
            fh.write("n,count\n0,1\n2,13\n")
        try:
            read_growth_csv(path)
        except MalformedInputError:
            pass
        else:
            raise AssertionError("a table skipping n=1 must be refused")


def test_jurisdiction_csv_columns():
    lines = jurisdiction_csv(_sweep()).strip().split("\n")
    assert lines == ["bucket,count,max_jur", "8-12,3,2", "13-20,0,0", "21-28,2,6"]


def test_envelope_is_deterministic_without_meta():
    result = growth_table(ZLattice(2), 6).to_dict()
    first = dump_report(envelope("growth", result, {"family": "z2", "N": 6}, meta=False))
    second = dump_report(envelope("growth", result, {"family": "z2", "N": 6}, meta=False))
    assert first == second
    payload = json.loads(first)
    assert payload["schema"] == 1 and payload["command"] == "growth"
    assert "meta" not in payload
    assert list(payload) == sorted(payload)


def test_envelope_meta():
    report = envelope("growth", growth_table(ZLattice(1), 3).to_dict())
    assert set(report["meta"]) == {"generated_at", "tool_version"}
    ok, _, err = validate_json(report, report_schema("growth"))
    assert ok, err


def test_schema_rejects_bad_envelopes():
    result = growth_table(ZLattice(1), 3).to_dict()
    for bad in (
        dict(envelope("growth", result, meta=False), schema=2),
        dict(envelope("growth", result, meta=False), extra=True),
        envelope("unknown", result, meta=False),
    ):
        try:
            dump_report(bad)
        except MalformedInputError:
            pass
        else:
            raise AssertionError(f"{sorted(bad)} must be refused")
    ok, _, _ = validate_json(
        {"family": "z2", "label": "round", "explanation": "", "evidence": {}},
        report_schema("classify")["properties"]["result"],
    )
    assert not ok


def test_load_report_round_trip():
    report = envelope("jurisdiction", _sweep().to_dict(), meta=False)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "jur.json")
        dump_report(report, path)
        back = load_report(path)
        assert dumps_report(back) == dumps_report(report)
        assert back["result"]["gaps"] == [[13, 20]]
        with open(path, "w") as fh:
            fh.write("{not json")
        try:
            load_report(path)
        except MalformedInputError:
            pass
        else:
            raise AssertionError("broken JSON must be refused")


def test_charts():
    table = growth_table(ZLattice(2), 12, window=(3, 12))
    uri = growth_chart(table)
    assert uri.startswith("data:image/png;base64,")
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "jur.png")
        assert jurisdiction_chart(_sweep(), path) == path
        assert os.path.getsize(path) > 0
    assert jurisdiction_chart(JurisdictionSweep("t3", 1)) == ""
    assert growth_chart(growth_table(ZLattice(2), 0)) == ""


def test_dot_export_colors_components():
    ball = materialize_ball(ZLattice(2), (0, 0), 3)
    axis = PathRecord(tuple((x, 0) for x in range(-3, 4)))
    dec = decompose(ball, axis, 0, 1)
    assert len(dec.components) == 2
    text = render_dot(ball, dec.components, overlays=[("axis", axis)], title="z2 axis")
    assert text == render_dot(ball, dec.components, overlays=[("axis", axis)], title="z2 axis")
    assert text.startswith('graph "z2"')
    assert component_color(0) in text and component_color(1) in text
    assert "legend1" in text and "legend2" not in text
    assert text.count("penwidth=3") == 1
    plain = render_dot(ball)
    # an L1 ball of radius R in Z^2 has 4R^2 edges, no overlay
    assert plain.count(" -- ") == 36


def test_dot_induced_subgraph():
    ball = materialize_ball(ZLattice(2), (0, 0), 3)
    keep = ball.indices_of([(0, 0), (1, 0), (1, 1), (3, 0)])
    text = render_dot(ball, vertices=keep)
    assert text.count(" -- ") == 2
    assert text.count("tooltip=") == 4


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
