import csv
import io
import json

import pytest
from click.testing import CliRunner

from lemniscate import k_const, omega
from lemniscate.cli import cli, fmt


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, [str(a) for a in args])
    return invoke


def rows(output):
    return list(csv.reader(io.StringIO(output)))


def test_fmt_caps_digits_and_round_trips_short_values():
    assert fmt(0.1) == "0.1"
    assert fmt(omega()) == "1.31102877714606"
    assert fmt(1e-20) == "1e-20"
    assert fmt(None) == ""


def test_eval_arcsl(run):
    res = run("eval", "arcsl", 1)
    assert res.exit_code == 0
    header, row = rows(res.output)
    assert header == ["function", "x", "value", "abs_error"]
    assert round(float(row[2]), 5) == 1.31103
    assert float(row[3]) < 1e-15


def test_eval_sl_zero(run):
    assert rows(run("eval", "sl", 0).output)[1][2] == "0"


def test_eval_arcslh_large_argument_json(run):
    res = run("eval", "arcslh", 1000, "--format", "json")
    out = json.loads(res.output)
    # K - arcslh(x) is about 1/x
    assert k_const() - out["value"] == pytest.approx(1e-3, rel=1e-6)


def test_eval_negative_and_aux(run):
    assert float(rows(run("eval", "tl", -0.5).output)[1][2]) < 0
    assert float(rows(run("eval", "g1", 0.5).output)[1][2]) == pytest.approx(1.50945394706164)


def test_domain_error_exits_2(run):
    res = run("eval", "sl", 2)
    assert res.exit_code == 2
    assert "error" in res.output


def test_unknown_function_exits_2(run):
    assert run("eval", "cosine", 1).exit_code == 2
    assert run("invert", "arcsl", 1.5).exit_code == 2
    assert run("invert", "g1", 0.5).exit_code == 2


def test_invert_accepts_arc_name(run):
    a = rows(run("invert", "arcsl", 0.5).output)[1]
    b = rows(run("eval", "sl", 0.5).output)[1]
    assert a == b


def test_table_single_point(run):
    assert rows(run("table", "arcsl", 0, 0, 1).output) == [["x", "arcsl"], ["0", "0"]]


def test_table_two_columns_ordered(run):
    res = run("table", "arcsl,arcslh", 0.1, 0.9, 9)
    data = rows(res.output)
    assert data[0] == ["x", "arcsl", "arcslh"] and len(data) == 10
    assert all(float(r[1]) > float(r[2]) for r in data[1:])
    assert "\r" not in res.output


def test_table_crossing_data(run):
    data = rows(run("table", "tlh_over_x,x_over_slh", 0.01, 1.30, 130).output)[1:]
    assert len(data) == 130
    xs = [float(r[0]) for r in data]
    assert xs == sorted(set(xs))
    diff = [float(r[1]) - float(r[2]) for r in data]
    flips = [i for i in range(1, 130) if (diff[i] > 0) != (diff[i - 1] > 0)]
    assert [round(xs[i], 2) for i in flips] == [1.22]


def test_table_domain_error_emits_nothing(run):
    res = run("table", "arcsl", 0.5, 1.5, 3)
    assert res.exit_code == 2
    assert "x,arcsl" not in res.output


def test_table_json(run):
    recs = json.loads(run("table", "sl", 0, 1, 3, "--format", "json").output)
    assert [r["x"] for r in recs] == [0.0, 0.5, 1.0]


def test_check_suite_and_unknown(run):
    res = run("check", "theorem-1.4", "--points", 500)
    assert res.exit_code == 0
    assert res.output.count("PASS") == 8
    assert run("check", "no-such").exit_code == 2


def test_check_failure_exit_code(run):
    res = run("check", "sharpness", "--omega-override", omega() + 0.01, "--format", "json")
    assert res.exit_code == 1
    assert any(r["verdict"] == "fail" for r in json.loads(res.output))


def test_constants(run):
    data = dict(rows(run("constants").output)[1:])
    assert round(float(data["ω"]), 5) == 1.31103
    assert round(float(data["√2ω-1"]), 5) == 0.85407
    assert round(float(data["1/(ω-1)"]), 5) == 3.21514
    assert float(data["ω-1"]) == pytest.approx(omega() - 1, abs=1e-15)


def test_crossing(run):
    x = float(rows(run("crossing").output)[1][0])
    assert x == pytest.approx(1.21341479627322, abs=1e-12)


def test_output_is_deterministic(run):
    a = run("table", "slh,tl", 0.1, 1.2, 12).output
    assert a == run("table", "slh,tl", 0.1, 1.2, 12).output
