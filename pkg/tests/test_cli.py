import io
import json
import math

import pytest

from genconc.cli import main, parse_dims
from genconc.ketparse import parse_ket
from genconc.qstate import read_qs


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_measure_ghz_json():
    code, text = run(["measure", "--gen", "ghz", "--n", "3", "--format", "json"])
    assert code == 0
    data = json.loads(text)
    assert abs(data["global_E"] - 3.0) <= 1e-9
    assert [c["members"] for c in data["cuts"]] == [[0], [1], [2]]


def test_missing_state_file(tmp_path, capsys):
    code, _ = run(["measure", "--state", str(tmp_path / "missing.qs")])
    assert code == 1
    assert capsys.readouterr().err.startswith("error: io: ")


def test_selftest_lagrange(capsys):
    code, text = run(["selftest", "--lagrange", "--samples", "10000"])
    assert code == 0
    gap = float(text.split("max_rel_gap=")[1].split()[0])
    assert gap <= 1e-10 and text.rstrip().endswith("PASS")


def test_selftest_routes():
    code, text = run(["selftest", "--routes", "--samples", "50"])
    assert code == 0 and "PASS" in text


def test_selftest_needs_a_mode(capsys):
    assert run(["selftest"])[0] == 2


@pytest.mark.parametrize("argv", [[], ["measure"], ["measure", "--gen", "ghz", "--bogus"], ["frobnicate"]])
def test_usage_errors(argv, capsys):
    assert run(argv)[0] == 2


def test_ket_syntax_error(capsys):
    code, _ = run(["parse", "--ket", "|01"])
    assert code == 1
    assert capsys.readouterr().err.strip() == "error: syntax: offset 3: expected '>'"


def test_domain_errors_exit_one(capsys):
    assert run(["measure", "--gen", "w", "--n", "3", "--d", "3"])[0] == 1
    assert capsys.readouterr().err.startswith("error: unsupported: ")
    assert run(["measure", "--gen", "ghz", "--cut", "0+7"])[0] == 1
    assert capsys.readouterr().err.startswith("error: subset: ")


def test_measure_single_cut_csv():
    code, text = run(["measure", "--ket", "|00>+|11>", "--cut", "1", "--format", "csv", "--route", "wedge"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "members,E,E_max,separable"
    assert lines[1].startswith("1,") and lines[1].endswith(",false")


def test_measure_text_and_normalization_warning(capsys):
    code, text = run(["measure", "--ket", "|00>+|11>"])
    assert code == 0 and "global E" in text
    assert "warning" in capsys.readouterr().err


def test_gen_emit_state_round_trip(tmp_path):
    path = tmp_path / "hs.qs"
    assert run(["gen", "hs", "--n", "4", "--emit-state", str(path)])[0] == 0
    _, direct = run(["measure", "--gen", "hs", "--format", "json"])
    _, via_file = run(["measure", "--state", str(path), "--format", "json"])
    a, b = json.loads(direct), json.loads(via_file)
    assert abs(a["global_E"] - b["global_E"]) <= 1e-12
    assert abs(b["global_E"] - (4 + 2 * math.sqrt(3))) <= 1e-9


def test_gen_stdout():
    code, text = run(["gen", "ghz", "--n", "2", "--d", "3"])
    assert code == 0
    assert "dims: 3 3" in text


def test_search_byte_identical(tmp_path):
    argv = ["search", "--dims", "2,2", "--restarts", "2", "--iters", "100", "--seed", "3"]
    a, b = run(argv), run(argv)
    assert a[0] == 0 and a[1] == b[1]
    data = json.loads(a[1])
    assert data["max_evaluated"] <= data["upper_bound"] + 1e-6
    out = tmp_path / "best"
    assert run(argv + ["--out", str(out)])[1] == a[1]
    state = read_qs(tmp_path / "best.qs")
    report = json.loads((tmp_path / "best.json").read_text())
    assert report["global_E"] == data["report"]["global_E"]
    assert state.dims == (2, 2)


def test_bench_csv_identical_values():
    argv = ["bench", "--dims-list", "2,2", "2x3", "--cuts", "0", "--reps", "3", "--seed", "1"]
    code, text = run(argv)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "dims,cut,route,reps,median_ns,E"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["2x2", "2x2", "2x3", "2x3"]
    again = run(argv)[1].splitlines()
    assert [ln.split(",")[-1] for ln in again] == [ln.split(",")[-1] for ln in lines]


@pytest.mark.parametrize("fmt", ["qs", "ket", "json"])
def test_parse_formats(fmt):
    code, text = run(["parse", "--ket", "1/sqrt(2)*(|01>-|10>)", "--format", fmt])
    assert code == 0
    if fmt == "json":
        data = json.loads(text)
        assert data["dims"] == [2, 2]
        assert data["amplitudes"][2][0] == pytest.approx(-1 / math.sqrt(2))
    elif fmt == "ket":
        assert parse_ket(text.strip()).amplitudes[1] == pytest.approx(1 / math.sqrt(2))
    else:
        assert text.startswith("dims: 2 2")


def test_parse_dims_forms():
    assert parse_dims("2,3") == (2, 3)
    assert parse_dims("2x3x4") == (2, 3, 4)
    assert parse_dims(" 2 2 ") == (2, 2)
