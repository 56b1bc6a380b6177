import json
import subprocess
import sys

import pytest

from crosstopo import jsonio
from crosstopo.cli import main

ONE_CROSS = {"parts": [
    {"kind": "segment", "axis": "vertical", "level": "0", "span": {"lo": "0", "hi": "1"}},
    {"kind": "segment", "axis": "horizontal", "level": "0", "span": {"lo": "0", "hi": "1"}},
]}
DIAGONAL = {"tail_x": {"c": "0", "a": "1", "b": "1"}, "tail_y": {"c": "0", "a": "1", "b": "1"}}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_gamma_compact_one_point_cross(capsys, tmp_path):
    src = tmp_path / "k.json"
    src.write_text(json.dumps(ONE_CROSS))
    code, rep, _ = run(capsys, "gamma-compact", "--input", str(src))
    assert code == 0
    assert rep["verdict"] == "compact"
    assert rep["certificate"]["cross_cover"] == [["0", "0"]]
    jsonio.validate_report(rep)


def test_gamma_limit_expect_diverges(capsys):
    code, rep, _ = run(capsys, "gamma-limit", "--input", json.dumps(DIAGONAL), "--expect", "diverges")
    assert code == 0 and rep["expect_matched"] is True


def test_expect_mismatch_exits_2_and_writes_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "gamma-limit", "--input", json.dumps(DIAGONAL), "--expect", "converges",
                     "--output", str(out))
    assert code == 2
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "diverges" and rep["expect_matched"] is False


def test_zero_denominator_exits_1(capsys):
    code, rep, err = run(capsys, "gamma-limit", "--input", '{"tail_x": "1/0", "tail_y": "0"}')
    assert code == 1 and rep is None
    assert "1/0" in err


def test_schema_violation_names_the_field(capsys):
    doc = {"parts": [{"kind": "box", "x": {"lo": "0", "hi": "1"}}]}
    code, _, err = run(capsys, "gamma-open", "--input", json.dumps(doc))
    assert code == 1 and "parts/0" in err


def test_invalid_json_reports_line_and_column(capsys, tmp_path):
    src = tmp_path / "bad.json"
    src.write_text('{\n  "parts": [\n    oops\n  ]\n}\n')
    code, _, err = run(capsys, "gamma-open", "--input", str(src))
    assert code == 1 and "line 3" in err and "column 5" in err


def test_missing_file_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "gamma-open", "--input", str(tmp_path / "nope.json"))
    assert code == 1 and "cannot read" in err


def test_gamma_open_modes(capsys):
    doc = json.dumps({"parts": [{"kind": "point", "at": ["1/2", "1/2"]}]})
    assert run(capsys, "gamma-open", "--input", doc)[1]["verdict"] == "not_open"
    assert run(capsys, "gamma-open", "--input", doc, "--mode", "complement")[1]["verdict"] == "open"


def test_gamma_discrete_both_inputs(capsys):
    code, rep, _ = run(capsys, "gamma-discrete", "--input", json.dumps({"points": [["0", "0"], ["0", "1"]]}))
    assert rep["verdict"] == "not_discrete"
    code, rep, _ = run(capsys, "gamma-discrete", "--input", json.dumps({"tail_x": "1/2", "tail_y": "1/2"}))
    assert rep["verdict"] == "not_discrete"
    assert run(capsys, "gamma-discrete", "--input", json.dumps(DIAGONAL))[1]["verdict"] == "discrete"
    injective = {"tail_x": {"c": "0", "a": "1", "b": "1"}, "tail_y": {"c": "0", "a": "1", "b": "2"}}
    assert run(capsys, "gamma-discrete", "--input", json.dumps(injective))[1]["verdict"] == "discrete"


def test_coincide(capsys):
    doc = {"A": ["1/4", "3/4"], "B": ["1/2"], "p": ["1/4", "1/2"]}
    code, rep, _ = run(capsys, "coincide", "--input", json.dumps(doc))
    assert code == 0 and rep["certificate"]["c"] == ["1/4", "1/2"]
    doc["p"] = ["1/3", "1/3"]
    assert run(capsys, "coincide", "--input", json.dumps(doc))[0] == 1


def test_raster_with_svg(capsys, tmp_path):
    doc = {"set": {"parts": [{"kind": "box", "x": {"lo": "0", "hi": "1"}, "y": {"lo": "0", "hi": "1"}}]},
           "punctures": [["1/2", "1/2"], ["1/3", "2/3"]]}
    svg = tmp_path / "c.svg"
    code, rep, _ = run(capsys, "raster", "--n", "16", "--input", json.dumps(doc), "--svg", str(svg))
    assert code == 0 and rep["verdict"] == "connected"
    assert rep["details"]["cells"] == 254
    assert svg.read_text().startswith("<svg")


def test_crossmap_commands(capsys):
    code, rep, _ = run(capsys, "crossmap", "enumerate", "--n", "2", "--a", "1/2", "--b", "1/2", "--count-only")
    assert code == 0 and rep["details"]["count"] == 2
    code, rep, _ = run(capsys, "crossmap", "enumerate", "--n", "2", "--a", "0,1", "--b", "1/3")
    assert rep["verdict"] == "dichotomy_holds"
    assert run(capsys, "crossmap", "enumerate", "--n", "6")[0] == 1
    doc = {"n": 2, "images": [["1/4", "0"], ["3/4", "0"], ["1/4", "0"], ["3/4", "0"]], "B": ["0"]}
    code, rep, _ = run(capsys, "crossmap", "classify", "--input", json.dumps(doc))
    assert rep["verdict"] == "row_collapse" and rep["replay_log"][0]["ok"]


def test_lebesgue_commands(capsys, tmp_path):
    doc = {"maps": [{"pieces": [{"x": ["0", "1"], "y": ["0", "1"], "tag": "row", "level": "0"}]}]}
    code, rep, _ = run(capsys, "lebesgue", "refute", "--input", json.dumps(doc))
    assert code == 0 and rep["witness"]["point"] == ["1/2", "1/2"]
    svg = tmp_path / "e.svg"
    code, rep, _ = run(capsys, "lebesgue", "approx", "--oracle", "builtin:lipschitz", "--depth", "8", "--svg", str(svg))
    assert code == 0 and rep["verdict"] == "bounds_hold"
    assert "polyline" in svg.read_text()
    assert run(capsys, "lebesgue", "approx", "--depth", "4", "--level", "5")[0] == 1
    assert run(capsys, "lebesgue", "approx", "--oracle", "builtin:nope")[0] == 1


def test_suite_command_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["suite", "prop3", "--seed", "4", "--output", str(a)]) == 0
    assert main(["suite", "prop3", "--seed", "4", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(capsys, "suite", "unknown")[0] == 1


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "crosstopo.cli", "gamma-limit", "--input",
                           json.dumps(DIAGONAL), "--expect", "diverges"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr


@pytest.mark.parametrize("text", ['"1/2"', '"-3"', '" 2 / 4 "'])
def test_input_rationals(text):
    assert jsonio.formula_from(json.loads(text)).is_constant
