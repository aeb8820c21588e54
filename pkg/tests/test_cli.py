import json
import xml.etree.ElementTree as ET

import pytest

from khayyam_cubics.cli import main


def test_solve_json(capsys):
    assert main(["solve", "x^3 + x = 2", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["species"] == "S1"
    assert body["agreement"] is True
    assert [r["x"] for r in body["roots"]] == [pytest.approx(1.0)]


def test_solve_human_readable(capsys):
    assert main(["solve", "--coeffs", "-3", "0", "1"]) == 0
    out = capsys.readouterr().out
    assert "S5" in out and "agreement  yes" in out


def test_solve_no_positive_root_exits_zero(capsys):
    assert main(["solve", "--coeffs", "-1", "0", "1"]) == 0
    out = capsys.readouterr().out
    assert "none" in out


def test_classify_output(capsys):
    assert main(["classify", "--coeffs", "-6", "11", "-6"]) == 0
    out = capsys.readouterr().out
    assert "S12" in out
    assert "family IV" in out
    assert "x(y+b)=bl" in out


def test_classification_errors_exit_two(capsys):
    assert main(["classify", "x^2 + 1 = 0"]) == 2
    assert "DegreeError" in capsys.readouterr().err
    assert main(["solve", "--coeffs", "0", "2", "3"]) == 2
    assert "ExcludedAllPositiveError" in capsys.readouterr().err


def test_usage_errors_exit_one(capsys):
    assert main(["solve"]) == 1
    assert main(["solve", "x^3 = 2", "--coeffs", "0", "0", "-2"]) == 1
    assert main(["frobnicate"]) == 1
    capsys.readouterr()


def test_table_is_deterministic_and_complete(capsys):
    assert main(["table"]) == 0
    first = capsys.readouterr().out
    assert main(["table"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.count("\n") >= 14
    assert "y²=(x+l)(x+a)" in first
    assert "by=x(x+a)" in first


def test_table_json(capsys):
    assert main(["table", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert [r["species"] for r in rows] == [f"S{i}" for i in range(1, 14)]


def test_render_writes_svg(tmp_path, capsys):
    out = tmp_path / "diagram.svg"
    assert main(["render", "x^3 + x = 2", "--output", str(out), "--samples", "64"]) == 0
    svg = out.read_text(encoding="utf-8")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")


def test_render_no_hidden(tmp_path):
    out = tmp_path / "d.svg"
    assert main(["render", "x^3 + x = 2", "--output", str(out), "--no-hidden"]) == 0
    assert 'data-role="hidden"' not in out.read_text(encoding="utf-8")


def test_fuzz_batch(capsys):
    assert main(["solve", "--fuzz", "3", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "total disagreements: 0" in out
