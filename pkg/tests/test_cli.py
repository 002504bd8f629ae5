import csv
import json
import math
import subprocess
import sys

import pytest

from prodwishart.cli import run
from prodwishart.svgplot import render_svg


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_zeros_csv(tmp_path):
    out = tmp_path / "z.csv"
    assert run(["charpoly", "zeros", "--r", "2", "--kappa", "0", "--nu", "0", "--n", "2", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["index", "zero", "rescaled_zero"]
    assert len(rows) == 3
    assert float(rows[1][1]) == pytest.approx((4 - math.sqrt(10)) / 3, rel=1e-12)
    assert float(rows[2][2]) == pytest.approx((4 + math.sqrt(10)) / 6, rel=1e-12)
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")


def test_seventeen_digits(tmp_path):
    out = tmp_path / "s.csv"
    assert run(["raney", "stieltjes", "--r", "3", "--z", "5", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["z", "F", "w", "F_quadrature"]
    assert rows[1][1] == format(float(rows[1][1]), ".17g")
    assert float(rows[1][1]) == pytest.approx(0.2351141, abs=1e-6)


def test_fig1_outputs(tmp_path):
    out, svg = tmp_path / "fig1.csv", tmp_path / "fig1.svg"
    assert run(["asymptotics", "fig1", "--points", "40", "--out", str(out), "--svg", str(svg)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["phi", "x", "normalized_poly", "cosine_approximant"]
    assert len(rows) == 41
    text = svg.read_text()
    assert text.count("<polyline") == 2
    assert "normalized_poly" in text and "cosine_approximant" in text


def test_fig1_default_is_500_points(tmp_path):
    out = tmp_path / "fig1.json"
    assert run(["asymptotics", "fig1", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["phi"]) == 500
    assert doc["meta"]["n"] == 150 and doc["meta"]["nu"] == [2, 5]


def test_raney_cdf_svg(tmp_path):
    out, svg = tmp_path / "v.csv", tmp_path / "fig2.svg"
    assert run(["raney", "cdf", "--r", "3", "--points", "400", "--out", str(out), "--svg", str(svg)]) == 0
    rows = read_csv(out)[1:]
    assert float(rows[0][0]) == 0 and float(rows[-1][0]) == pytest.approx(4.0)
    assert float(rows[0][1]) == 0 and float(rows[-1][1]) == 1
    assert svg.read_text().count("<polyline") == 1


def test_json_mirrors_csv(tmp_path):
    c, j = tmp_path / "m.csv", tmp_path / "m.json"
    args = ["raney", "moments", "--r", "3", "--kmax", "3"]
    assert run(args + ["--out", str(c)]) == 0
    assert run(args + ["--format", "json", "--out", str(j)]) == 0
    rows = read_csv(c)
    doc = json.loads(j.read_text())
    assert list(doc) == rows[0] + ["meta"]
    assert doc["raney_number"] == [float(r[1]) for r in rows[1:]]
    assert doc["meta"]["command"] == "raney moments" and doc["meta"]["r"] == 3


def test_simulate_then_ks(tmp_path, capsys):
    eig = tmp_path / "eig.csv"
    assert run(["simulate", "--r", "3", "--n", "100", "--kappa", "1", "--nu", "0,0", "--trials", "50",
                "--seed", "42", "--out", str(eig)]) == 0
    assert read_csv(eig)[0] == ["index", "value"]
    capsys.readouterr()
    assert run(["ks", "--input", str(eig), "--r", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert list(doc) == ["ks"]
    assert 0 < doc["ks"] <= 0.08


def test_eval_exact(capsys):
    assert run(["charpoly", "eval", "--r", "2", "--kappa", "0", "--nu", "0", "--n", "2", "--x", "2,1/3", "--exact"]) == 0
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[0] == ["x", "F_n", "P_n", "F_n_exact"]
    assert rows[1][3] == "-1"
    assert rows[2][3] == "-1/6"


@pytest.mark.parametrize(
    "argv",
    [
        ["charpoly", "zeros", "--r", "2", "--n", "3", "--nu", "0,0"],
        ["charpoly", "zeros", "--r", "2"],
        ["asymptotics", "compare", "--r", "3", "--n", "10", "--phi-min", "0.5", "--phi-max", "0.2"],
        ["asymptotics", "compare", "--r", "3", "--n", "10", "--points", "1"],
        ["raney", "density", "--r", "3", "--points", "1"],
        ["simulate", "--r", "2", "--n", "10", "--kappa", "0"],
        ["nonsense"],
        ["charpoly", "eval", "--r", "2", "--n", "2", "--x", "abc"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 1
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1
    assert json.loads(err[0])["error"] == "usage"


def test_io_error(tmp_path, capsys):
    assert run(["ks", "--input", str(tmp_path / "missing.csv"), "--r", "3"]) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "io"
    bad = tmp_path / "nodir" / "out.csv"
    assert run(["raney", "moments", "--r", "3", "--out", str(bad)]) == 3


def test_numeric_error(capsys, monkeypatch):
    from prodwishart import raney
    from prodwishart.numerics import NumericalFailure

    def boom(*a, **k):
        raise NumericalFailure("quadrature did not settle")

    monkeypatch.setattr(raney, "moment_quadrature", boom)
    assert run(["raney", "moments", "--r", "3"]) == 2
    assert json.loads(capsys.readouterr().err) == {"error": "numeric", "reason": "quadrature did not settle"}


def test_render_svg_contract():
    svg = render_svg({"x": [0, 1, 2], "a": [1, 2, 3], "b": [3, 2, 1]}, "x", ["a", "b"])
    assert svg.count("<polyline") == 2
    assert svg.startswith("<?xml")


def test_empty_series_is_usage_error(tmp_path, capsys):
    from prodwishart.numerics import DomainError
    from prodwishart.svgplot import plot_svg

    with pytest.raises(DomainError):
        plot_svg({"x": [], "y": []}, str(tmp_path / "e.svg"))
    with pytest.raises(DomainError):
        plot_svg({"x": [0.0, 1.0]}, str(tmp_path / "e.svg"))
    # a one-point cdf grid is rejected before anything is drawn
    assert run(["raney", "cdf", "--r", "3", "--points", "0", "--svg", str(tmp_path / "e.svg")]) == 1


def test_module_entry_point(tmp_path):
    out = tmp_path / "z.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "prodwishart", "charpoly", "zeros", "--r", "2", "--n", "1", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert read_csv(out)[1][1].startswith("1")
