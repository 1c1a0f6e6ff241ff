import csv
import io
import json

import numpy as np
import pytest

from fuzzylimit.cli import main, parse_range, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_parse_range():
    assert parse_range("2..6") == [2, 3, 4, 5, 6]
    assert parse_range("2-4") == [2, 3, 4]
    assert parse_range("2,3,5") == [2, 3, 5]
    for bad in ("", "6..2", "a..b"):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_fuzzy_sphere_csv(capsys):
    code, out = run(capsys, "fuzzy-sphere", "--k", "2..4", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.out)))
    np.testing.assert_allclose([float(r["hbar_sq"]) for r in rows], [4 / 3, 1 / 2, 4 / 15])
    assert all(r["verdict"] == "pass" for r in rows)


def test_fuzzy_torus_json(capsys):
    code, out = run(capsys, "fuzzy-torus", "--k", "1..4")
    assert code == 0
    rep = json.loads(out.out)
    assert [r["algebra_dim"] for r in rep["rows"]] == [1, 4, 9, 16]


def test_moyal_small(capsys):
    cfg = json.dumps({"n_specs": 2, "n_triples": 4, "n_pairs": 4, "degree": 3})
    code, out = run(capsys, "moyal", "--config", cfg)
    assert code == 0
    assert [r["check"] for r in json.loads(out.out)["rows"]] == \
        ["associativity", "intertwiner", "star_p_cone"]


def test_defect_scan(capsys):
    code, out = run(capsys, "defect-scan", "--k", "4..12", "--pair", "linear")
    assert code == 0 and json.loads(out.out)["verdict"] == "exact"
    code, out = run(capsys, "defect-scan", "--family", "torus", "--k", "8..32",
                    "--norm", "normalized")
    assert code == 0
    assert abs(json.loads(out.out)["slope"] - 2) <= 0.2


def test_matrix_model_and_trace(capsys, tmp_path):
    trace = tmp_path / "trace.csv"
    code, out = run(capsys, "matrix-model", "--k", "4", "--trace", str(trace))
    assert code == 0
    assert json.loads(out.out)["rows"][0]["classification"] == "representation"
    assert "iter,action,grad_norm,eom_residual" in trace.read_text()


def test_pipeline_out_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _ = run(capsys, "pipeline", "--k", "2..4", "--out", str(path))
    assert code == 0
    rep = json.loads(path.read_text())
    assert rep["passed"] and rep["vertex"]["algebra"] == "Kirillov-Kostant"


def test_usage_errors(capsys):
    assert run(capsys, "fuzzy-sphere", "--k", "5..2")[0] == 2
    assert run(capsys, "fuzzy-sphere", "--k", "1..3")[0] == 2
    assert run(capsys, "moyal", "--config", "{not json")[0] == 2
    assert run(capsys, "defect-scan", "--pair", "nope")[0] == 2
    code, out = run(capsys, "pipeline", "--config", '{"structure": {"f": 3}}')
    assert code == 2 and "error" in out.err


def test_failing_run_exits_one(capsys):
    code, _ = run(capsys, "defect-scan", "--k", "5,6")
    assert code == 1
