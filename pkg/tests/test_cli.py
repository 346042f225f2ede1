import json
import math

import numpy as np
import pytest

from cesarolab.serialize import from_csv
from cesarolab.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("1+0.5i") == 1 + 0.5j
    assert parse_complex("2") == 2
    assert parse_complex("-i") == -1j
    assert parse_complex("3 - 2i") == 3 - 2j
    with pytest.raises(Exception):
        parse_complex("abc")


def test_matrix_cesaro_csv(capsys):
    code, out, _ = run(capsys, "matrix", "cesaro", "--n", "4", "--format", "csv")
    assert code == EXIT_OK
    M = from_csv(out).entries
    assert M.shape == (5, 5)
    for i in range(5):
        assert np.allclose(M[i, : i + 1], 1 / (i + 1)) and not M[i, i + 1 :].any()


@pytest.mark.parametrize("target", ["adjoint", "comp", "generator", "resolvent", "cogenerator", "frac", "sqrt"])
def test_matrix_targets_json(capsys, target):
    code, out, _ = run(capsys, "matrix", target, "--n", "6", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["N"] == 6 if "N" in doc else True


def test_matrix_out_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "matrix", "cesaro", "--n", "3", "--format", "json", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert path.read_text().strip()


def test_check_identities(capsys):
    code, out, _ = run(capsys, "check", "identities", "--n", "128")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["pass"]
    assert rep["checks"][0]["name"] == "V - I + 2 C*" and rep["checks"][0]["residual"] <= 1e-12


@pytest.mark.parametrize("target", ["intertwining", "shift-invariance"])
def test_checks_embed_seed(capsys, target):
    code, out, _ = run(capsys, "check", target, "--seed", "7", "--n", "128")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["pass"] and rep["seed"] == 7
    code2, out2, _ = run(capsys, "check", target, "--seed", "7", "--n", "128")
    assert out2 == out


def test_check_norm_small(capsys):
    code, out, _ = run(capsys, "check", "norm", "--orders", "16,32,64", "--times", "0.5")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["pass"]
    ratios = [row["ratio"] for row in rep["curves"]["0.5"]]
    assert ratios == sorted(ratios) and ratios[-1] <= 1 + 1e-8
    assert len(rep["curves"]["0.5"]) == 3


def test_weight_plot(capsys):
    code, out, _ = run(capsys, "weight", "plot", "--from", "-6", "--to", "3", "--step", "0.01")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "y,w" and len(lines) == 902
    w = np.array([float(l.split(",")[1]) for l in lines[1:]])
    assert np.all(np.diff(w) < 0)
    assert abs(w[0] - math.e**2 * math.exp(-2 * math.exp(-6))) < 1e-12 and w[-1] < 1e-15


def test_weight_domar(capsys):
    code, out, _ = run(capsys, "weight", "domar")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["indicator_running_min"] > -1
    code, out, _ = run(capsys, "weight", "domar", "--weight", "exponential")
    assert json.loads(out)["rigidity"]["condition2"]["status"] == "violated on samples"


@pytest.mark.parametrize("argv", [
    ("demo", "non-unicellular"),
    ("demo", "muntz"),
    ("demo", "nonstandard-subspace", "--lam", "1+1i", "--edge", "0.5"),
    ("demo", "model-space", "--zeros", "1+1i:2,2"),
])
def test_demos_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["pass"], rep


@pytest.mark.parametrize("argv,needle", [
    (("matrix", "frac", "--beta", "-1"), "Re(beta) > 0"),
    (("matrix", "frac", "--lam", "0.4"), "Re(lam) > 1/2"),
    (("matrix", "comp", "--t", "-1"), "--t"),
    (("matrix", "cesaro", "--n", "-3"), "--n"),
    (("check", "shift-invariance", "--gamma", "0.7"), "Re(gamma) < 1/2"),
    (("weight", "plot", "--step", "0"), "step"),
    (("demo", "non-unicellular", "--lam1", "2", "--lam2", "2"), "differ"),
])
def test_usage_errors(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert needle in err


def test_argparse_errors_are_usage(capsys):
    assert run(capsys, "matrix", "bogus")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "--help")[0] == EXIT_OK


def test_computation_failure_reports_json(capsys):
    code, out, _ = run(capsys, "matrix", "frac", "--n", "64", "--method", "direct-sum", "--tolerance", "1e-12")
    rep = json.loads(out)
    assert code == EXIT_FAIL and rep["error"] == "CancellationError" and not rep["pass"]
