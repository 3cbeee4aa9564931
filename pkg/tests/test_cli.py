import csv
import io
import math
import subprocess
import sys

import pytest

from caputo import cli
from caputo.cli import RunSpec, catalog_function, cmd_compare, cmd_fig1, cmd_sweep, evaluate, main
from caputo.composition import TruncationPlan
from caputo.core import caputo_quadrature
from caputo.errors import DomainError
from oracle_values import CAPUTO_TANH


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_trivial_series(capsys):
    code, out, _ = run(["eval", "--function", "x", "--method", "series", "--alpha", "0", "--x-start", "2", "--x-count", "1"], capsys)
    assert code == 0
    assert out == "x,alpha,value,terms_used,last_term,converged\n2,0,2,1,0,true\n"


def test_eval_tanh_quadrature_matches_oracle(capsys):
    code, out, _ = run(["eval", "--function", "tanh", "--alpha", "0.5", "--x-start", "1", "--x-count", "1"], capsys)
    (row,) = rows(out)
    assert code == 0
    assert float(row["value"]) == pytest.approx(CAPUTO_TANH[(0.5, 1.0)], rel=1e-10)
    assert row["converged"] == "true"


def test_eval_row_order_and_count(capsys):
    _, out, _ = run(["eval", "--function", "sin", "--alpha", "0.2", "--alpha", "0.8", "--x-count", "4"], capsys)
    r = rows(out)
    assert len(r) == 8
    assert [row["alpha"] for row in r[:2]] == ["0.20000000000000001", "0.80000000000000004"]
    xs = [float(row["x"]) for row in r[::2]]
    assert xs == sorted(xs)


def test_csv_lossless_and_lf_only(capsys):
    _, out, _ = run(["eval", "--function", "exp", "--method", "closed-form", "--alpha", "0.3", "--x-count", "5"], capsys)
    assert "\r" not in out
    for row in rows(out):
        x = float(row["x"])
        v = evaluate("exp", 1.0, "closed-form", 0.3, x, TruncationPlan()).value
        assert float(row["value"]) == v


def test_compare_tanh_within_tolerance(capsys):
    code, out, _ = run(
        ["compare", "--function", "tanh", "--methods", "quadrature", "product-rule", "--alpha", "0.5", "--tol", "1e-4"],
        capsys,
    )
    assert code == 0
    r = rows(out)
    assert len(r) == 15
    assert max(float(row["max_pairwise_diff"]) for row in r) < 1e-4


def test_compare_tolerance_violation_exit_code(capsys):
    code, _, err = run(["compare", "--function", "tanh", "--methods", "quadrature", "product-rule", "-L", "3", "--tol", "1e-8"], capsys)
    assert code == cli.EXIT_TOL
    assert "differ" in err


def test_compare_constant_all_methods(capsys):
    code, out, _ = run(["compare", "--function", "const", "--beta", "3", "--methods", *cli.METHODS, "--alpha", "0.4"], capsys)
    assert code == 0
    for row in rows(out):
        assert all(float(row[m]) == 0.0 for m in cli.METHODS)
        assert float(row["max_pairwise_diff"]) == 0.0


def test_compare_sinh_closed_form_vs_series():
    spec = RunSpec("compare", "sinh", methods=("closed-form", "series"), alphas=(0.75,), x_start=0.5, x_stop=0.5, x_count=1, terms=30)
    table = cmd_compare(spec)
    assert table.rows[0][4] < 1e-6


def test_compare_needs_two_methods():
    with pytest.raises(DomainError):
        RunSpec("compare", "sinh", methods=("series",))


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--alpha", "1.5"],
        ["eval", "--x-start", "0"],
        ["eval", "--function", "tanh", "--method", "closed-form"],
        ["eval", "--function", "gamma"],
        ["eval", "--x-start", "2", "--x-stop", "1"],
        ["fig1", "--plot-script", "p.gp"],
    ],
)
def test_invalid_arguments_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == cli.EXIT_USAGE


def test_failed_point_flagged_not_aborted(monkeypatch, capsys):
    real = cli.evaluate

    def flaky(name, beta, method, alpha, x, plan):
        if x > 1.0:
            raise DomainError("boom")
        return real(name, beta, method, alpha, x, plan)

    monkeypatch.setattr(cli, "evaluate", flaky)
    code, out, err = run(["eval", "--function", "sinh", "--x-count", "3"], capsys)
    assert code == 0
    last = rows(out)[-1]
    assert last["value"] == "nan" and last["converged"] == "false"
    assert "boom" in err
    code, _, _ = run(["eval", "--function", "sinh", "--x-count", "3", "--strict"], capsys)
    assert code == cli.EXIT_STRICT


def test_strict_passes_when_converged(capsys):
    code, _, _ = run(["eval", "--function", "sinh", "--method", "series", "-L", "40", "--strict"], capsys)
    assert code == 0


def test_deterministic_across_runs_and_threads(capsys):
    argv = ["compare", "--function", "cosh", "--methods", "quadrature", "series", "chain-rule", "--alpha", "0.3", "--alpha", "0.6"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    _, c, _ = run(argv + ["--jobs", "4"], capsys)
    assert a == b == c


def test_fig1_grid_and_endpoints(tmp_path, capsys):
    out, script = tmp_path / "fig1.csv", tmp_path / "fig1.gp"
    code, _, _ = run(["fig1", "--output", str(out), "--plot-script", str(script)], capsys)
    assert code == 0
    r = rows(out.read_text())
    assert len(r) == 200
    assert list(r[0]) == ["x", "alpha_0", "alpha_0.25", "alpha_0.5", "alpha_0.75", "alpha_1", "max_last_term", "converged"]
    for i, row in enumerate(r, start=1):
        x = float(row["x"])
        assert x == 4 * i / 200
        assert float(row["alpha_0"]) == pytest.approx(math.tanh(x), rel=1e-14)
        if x <= 1.5:
            assert float(row["alpha_1"]) == pytest.approx(1 / math.cosh(x) ** 2, rel=1e-4)
    text = script.read_text()
    assert str(out) in text and "plot for [i=2:6]" in text


def test_fig1_middle_column_matches_quadrature():
    table = cmd_fig1(RunSpec("fig1", alphas=cli.FIG1_ALPHAS, x_stop=4.0, x_count=200))
    row = table.rows[49]  # x = 1
    assert row[0] == 1.0
    assert row[3] == pytest.approx(CAPUTO_TANH[(0.5, 1.0)], rel=1e-4)


def test_sweep_error_shrinks_with_terms():
    spec = RunSpec("sweep", "tanh", methods=("product-rule",), alphas=(0.5,), x_start=1.0, x_stop=1.0, x_count=1, sweep_terms=(5, 10, 20))
    errors = [row[5] for row in cmd_sweep(spec).rows]
    assert errors[0] > errors[1] > errors[2]


@pytest.mark.parametrize("name", cli.CATALOG)
def test_catalog_routes_agree(name):
    beta, alpha, x = 0.8, 0.4, 0.7
    plan = TruncationPlan(15, 30)
    ref = caputo_quadrature(catalog_function(name, beta), alpha, x)
    methods = [m for m in cli.METHODS if not (m == "closed-form" and name in ("tanh", "sech"))]
    for m in methods:
        assert evaluate(name, beta, m, alpha, x, plan).value == pytest.approx(ref, rel=1e-8, abs=1e-14), m


def test_catalog_scale():
    assert catalog_function("sin", 2.0)(0.3) == pytest.approx(math.sin(0.6), rel=1e-15)
    assert catalog_function("const", 2.0)(5.0) == 2.0
    with pytest.raises(ValueError):
        catalog_function("sqrt")


def test_table_output(capsys):
    code, out, _ = run(["eval", "--function", "sinh", "--x-count", "2", "--table"], capsys)
    assert code == 0
    assert out.splitlines()[0].split() == ["x", "alpha", "value", "terms_used", "last_term", "converged"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "caputo", "eval", "--function", "x", "--alpha", "1", "--x-start", "3", "--x-count", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "3,1,1,96,0,true"
