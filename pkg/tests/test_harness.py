import json

import pytest

from paracalc.algebra import Paravector
from paracalc.cli import main
from paracalc.fields import PolynomialField
from paracalc.harness import (
    ConfigError,
    SUITE_NAMES,
    SuiteConfig,
    case_rng,
    convergence_ok,
    ConvergenceRow,
    report_to_json,
    run_convergence,
    run_suite,
)


def small_cfg(suite, **kw):
    kw.setdefault("samples", 3)
    return SuiteConfig(suite=suite, **kw)


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig(suite="bogus")
    with pytest.raises(ConfigError):
        SuiteConfig(suite="algebra", samples=0)
    with pytest.raises(ConfigError):
        SuiteConfig(suite="algebra", tol_exact=0.0)
    with pytest.raises(ConfigError):
        SuiteConfig(suite="algebra", h=-1.0)
    with pytest.raises(ConfigError):
        SuiteConfig(suite="algebra", seed=-1)


def test_json_reports_are_byte_identical():
    a = report_to_json(run_suite(small_cfg("algebra", samples=10, seed=42)))
    b = report_to_json(run_suite(small_cfg("algebra", samples=10, seed=42)))
    assert a == b
    assert a.endswith("\n")
    assert a.encode("utf-8").decode("utf-8") == a


def test_json_schema_and_key_order():
    rep = run_suite(small_cfg("algebra", seed=7))
    obj = json.loads(report_to_json(rep))
    assert list(obj.keys()) == [
        "suite", "seed", "samples", "tolerances", "cases", "passed", "failed",
    ]
    assert list(obj["tolerances"].keys()) == ["exact", "numeric", "step"]
    for case in obj["cases"]:
        assert list(case.keys()) == ["name", "residual", "threshold", "pass"]
        assert case["pass"] == (case["residual"] <= case["threshold"])
    assert obj["passed"] + obj["failed"] == len(obj["cases"])


def test_verbose_json_adds_components():
    rep = run_suite(small_cfg("algebra", seed=7))
    obj = json.loads(report_to_json(rep, verbose=True))
    assert any("components" in case for case in obj["cases"])


def test_all_concatenates_in_fixed_order():
    cfg = small_cfg("all", samples=1)
    rep = run_suite(cfg)
    prefixes = [c.name.split("/")[0] for c in rep.cases]
    seen = []
    for p in prefixes:
        if not seen or seen[-1] != p:
            seen.append(p)
    assert seen == list(SUITE_NAMES)


def test_substreams_stable_across_all_and_single_runs():
    all_rep = run_suite(small_cfg("all", samples=2, seed=5))
    tr_rep = run_suite(small_cfg("transforms", samples=2, seed=5))
    all_res = {c.name: c.residual for c in all_rep.cases if c.name.startswith("transforms/")}
    tr_res = {c.name: c.residual for c in tr_rep.cases}
    assert all_res == tr_res


def test_case_rng_substreams_differ():
    a = case_rng(1, "algebra", 0).integers(0, 2**31)
    b = case_rng(1, "algebra", 1).integers(0, 2**31)
    c = case_rng(1, "diffop", 0).integers(0, 2**31)
    assert len({int(a), int(b), int(c)}) == 3


def test_forced_failure_via_tolerance():
    rep = run_suite(small_cfg("transforms", tol_exact=1e-30))
    assert rep.failed > 0


def test_default_suites_pass():
    for suite in SUITE_NAMES:
        rep = run_suite(small_cfg(suite, samples=3))
        failed = [c.name for c in rep.cases if not c.passed]
        assert not failed, f"{suite}: {failed}"


# -- convergence ------------------------------------------------------------------

def test_run_convergence_poly_ratio_band():
    rows = run_convergence("poly", [1e-3, 5e-4], seed=42)
    assert rows[0].ratio is not None
    assert 3.2 <= rows[0].ratio <= 4.8
    assert rows[-1].ratio is None
    assert convergence_ok(rows)


def test_run_convergence_planewave_ratio_band():
    rows = run_convergence("planewave", [1e-3, 5e-4], seed=42)
    assert 3.2 <= rows[0].ratio <= 4.8


def test_run_convergence_constant_field_reports_not_applicable():
    const = PolynomialField.constant(Paravector(1.0, (1.0, 2.0, 3.0)))
    rows = run_convergence("poly", [1e-3, 5e-4], seed=1, fields=[const])
    assert all(r.max_error == 0.0 for r in rows)
    assert all(r.ratio is None for r in rows)
    assert convergence_ok(rows)


def test_run_convergence_validation():
    with pytest.raises(ConfigError):
        run_convergence("bogus", [1e-3, 5e-4])
    with pytest.raises(ConfigError):
        run_convergence("poly", [1e-3])
    with pytest.raises(ConfigError):
        run_convergence("poly", [5e-4, 1e-3])
    with pytest.raises(ConfigError):
        run_convergence("poly", [1e-3, 0.0])


def test_convergence_ok_band_check():
    rows = [ConvergenceRow(1e-3, 1e-6, 9.0), ConvergenceRow(5e-4, 1.1e-7, None)]
    assert not convergence_ok(rows)  # 9.0 is far from the predicted 4.0


# -- CLI ---------------------------------------------------------------------------

def test_cli_check_passes(capsys):
    rc = main(["check", "algebra", "--seed", "42", "--samples", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "PASS" in out and "failed=0" in out


def test_cli_json_deterministic(capsys):
    argv = ["check", "algebra", "--seed", "42", "--samples", "3", "--json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.endswith("\n")
    json.loads(first)


def test_cli_forced_failure_exit_code():
    assert main(["check", "transforms", "--samples", "2", "--tol-exact", "1e-30"]) == 1


def test_cli_unknown_suite_exit_code(capsys):
    assert main(["check", "bogus"]) == 2
    capsys.readouterr()


def test_cli_bad_samples_exit_code(capsys):
    assert main(["check", "algebra", "--samples", "0"]) == 2
    capsys.readouterr()


def test_cli_convergence(capsys):
    rc = main(["convergence", "--field", "poly", "--steps", "1e-3,5e-4"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "max_error" in out and "n/a" in out


def test_cli_convergence_bad_steps(capsys):
    assert main(["convergence", "--field", "poly", "--steps", "1e-3"]) == 2
    assert main(["convergence", "--field", "poly", "--steps", "5e-4,1e-3"]) == 2
    assert main(["convergence", "--field", "poly", "--steps", "abc"]) == 2
    capsys.readouterr()


def test_cli_verbose_table(capsys):
    rc = main(["check", "algebra", "--samples", "2", "--verbose"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "components:" in out


def test_numeric_transform_cases_share_exact_substreams():
    from paracalc import harness

    cases = harness._transforms_cases()
    by_name = {c.name: c for c in cases}
    order = [c.name for c in cases]
    for exact_name in ("div-left-transport", "grad-left-transport",
                       "div-right-transport", "grad-right-transport",
                       "right-factor"):
        numeric = by_name[f"{exact_name}-numeric"]
        assert numeric.substream == order.index(f"{exact_name}-exact")
