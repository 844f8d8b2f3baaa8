"""Guard rails: displayed weight values, higher N, drift detection."""

import dataclasses

import pytest

from nfoldsusy import goldens, suites
from nfoldsusy.cli import main
from nfoldsusy.parsing import parse
from nfoldsusy.susy import build_system, derive_conditions, eliminate_potentials


def test_displayed_integral_weights():
    # the twofold first integral carries weight 4, the fourfold third one 8
    assert goldens.entry("2fC1").poly().weight() == 4
    assert goldens.entry("4fC3").poly().weight() == 8
    assert goldens.entry("3fC2").poly().weight() == 6
    assert goldens.entry("4fC2").poly().weight() == 6


def test_condition_weights_follow_the_grading():
    for n in range(2, 9):
        el = eliminate_potentials(derive_conditions(build_system(n)))
        for k, p in el.items():
            assert p.weight() == n + 2 - k


def test_cli_handles_up_to_eightfold():
    import contextlib
    import io

    for n in (7, 8):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = main(["derive", "--n", str(n), "--stage", "eliminated"])
        assert code == 0
        assert f"I_{n - 2} = " in out.getvalue()


def test_goldens_suite_detects_corpus_drift(monkeypatch):
    entries = dict(goldens.corpus())
    broken = entries["2fc3p"]
    data = dict(broken.data)
    data["expression"] = data["expression"].replace("- 2*w1^2*w1'", "+ 2*w1^2*w1'")
    entries["2fc3p"] = dataclasses.replace(broken, data=data)
    monkeypatch.setattr(goldens, "corpus", lambda: entries)
    report = suites.suite_goldens()
    failed = {r.name for r in report.results if not r.passed}
    assert "golden:2fc3p" in failed


def test_integrals_suite_detects_scale_drift(monkeypatch):
    entries = dict(goldens.corpus())
    broken = entries["3fC1"]
    data = dict(broken.data)
    data["scale"] = "3"
    entries["3fC1"] = dataclasses.replace(broken, data=data)
    monkeypatch.setattr(goldens, "corpus", lambda: entries)
    report = suites.suite_integrals()
    failed = {r.name for r in report.results if not r.passed}
    assert "integral:3fC1" in failed


def test_transposed_charge_goldens_also_cover_higher_orders():
    # the fourfold transposed charge display is literally the engine transpose
    e = goldens.entry("4fP-plus")
    system = build_system(4)
    assert system.charge_plus == e.operator()


def test_cli_search_fourfold_second_and_determinism():
    import contextlib
    import io

    def run(*argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = main(list(argv))
        return code, out.getvalue()

    code, first = run("search", "--n", "4", "--k", "2", "--format", "json")
    assert code == 0
    code, second = run("search", "--n", "4", "--k", "2", "--format", "json")
    assert first == second
    code, out = run("search", "--n", "3", "--k", "1", "--policy", "first-order")
    assert code == 0 and "J_1" in out


def test_concurrent_derivations_agree():
    from concurrent.futures import ThreadPoolExecutor

    from nfoldsusy import transformed_conditions

    def work(_):
        cs = transformed_conditions(3, "paper")
        return cs.condition(0)

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(work, range(16)))
    assert all(r == results[0] for r in results)
