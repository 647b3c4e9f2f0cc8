import pytest

from bellmix.basic.errors import DomainError
from bellmix.verify import SUITES, Check, run, summary


def test_check_of():
    assert Check.of("ok", 1e-13, 1e-12).passed
    assert not Check.of("too_large", 1e-11, 1e-12).passed
    assert not Check.of("nan", float("nan"), 1.0).passed


def test_algebra_suite_passes():
    results = run("algebra", seed=3, samples=20)
    assert list(results) == ["algebra"]
    assert all(check.passed for check in results["algebra"])


def test_algebra_suite_checks_bell_basis():
    checks = {check.name: check for check in run("algebra", seed=0, samples=1)["algebra"]}
    assert checks["magic_basis_unitary"].passed
    assert checks["bell_projectors"].max_residual <= 1e-14


def test_summary_lists_failures():
    results = {"algebra": [Check.of("fine", 0.0, 0.0), Check.of("broken", 1.0, 0.0)]}
    report = summary(results)
    assert not report["passed"]
    assert report["failures"] == ["algebra/broken"]
    assert report["suites"]["algebra"][1]["max_residual"] == 1.0


def test_suite_names():
    assert SUITES == ("algebra", "werner", "appendices")


@pytest.mark.parametrize("suite,samples", [("geometry", 10), ("algebra", 0)])
def test_run_rejects_bad_input(suite, samples):
    with pytest.raises(DomainError):
        run(suite, samples=samples)
