import numpy as np
import pytest

from bellmix.basic.errors import ConvergenceError
from bellmix.werner.core import WernerSpec
from bellmix.werner.model import MODELS, Minimization, MixedMinimization, PureMinimization, e_mixed, e_pure


@pytest.fixture
def werner_075():
    return WernerSpec(0.75, 3)


def test_models_registry():
    assert set(MODELS) == {"pure", "mixed"}
    assert str(MODELS["mixed"]()) == "mixed"


def test_template_is_abstract(werner_075):
    with pytest.raises(NotImplementedError):
        Minimization().report(werner_075)
    with pytest.raises(NotImplementedError):
        str(Minimization())


def test_pure_report(werner_075):
    report = e_pure(werner_075)
    assert report.mode == "pure"
    assert report.entanglement == pytest.approx(0.35459, abs=1e-5)
    assert report.lagrangian == pytest.approx(2.0 * np.log(2.0) * report.entanglement)
    assert report.residuals["closure"] <= 1e-15
    assert report.residuals["trace_identity"] <= 1e-9
    assert report.residuals["insensitivity"] <= 1e-8
    assert report.delta is not None


@pytest.mark.parametrize("d_v", [1, 2, 3])
def test_pure_report_full_weight(d_v):
    assert e_pure(WernerSpec(1.0, d_v)).entanglement == pytest.approx(1.0)


def test_pure_report_at_half_has_no_operator():
    report = PureMinimization().report(WernerSpec(0.5, 3))
    assert report.delta is None
    assert "trace_identity" not in report.residuals
    assert report.entanglement == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("m0", [0.55, 0.7, 0.9])
def test_mixed_single_axis(m0):
    spec = WernerSpec(m0, 1)
    mixed = e_mixed(spec)
    pure = e_pure(spec)
    assert mixed.entanglement < pure.entanglement
    assert mixed.params.y < spec.y_pure
    assert mixed.residuals["stationarity_q"] <= 1e-10
    assert mixed.residuals["trace_identity"] <= 1e-9
    assert mixed.residuals["insensitivity"] <= 1e-8
    assert len(mixed.candidates) >= 3
    assert min(value for _, value in mixed.candidates) == pytest.approx(mixed.lagrangian)


@pytest.mark.parametrize("m0,d_v", [(0.55, 2), (0.55, 3)])
def test_mixed_two_equations(m0, d_v):
    spec = WernerSpec(m0, d_v)
    mixed = MixedMinimization(logging_level="DEBUG").report(spec)
    assert mixed.entanglement < e_pure(spec).entanglement
    assert mixed.residuals["stationarity_eps"] <= 1e-10
    assert mixed.residuals["stationarity_q"] <= 1e-10
    assert mixed.residuals["closure"] <= 1e-15


def test_mixed_without_m1():
    spec = WernerSpec(1.0, 3)
    p = MixedMinimization().minimize(spec)
    assert p.eps == 0.0 and p.q == 0.0


def test_mixed_non_convergence():
    spec = WernerSpec(0.55, 3)
    with pytest.raises(ConvergenceError) as info:
        MixedMinimization(max_iter=0, n_starts=1).minimize(spec)
    assert info.value.best is not None
    assert info.value.residual > 0.0
