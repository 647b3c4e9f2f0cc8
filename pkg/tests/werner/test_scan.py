import numpy as np
import pytest

from bellmix.basic.errors import BellmixError, DomainError
from bellmix.werner.core import AnsatzParams, WernerSpec, lagrangian
from bellmix.werner.model import MixedMinimization
from bellmix.werner.scan import (
    GridScan,
    entanglement_vs_m0,
    f_rho_curve,
    lagrangian_vs_y,
    preconcurrence_surface,
    progress_enabled,
    reference_eof,
)


@pytest.fixture
def line_scan():
    scan = GridScan(lambda x: {"y": x - 0.5}, axis="x")
    scan.build(np.linspace(0.0, 1.0, 4))
    return scan


def test_grid_scan_needs_build():
    scan = GridScan(lambda x: {"y": x}, axis="x")
    with pytest.raises(BellmixError):
        scan.argmin("y")
    with pytest.raises(BellmixError):
        scan.sign_changes("y")


def test_grid_scan_rows(line_scan):
    assert list(line_scan.frame.columns) == ["x", "y"]
    assert len(line_scan.frame) == 4
    assert line_scan.argmin("y") == 0.0
    assert line_scan.minimum("y") == -0.5
    assert line_scan.sign_changes("y") == [pytest.approx(1.0 / 3.0)]


def test_progress_quiet():
    assert not progress_enabled(quiet=True)


def test_lagrangian_vs_y_interior_minimum():
    spec = WernerSpec(0.7, 1)
    frame = lagrangian_vs_y(0.7, 1, resolution=1000)
    assert list(frame.columns) == ["Y", "lagrangian", "entanglement"]
    np.testing.assert_allclose(frame["entanglement"], frame["lagrangian"] / (2.0 * np.log(2.0)))
    y_min = frame.loc[frame["lagrangian"].idxmin(), "Y"]
    assert 0.0 < y_min < frame["Y"].iloc[-1]
    assert frame["lagrangian"].iloc[-1] == pytest.approx(lagrangian(spec, AnsatzParams.pure_min(spec)), abs=1e-12)
    mixed = lagrangian(spec, MixedMinimization().minimize(spec))
    assert frame["lagrangian"].min() >= mixed - 1e-12


def test_lagrangian_vs_y_resolution():
    with pytest.raises(DomainError):
        lagrangian_vs_y(0.7, 1, resolution=1)


def test_f_rho_curve():
    frame = f_rho_curve(0.55, 3, resolution=200)
    assert len(frame) == 200
    assert frame["rho"].iloc[0] == 0.0
    assert frame["f"].iloc[0] == pytest.approx(0.55 * 0.45 - 0.25, abs=1e-15)
    signs = np.sign(frame["f"].to_numpy())
    assert np.any(signs[:-1] * signs[1:] < 0)


def test_f_rho_curve_domain():
    with pytest.raises(DomainError):
        f_rho_curve(1.0, 3)


def test_preconcurrence_surface():
    frame = preconcurrence_surface((0.6, 0.2, 0.2), resolution=40)
    assert len(frame) == 1600
    assert frame["concurrence"].min() == pytest.approx(0.2, abs=1e-12)
    assert frame["concurrence"].max() == pytest.approx(1.0, abs=1e-12)


def test_preconcurrence_surface_needs_equal_weights():
    with pytest.raises(DomainError):
        preconcurrence_surface((0.5, 0.3, 0.2), resolution=8)


def test_reference_eof():
    assert reference_eof(WernerSpec(0.75, 3)) == pytest.approx(0.35459, abs=1e-5)
    assert reference_eof(WernerSpec(0.4, 3)) == 0.0


def test_entanglement_vs_m0():
    frame = entanglement_vs_m0(3, [0.55, 0.6])
    assert list(frame.columns) == ["m0", "e_pure", "e_mixed", "reference_eof"]
    assert not frame["e_mixed"].isna().any()
    assert (frame["e_mixed"] < frame["e_pure"]).all()
    assert (frame["reference_eof"] <= frame["e_mixed"] + 1e-9).all()
