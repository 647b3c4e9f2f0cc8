import numpy as np
import pytest

from bellmix.basic.errors import DomainError
from bellmix.werner.core import AnsatzParams, WernerSpec, lagrangian, lagrangian_gradient
from bellmix.werner.eq_solver import (
    RootKind,
    eps_q_from_rho,
    f_rho,
    f_rho_derivative_limits,
    power_residuals,
    residuals,
    rho_upper,
    scan_f_rho,
    self_consistency,
    solve_approx,
    solve_exact,
)


@pytest.fixture
def spec():
    return WernerSpec(0.55, 3)


def test_trivial_root(spec):
    r_eps, r_q = residuals(spec, 1.0, 0.0)
    assert r_eps == pytest.approx(0.0, abs=1e-14)
    assert r_q == 0.0


def test_power_residuals_at_trivial_root(spec):
    first, second = power_residuals(spec, 1.0, 0.0)
    assert first == pytest.approx(0.0, abs=1e-15)
    assert second == pytest.approx(0.0, abs=1e-15)


def test_residuals_outside_region(spec):
    assert residuals(spec, 0.5, 1.0) == (np.inf, np.inf)


@pytest.mark.parametrize("m0,d_v", [(0.55, 3), (0.45, 2), (0.7, 2)])
def test_f_rho_at_zero(m0, d_v):
    spec = WernerSpec(m0, d_v)
    assert f_rho(spec, 0.0) == pytest.approx(spec.m0 * (1.0 - spec.m0) - 0.25, abs=1e-15)


def test_f_rho_negative_rho(spec):
    with pytest.raises(DomainError):
        f_rho(spec, -1e-3)


@pytest.mark.parametrize(
    "m0,d_v,has_root",
    [(0.55, 3, True), (0.45, 3, False), (0.55, 2, True), (0.45, 2, True)],
)
def test_f_rho_root_cases(m0, d_v, has_root):
    assert (solve_approx(WernerSpec(m0, d_v)) is not None) == has_root


def test_scan_f_rho_sign_change(spec):
    rhos = np.concatenate([[0.0], np.logspace(-12, np.log10(rho_upper(spec)), 200)])
    values = scan_f_rho(spec, rhos)
    assert values[0] < 0.0
    assert np.any(values[:-1] * values[1:] < 0.0)


@pytest.mark.parametrize("m0", [0.501, 0.499])
def test_f_rho_derivative_limits(m0):
    spec = WernerSpec(m0, 2)
    rho, step = 1e-8, 1e-11
    first, second = f_rho_derivative_limits(spec, rho)
    numeric_first = (f_rho(spec, rho + step) - f_rho(spec, rho - step)) / (2 * step)
    numeric_second = (f_rho(spec, rho + step) - 2 * f_rho(spec, rho) + f_rho(spec, rho - step)) / step**2
    assert first == pytest.approx(numeric_first, rel=0.05)
    assert second == pytest.approx(numeric_second, rel=0.05)


def test_f_rho_derivative_limits_need_positive_rho(spec):
    with pytest.raises(DomainError):
        f_rho_derivative_limits(spec, 0.0)


def test_approx_root(spec):
    approx = solve_approx(spec)
    assert approx.f_residual(spec) < 1e-12
    assert (approx.eps, approx.q) == pytest.approx(eps_q_from_rho(spec, approx.rho))
    assert set(approx.self_consistency) == {"u", "k", "X", "Y"}
    assert approx.as_root(spec).kind is RootKind.APPROXIMATE


def test_self_consistency_at_pure_corner(spec):
    deltas = self_consistency(spec, 0.0, np.sqrt(spec.m0 * spec.m1))
    assert max(deltas.values()) < 1e-14


def test_solve_approx_domain():
    with pytest.raises(DomainError):
        solve_approx(WernerSpec(0.7, 1))


@pytest.mark.parametrize("d_v", [2, 3])
@pytest.mark.parametrize("m0", [0.52, 0.55, 0.6])
def test_solve_exact(m0, d_v):
    spec = WernerSpec(m0, d_v)
    root = solve_exact(spec)
    assert root.converged
    assert root.kind is RootKind.PHYSICAL
    assert root.residual_norm <= 1e-10
    p = AnsatzParams.from_eps_rho(spec, root.eps, root.rho)
    assert lagrangian(spec, p) < lagrangian(spec, AnsatzParams.pure_min(spec))
    d_eps, d_q = lagrangian_gradient(spec, p)
    assert abs(d_eps) < 1e-7 and abs(d_q) < 1e-7


@pytest.mark.parametrize("m0,d_v", [(0.7, 1), (1.0, 3), (0.0, 2)])
def test_solve_exact_domain(m0, d_v):
    with pytest.raises(DomainError):
        solve_exact(WernerSpec(m0, d_v))


def test_solve_exact_unconverged(spec):
    root = solve_exact(spec, max_iter=0, n_starts=1)
    assert not root.converged
    assert root.kind is RootKind.UNCONVERGED


def test_solve_exact_random_starts():
    spec = WernerSpec(0.45, 3)
    assert solve_approx(spec) is None
    root = solve_exact(spec, seed=2)
    assert not root.near_pure
    if root.converged:
        assert root.kind in (RootKind.PHYSICAL, RootKind.TRIVIAL)
        assert root.residual_norm <= 1e-10
    else:
        assert root.kind is RootKind.UNCONVERGED
    again = solve_exact(spec, seed=2)
    assert (again.eps, again.rho) == (root.eps, root.rho)
