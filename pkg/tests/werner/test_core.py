import numpy as np
import pytest
from scipy.linalg import logm

from bellmix.basic.bell_algebra import Basis, partial_trace_bell
from bellmix.basic.errors import BoundaryError, DomainError
from bellmix.basic.pure_state import binary_entropy
from bellmix.werner.core import (
    SUPPORTED_FAMILIES,
    AnsatzParams,
    WernerSpec,
    ansatz_K,
    decomposition_sum,
    delta_deviation,
    delta_operator,
    lagrangian,
    lagrangian_gradient,
    lagrangian_terms,
    log_K,
    make_vset,
    marginals_and_R,
    orbit_insensitivity_check,
    projector_family,
    pure_members,
    rotate_vset,
    support_projector,
    trace_identity_residual,
    vset_residuals,
)

LN2 = np.log(2.0)


def _interior(spec, fraction=0.6, eps=0.3):
    q_max = np.sqrt(spec.m0 * spec.m1 * (spec.d_v - eps * (spec.d_v - 1)) / spec.d_v)
    return AnsatzParams.from_q_eps(spec, fraction * q_max, eps)


def _pure_reference(m0):
    c = abs(2.0 * m0 - 1.0)
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c * c)))


@pytest.mark.parametrize("d_v,n_alpha", SUPPORTED_FAMILIES)
def test_vset_families(d_v, n_alpha):
    assert max(vset_residuals(make_vset(d_v, n_alpha), d_v)) == 0.0


def test_unsupported_family():
    with pytest.raises(DomainError):
        WernerSpec(0.6, 2, n_alpha=8)


@pytest.mark.parametrize("m0,d_v", [(1.5, 3), (-0.1, 1), (0.5, 4)])
def test_spec_domain(m0, d_v):
    with pytest.raises(DomainError):
        WernerSpec(m0, d_v)


def test_spec_weights():
    spec = WernerSpec(0.55, 2)
    np.testing.assert_allclose(spec.weights(), [0.55, 0.225, 0.225, 0.0])
    assert spec.n_alpha == 4


def test_rotate_vset_keeps_constraints():
    angle = 0.3
    omega = np.array([[np.cos(angle), -np.sin(angle), 0.0], [np.sin(angle), np.cos(angle), 0.0], [0.0, 0.0, 1.0]])
    vset = rotate_vset(make_vset(3, 4), omega)
    assert max(vset_residuals(vset, 3)) < 1e-13
    assert WernerSpec(0.6, 3).with_vset(vset).n_alpha == 4


@pytest.mark.parametrize("d_v,n_alpha", SUPPORTED_FAMILIES)
def test_decomposition_sums_to_rho(d_v, n_alpha):
    spec = WernerSpec(0.62, d_v, n_alpha=n_alpha)
    p = _interior(spec)
    np.testing.assert_allclose(decomposition_sum(spec, p), np.diag(spec.weights()), atol=1e-15)


def test_q_beyond_psd_bound():
    spec = WernerSpec(0.6, 3)
    with pytest.raises(DomainError):
        AnsatzParams.from_q_eps(spec, 1.0, 0.5)


def test_eps_rho_parameterization():
    spec = WernerSpec(0.7, 3)
    p = _interior(spec)
    again = AnsatzParams.from_eps_rho(spec, p.eps, p.rho)
    assert again.q == pytest.approx(p.q, rel=1e-12)
    assert again.half_minus_y == pytest.approx(0.5 - p.y, rel=1e-12)
    assert again.lam_minus == pytest.approx(0.5 * p.u - p.x, rel=1e-10)


def test_pure_min_parameters():
    spec = WernerSpec(0.8, 3)
    p = AnsatzParams.pure_min(spec)
    assert p.q == pytest.approx(np.sqrt(spec.m0 * spec.m1))
    assert p.eps == 0.0 and p.rho == 0.0
    assert p.x == pytest.approx(0.5) and p.u == pytest.approx(1.0)


@pytest.mark.parametrize("d_v", [1, 2, 3])
def test_eigenvalue_table(d_v):
    spec = WernerSpec(0.66, d_v)
    p = _interior(spec)
    k = ansatz_K(spec, p, 0).k.entries * spec.n_alpha
    np.testing.assert_allclose(np.sort(p.eigenvalue_table(spec)), np.linalg.eigvalsh(k), atol=1e-14)


def test_trivial_member_is_scaled_rho():
    spec = WernerSpec(0.6, 3)
    p = AnsatzParams.trivial(spec)
    for alpha in range(spec.n_alpha):
        np.testing.assert_allclose(ansatz_K(spec, p, alpha).k.entries, np.diag(spec.weights()) / spec.n_alpha)


def test_projector_family_resolution():
    spec = WernerSpec(0.6, 3)
    p = _interior(spec)
    family = projector_family(spec, p, 1)
    np.testing.assert_allclose(family.plus + family.minus + family.p0, np.eye(4), atol=1e-14)
    k = (p.lam_plus * family.plus + p.lam_minus * family.minus + p.eps * spec.m1 * family.p0) / spec.n_alpha
    np.testing.assert_allclose(k, ansatz_K(spec, p, 1).k.entries, atol=1e-15)


def test_projector_family_degenerate():
    spec = WernerSpec(0.5, 1)
    with pytest.raises(BoundaryError):
        projector_family(spec, AnsatzParams.trivial(spec), 0)


def test_log_K_full_rank():
    spec = WernerSpec(0.6, 3)
    p = _interior(spec)
    for alpha in range(spec.n_alpha):
        expected = logm(ansatz_K(spec, p, alpha).k.entries)
        np.testing.assert_allclose(log_K(spec, p, alpha).entries, expected, atol=1e-10)


def test_marginals():
    spec = WernerSpec(0.7, 3)
    p = _interior(spec)
    for alpha in range(spec.n_alpha):
        k = ansatz_K(spec, p, alpha).k
        marginals = marginals_and_R(spec, p, alpha)
        np.testing.assert_allclose(marginals.k_b.entries, partial_trace_bell(k, "a").entries, atol=1e-15)
        np.testing.assert_allclose(marginals.k_a.entries, partial_trace_bell(k, "b").entries, atol=1e-15)
        assert marginals.r.basis is Basis.BELL
        np.testing.assert_allclose(marginals.log_r.entries, logm(marginals.r.entries), atol=1e-10)


def test_marginals_at_boundary():
    spec = WernerSpec(0.5, 3)
    with pytest.raises(BoundaryError):
        marginals_and_R(spec, AnsatzParams.pure_min(spec), 0)


def test_lagrangian_terms():
    spec = WernerSpec(0.6, 2)
    p = _interior(spec)
    l_k, l_r = lagrangian_terms(spec, p)
    assert l_k - l_r == pytest.approx(lagrangian(spec, p), abs=1e-14)


@pytest.mark.parametrize("d_v", [2, 3])
def test_lagrangian_gradient(d_v):
    spec = WernerSpec(0.6, d_v)
    p = _interior(spec, fraction=0.5, eps=0.4)
    step = 1e-6
    d_eps = (
        lagrangian(spec, AnsatzParams.from_q_eps(spec, p.q, p.eps + step))
        - lagrangian(spec, AnsatzParams.from_q_eps(spec, p.q, p.eps - step))
    ) / (2 * step)
    d_q = (
        lagrangian(spec, AnsatzParams.from_q_eps(spec, p.q + step, p.eps))
        - lagrangian(spec, AnsatzParams.from_q_eps(spec, p.q - step, p.eps))
    ) / (2 * step)
    gradient = lagrangian_gradient(spec, p)
    assert gradient[0] == pytest.approx(d_eps, rel=1e-5)
    assert gradient[1] == pytest.approx(d_q, rel=1e-5)


def test_pure_members_sum_to_rho():
    spec = WernerSpec(0.3, 3)
    total = sum(weight * np.outer(psi, psi.conj()) for weight, psi in pure_members(spec))
    np.testing.assert_allclose(total, np.diag(spec.weights()), atol=1e-15)


@pytest.mark.parametrize("d_v", [1, 2, 3])
@pytest.mark.parametrize("m0", [0.0, 0.2, 0.45, 0.75, 0.9, 1.0])
def test_pure_min_entanglement(m0, d_v):
    spec = WernerSpec(m0, d_v)
    p = AnsatzParams.pure_min(spec)
    assert lagrangian(spec, p) / (2.0 * LN2) == pytest.approx(_pure_reference(m0), abs=1e-10)
    assert trace_identity_residual(spec, p, "pure") <= 1e-9
    assert delta_deviation(spec, p, "pure") <= 1e-8


def test_pure_min_example():
    spec = WernerSpec(0.75, 3)
    assert lagrangian(spec, AnsatzParams.pure_min(spec)) / (2.0 * LN2) == pytest.approx(0.35459, abs=1e-5)


def test_pure_delta_at_half():
    spec = WernerSpec(0.5, 2)
    with pytest.raises(BoundaryError):
        delta_operator(spec, AnsatzParams.pure_min(spec), "pure")


def test_pure_delta_needs_pure_params():
    spec = WernerSpec(0.7, 2)
    with pytest.raises(DomainError):
        delta_operator(spec, _interior(spec), "pure")


def test_mixed_delta_needs_positive_eps():
    spec = WernerSpec(0.7, 3)
    with pytest.raises(BoundaryError):
        delta_operator(spec, _interior(spec, eps=0.0), "mixed")


def test_unknown_mode():
    spec = WernerSpec(0.7, 3)
    with pytest.raises(DomainError):
        delta_operator(spec, _interior(spec), "hybrid")


def test_pure_orbit_above_reference():
    spec = WernerSpec(0.4, 3)
    report = orbit_insensitivity_check(spec, AnsatzParams.pure_min(spec), "pure")
    assert report.insensitive
    assert report.entanglement > 0.0
    assert report.reference_eof == 0.0
    assert not report.matches_reference


def test_pure_orbit_matches_reference():
    spec = WernerSpec(0.8, 3)
    report = orbit_insensitivity_check(spec, AnsatzParams.pure_min(spec), "pure")
    assert report.insensitive
    assert report.matches_reference


def test_support_projector():
    spec = WernerSpec(0.7, 3)
    np.testing.assert_allclose(support_projector(spec, _interior(spec), 2), np.eye(4), atol=1e-14)
    pure = AnsatzParams.pure_min(spec)
    for alpha, (_, psi) in enumerate(pure_members(spec)):
        np.testing.assert_allclose(support_projector(spec, pure, alpha), np.outer(psi, psi.conj()), atol=1e-14)
