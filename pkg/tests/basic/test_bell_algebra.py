import itertools

import numpy as np
import pytest

from bellmix.basic.bell_algebra import (
    BELL_STATES,
    F2,
    PAULI_XOR,
    SIGMA,
    STRUCTURE_F,
    Basis,
    BellOperator,
    QubitOperator,
    basis_convert,
    bell_matrix_element,
    bell_projector,
    bell_sigma_a_block,
    bell_sigma_b_block,
    bell_state,
    is_unitary,
    magic_basis_matrix,
    partial_trace_bell,
    pauli_product,
    sigma_a_action_sign,
    structure_constant_closed_form,
)
from bellmix.basic.errors import DomainError

PAIRS = list(itertools.product(range(4), repeat=2))


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def _on_b(mu):
    return np.kron(SIGMA[0], SIGMA[mu])


def _on_a(mu):
    return np.kron(SIGMA[mu], SIGMA[0])


@pytest.mark.parametrize("mu,nu", PAIRS)
def test_pauli_product_exact(mu, nu):
    phase, index = pauli_product(mu, nu)
    assert np.array_equal(SIGMA[mu] @ SIGMA[nu], phase * SIGMA[index])


@pytest.mark.parametrize("mu,nu", PAIRS)
def test_structure_closed_form(mu, nu):
    assert structure_constant_closed_form(mu, nu) == STRUCTURE_F[mu, nu]


def test_structure_symmetries():
    np.testing.assert_array_equal(STRUCTURE_F, STRUCTURE_F.conj().T)
    for a, b in PAIRS:
        assert np.conj(STRUCTURE_F[PAULI_XOR[a, b], b]) == STRUCTURE_F[a, b]


@pytest.mark.parametrize("mu", [1, 2, 3])
def test_bell_state_definition(mu):
    np.testing.assert_allclose(bell_state(mu), 1j * _on_b(mu) @ bell_state(0), atol=1e-15)


def test_magic_basis_is_unitary():
    assert is_unitary(magic_basis_matrix())


@pytest.mark.parametrize("mu1,beta,mu2", list(itertools.product(range(4), repeat=3)))
def test_bell_matrix_element(mu1, beta, mu2):
    dense = np.vdot(BELL_STATES[mu1], _on_b(beta) @ BELL_STATES[mu2])
    assert bell_matrix_element(mu1, beta, mu2) == pytest.approx(dense, abs=1e-12)


@pytest.mark.parametrize("mu,nu", PAIRS)
def test_sigma_a_action_sign(mu, nu):
    sign = sigma_a_action_sign(mu, nu)
    np.testing.assert_allclose(_on_a(mu) @ BELL_STATES[nu], sign * _on_b(mu) @ BELL_STATES[nu], atol=1e-15)


def _to_bell(matrix):
    magic = magic_basis_matrix()
    return magic.conj().T @ matrix @ magic


def test_bell_sigma_b_block(rng):
    x = rng.normal(size=3)
    dense = _to_bell(sum(x[k] * _on_b(k + 1) for k in range(3)))
    np.testing.assert_allclose(bell_sigma_b_block(x), dense, atol=1e-14)


def test_bell_sigma_a_block(rng):
    x = rng.normal(size=3)
    y = F2 @ x
    dense = _to_bell(sum(y[k] * _on_a(k + 1) for k in range(3)))
    np.testing.assert_allclose(bell_sigma_a_block(x), dense, atol=1e-14)


def test_basis_convert_identity():
    identity = np.zeros((4, 4), dtype=complex)
    identity[0, 0] = 1.0
    op = BellOperator(identity, Basis.PAULI)
    np.testing.assert_allclose(op.to(Basis.STANDARD).entries, np.eye(4), atol=1e-15)
    np.testing.assert_allclose(op.to(Basis.BELL).entries, np.eye(4), atol=1e-15)


def test_basis_convert_projector():
    projector = bell_projector(0)
    expected = np.outer(bell_state(0), bell_state(0).conj())
    np.testing.assert_allclose(basis_convert(projector, Basis.STANDARD).entries, expected, atol=1e-15)


@pytest.mark.parametrize("traced,axes", [("a", "ijik->jk"), ("b", "ijkj->ik")])
def test_partial_trace_bell(rng, traced, axes):
    for _ in range(20):
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        op = BellOperator(x, Basis.BELL)
        standard = op.to(Basis.STANDARD).entries.reshape(2, 2, 2, 2)
        np.testing.assert_allclose(partial_trace_bell(op, traced).entries, np.einsum(axes, standard), atol=1e-12)


def test_partial_trace_needs_bell_basis():
    with pytest.raises(DomainError):
        partial_trace_bell(BellOperator(np.eye(4), Basis.STANDARD), "a")


def test_partial_trace_unknown_subsystem():
    with pytest.raises(DomainError):
        partial_trace_bell(BellOperator(np.eye(4), Basis.BELL), "c")


@pytest.mark.parametrize("index", [-1, 4, 1.5, True])
def test_invalid_pauli_index(index):
    with pytest.raises(DomainError):
        pauli_product(index, 0)


def test_operator_shapes():
    with pytest.raises(DomainError):
        BellOperator(np.eye(3), Basis.BELL)
    with pytest.raises(DomainError):
        QubitOperator(np.eye(4))
