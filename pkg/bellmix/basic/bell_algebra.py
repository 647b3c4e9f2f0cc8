"""
Pauli structure constants, the Bell (magic) basis, and operators on two qubits written in it.

Conventions: the standard basis is |ab> with index 2a + b, subsystem a is the left tensor factor,
and |B(mu)> = i sigma_b^mu |B(0)> for mu != 0.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from .config import ALGEBRA_TOL
from .errors import DomainError

PauliIndex = int

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

# mu (+) nu: the Klein four-group, which on 0..3 is bitwise xor
PAULI_XOR = np.array(
    [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ],
    dtype=int,
)

STRUCTURE_F = np.array(
    [
        [1, 1, 1, 1],
        [1, 1, 1j, -1j],
        [1, -1j, 1, 1j],
        [1, 1j, -1j, 1],
    ],
    dtype=complex,
)

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0

_SQRT_HALF = 1.0 / np.sqrt(2.0)

BELL_STATES = _SQRT_HALF * np.array(
    [
        [1, 0, 0, 1],
        [0, 1j, 1j, 0],
        [0, -1, 1, 0],
        [1j, 0, 0, -1j],
    ],
    dtype=complex,
)

# sigma^mu (x) sigma^nu, indexed [mu, nu]
PAULI_TENSORS = np.einsum("mij,nkl->mnikjl", SIGMA, SIGMA).reshape(4, 4, 4, 4)

# F_2 = diag(1, -1, 1): the y-flip relating the two marginals of a Bell-basis operator
F2 = np.diag([1.0, -1.0, 1.0])

_Y_SIGN = np.array([1, 1, -1, 1])


class Basis(Enum):
    PAULI = "pauli"
    STANDARD = "standard"
    BELL = "bell"


def _check_index(mu) -> int:
    if isinstance(mu, bool) or int(mu) != mu or not 0 <= int(mu) <= 3:
        raise DomainError(f"Pauli index must be an integer in 0..3, got {mu!r}")
    return int(mu)


@dataclass(frozen=True)
class QubitOperator:
    """a 2x2 operator on a single qubit."""

    entries: NDArray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (2, 2):
            raise DomainError(f"QubitOperator needs a 2x2 matrix, got shape {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


@dataclass(frozen=True)
class BellOperator:
    """a 4x4 two-qubit operator together with the basis its entries are written in.

    For the Pauli basis, entries[mu, nu] is the coefficient of sigma^mu (x) sigma^nu.
    """

    entries: NDArray
    basis: Basis

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (4, 4):
            raise DomainError(f"BellOperator needs a 4x4 matrix, got shape {entries.shape}")
        if not isinstance(self.basis, Basis):
            raise DomainError(f"unknown basis {self.basis!r}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def to(self, target: Basis) -> "BellOperator":
        return basis_convert(self, target)


def pauli_product(mu: PauliIndex, nu: PauliIndex) -> Tuple[complex, PauliIndex]:
    """sigma^mu sigma^nu = phase * sigma^index, read from the exact tables."""
    mu, nu = _check_index(mu), _check_index(nu)
    return complex(STRUCTURE_F[mu, nu]), int(PAULI_XOR[mu, nu])


def structure_constant_closed_form(mu: PauliIndex, nu: PauliIndex) -> complex:
    """f_{mu nu} rebuilt from Kronecker deltas and the Levi-Civita symbol."""
    mu, nu = _check_index(mu), _check_index(nu)
    value = complex(mu == nu)
    value += complex(mu != 0 and nu == 0)
    value += complex(mu == 0 and nu != 0)
    if mu != 0 and nu != 0 and mu != nu:
        value += 1j * LEVI_CIVITA[mu - 1, nu - 1, PAULI_XOR[mu, nu] - 1]
    return value


def bell_state(mu: PauliIndex) -> NDArray:
    """|B(mu)> in the standard basis |00>, |01>, |10>, |11>."""
    return BELL_STATES[_check_index(mu)].copy()


def magic_basis_matrix() -> NDArray:
    """unitary whose columns are the Bell states."""
    return BELL_STATES.T.copy()


def sigma_a_action_sign(mu: PauliIndex, nu: PauliIndex) -> int:
    """s with sigma_a^mu |B(nu)> = s sigma_b^mu |B(nu)>."""
    mu, nu = _check_index(mu), _check_index(nu)
    sign = -1 if mu == 2 else 1
    if mu != 0 and nu != 0 and mu != nu:
        sign = -sign
    return sign


def bell_matrix_element(mu1: PauliIndex, beta: PauliIndex, mu2: PauliIndex) -> complex:
    """<B(mu1)| sigma_b^beta |B(mu2)>."""
    mu1, beta, mu2 = _check_index(mu1), _check_index(beta), _check_index(mu2)
    if PAULI_XOR[PAULI_XOR[beta, mu1], mu2] != 0:
        return 0j
    left = -1j if mu1 != 0 else 1.0
    right = 1j if mu2 != 0 else 1.0
    return complex(left * STRUCTURE_F[beta, mu2] * right)


def cross_matrix(x: NDArray) -> NDArray:
    """matrix of w -> x cross w."""
    x = np.asarray(x)
    return np.array(
        [
            [0, -x[2], x[1]],
            [x[2], 0, -x[0]],
            [-x[1], x[0], 0],
        ],
        dtype=complex,
    )


def bell_sigma_b_block(x: NDArray) -> NDArray:
    """x . sigma_b in the Bell basis: [[0, i x^T], [-i x, i (x cross .)]]."""
    x = np.asarray(x, dtype=complex)
    block = np.zeros((4, 4), dtype=complex)
    block[0, 1:] = 1j * x
    block[1:, 0] = -1j * x
    block[1:, 1:] = 1j * cross_matrix(x)
    return block


def bell_sigma_a_block(x: NDArray) -> NDArray:
    """(F_2 x) . sigma_a in the Bell basis: [[0, i x^T], [-i x, -i (x cross .)]]."""
    x = np.asarray(x, dtype=complex)
    block = np.zeros((4, 4), dtype=complex)
    block[0, 1:] = 1j * x
    block[1:, 0] = -1j * x
    block[1:, 1:] = -1j * cross_matrix(x)
    return block


def _to_standard(op: BellOperator) -> NDArray:
    if op.basis is Basis.STANDARD:
        return np.array(op.entries)
    if op.basis is Basis.BELL:
        magic = magic_basis_matrix()
        return magic @ op.entries @ magic.conj().T
    return np.einsum("mn,mnij->ij", op.entries, PAULI_TENSORS)


def _from_standard(matrix: NDArray, target: Basis) -> NDArray:
    if target is Basis.STANDARD:
        return matrix
    if target is Basis.BELL:
        magic = magic_basis_matrix()
        return magic.conj().T @ matrix @ magic
    # x_{mu nu} = tr(sigma^mu (x) sigma^nu X) / 4
    return np.einsum("mnji,ij->mn", PAULI_TENSORS, matrix) / 4.0


def basis_convert(op: BellOperator, target: Basis) -> BellOperator:
    """rewrite `op` in the `target` basis, going through the standard basis."""
    if not isinstance(target, Basis):
        raise DomainError(f"unknown basis {target!r}")
    if op.basis is target:
        return op
    return BellOperator(_from_standard(_to_standard(op), target), target)


def partial_trace_bell(op: BellOperator, traced: str) -> QubitOperator:
    """trace out subsystem `traced` ("a" or "b") of a Bell-basis operator.

    With x the Bell-basis entries, tr_a X = (1/2){sum_mu x_mumu + [x_k0 - x_0k + x_pq eps_pqk] i sigma^k};
    tr_b X is the same expression in y_{mu nu} = x_{mu nu} (-1)^{[mu=2]} (-1)^{[nu=2]}.
    """
    if op.basis is not Basis.BELL:
        raise DomainError(f"partial_trace_bell needs a Bell-basis operator, got {op.basis.value}")
    if traced not in ("a", "b"):
        raise DomainError(f"subsystem must be 'a' or 'b', got {traced!r}")
    x = np.array(op.entries)
    if traced == "b":
        x = x * np.outer(_Y_SIGN, _Y_SIGN)
    vector = x[1:, 0] - x[0, 1:] + np.einsum("pqk,pq->k", LEVI_CIVITA, x[1:, 1:])
    result = np.trace(x) * SIGMA[0] + 1j * np.einsum("k,kij->ij", vector, SIGMA[1:])
    return QubitOperator(0.5 * result)


def bell_projector(mu: PauliIndex) -> BellOperator:
    """|B(mu)><B(mu)| in the Bell basis."""
    entries = np.zeros((4, 4), dtype=complex)
    entries[_check_index(mu), _check_index(mu)] = 1.0
    return BellOperator(entries, Basis.BELL)


def is_unitary(matrix: NDArray, tol: float = ALGEBRA_TOL) -> bool:
    matrix = np.asarray(matrix)
    return bool(np.allclose(matrix.conj().T @ matrix, np.eye(matrix.shape[0]), atol=tol, rtol=0))
