"""
2x2 Hermitian matrices through their Pauli decomposition n0 + n . sigma.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm

from .bell_algebra import SIGMA
from .config import HERMITIAN_TOL
from .errors import DomainError

NEGATIVE_EIGENVALUE_TOL = 1e-12


@dataclass(frozen=True)
class PauliDecomp2:
    n0: float
    n: NDArray

    def __post_init__(self):
        n = np.array(self.n, dtype=float).reshape(3)
        n.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "n0", float(self.n0))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.n))

    def matrix(self) -> NDArray:
        return self.n0 * SIGMA[0] + np.einsum("k,kij->ij", self.n, SIGMA[1:])


def decompose(h: NDArray) -> PauliDecomp2:
    """n0 = tr(H)/2 and n_k = tr(H sigma_k)/2."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (2, 2):
        raise DomainError(f"expected a 2x2 matrix, got shape {h.shape}")
    residual = float(np.max(np.abs(h - h.conj().T)))
    if residual > HERMITIAN_TOL:
        raise DomainError(f"matrix is not Hermitian (residual {residual:.3e})")
    n0 = 0.5 * np.trace(h).real
    n = 0.5 * np.einsum("kij,ji->k", SIGMA[1:], h).real
    return PauliDecomp2(n0, n)


def eigensystem(d: PauliDecomp2) -> Tuple[Tuple[float, float], Tuple[NDArray, NDArray]]:
    """eigenvalues n0 +- |n| with projectors (1 +- nhat . sigma)/2.

    For n = 0 the whole space is returned as P+ and P- is zero.
    """
    norm = d.norm
    if norm == 0.0:
        return (d.n0, d.n0), (SIGMA[0].copy(), np.zeros((2, 2), dtype=complex))
    n_sigma = np.einsum("k,kij->ij", d.n / norm, SIGMA[1:])
    plus = 0.5 * (SIGMA[0] + n_sigma)
    minus = 0.5 * (SIGMA[0] - n_sigma)
    return (d.n0 + norm, d.n0 - norm), (plus, minus)


def log_psd_2x2(d: PauliDecomp2) -> NDArray:
    """sum of ln(lambda) P over the strictly positive eigenvalues (zero ones drop out)."""
    (high, low), (plus, minus) = eigensystem(d)
    if low < -NEGATIVE_EIGENVALUE_TOL:
        raise DomainError(f"matrix has a negative eigenvalue {low:.3e}")
    result = np.zeros((2, 2), dtype=complex)
    for value, projector in ((high, plus), (low, minus)):
        if value > NEGATIVE_EIGENVALUE_TOL:
            result += np.log(value) * projector
    return result


def rotated_spin_states(n: NDArray) -> Tuple[NDArray, NDArray]:
    """(|0_n>, |1_n>) = exp(-i sigma . theta / 2)(|0>, |1>) with theta = angle(z, n) (z x n)/|z x n|."""
    n = np.asarray(n, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0.0:
        raise DomainError("rotated_spin_states needs a nonzero vector")
    unit = n / norm
    axis = np.cross([0.0, 0.0, 1.0], unit)
    axis_norm = np.linalg.norm(axis)
    up, down = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
    if axis_norm < HERMITIAN_TOL:
        return (up, down) if unit[2] > 0 else (down, up)
    theta = np.arccos(np.clip(unit[2], -1.0, 1.0))
    rotation = expm(-0.5j * theta * np.einsum("k,kij->ij", axis / axis_norm, SIGMA[1:]))
    return rotation @ up, rotation @ down


def projector(state: NDArray) -> NDArray:
    state = np.asarray(state, dtype=complex)
    return np.outer(state, state.conj())
