"""
brute-force references for the closed forms: a cyclic Jacobi eigensolver, index-sum partial traces,
the Lagrangian from dense matrices, a grid minimizer and the Bell-mixture entanglement of formation.

Nothing here goes through bellmix.basic.bell_algebra or bellmix.werner; Bell states and ansatz members
are rebuilt from their definitions.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.special import entr
from tqdm import tqdm

from .basic.errors import ConvergenceError, DomainError
from .basic.log import setup_logger
from .basic.metric import Metric

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
MAX_SWEEPS = 100
NEGATIVE_TOL = 1e-10
GRID_RESOLUTION = 256
REFINEMENTS = 3
REFINE_POINTS = 21
CHUNK = 16384

_logger = setup_logger(filename=__file__, classname="oracle")

_KET = {
    "00": np.array([1, 0, 0, 0], dtype=complex),
    "01": np.array([0, 1, 0, 0], dtype=complex),
    "10": np.array([0, 0, 1, 0], dtype=complex),
    "11": np.array([0, 0, 0, 1], dtype=complex),
}
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I = np.eye(2, dtype=complex)


def _bell_columns() -> NDArray:
    """|B(0)> = (|00> + |11>)/sqrt(2) and |B(mu)> = i (1 (x) sigma^mu)|B(0)>, as columns."""
    b0 = (_KET["00"] + _KET["11"]) / np.sqrt(2.0)
    states = [b0] + [1j * np.kron(_I, pauli) @ b0 for pauli in (_X, _Y, _Z)]
    return np.stack(states, axis=1)


BELL_COLUMNS = _bell_columns()


@dataclass(frozen=True)
class DenseHermitian:
    entries: NDArray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] not in (2, 4):
            raise DomainError(f"expected a 2x2 or 4x4 matrix, got shape {entries.shape}")
        residual = float(Metric.hermiticity_residual(entries))
        if residual > HERMITIAN_TOL:
            raise DomainError(f"matrix is not Hermitian (residual {residual:.3e})")
        object.__setattr__(self, "entries", entries)


def _jacobi_stack(a: NDArray, tol: float, max_sweeps: int) -> Tuple[NDArray, NDArray]:
    """diagonalize a stack (m, n, n) of Hermitian matrices with complex Jacobi rotations."""
    m, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), (m, n, n)).copy()
    scale = np.maximum(np.linalg.norm(a, axis=(-2, -1)), 1e-300)
    index = np.arange(m)
    for _ in range(max_sweeps):
        if np.all(Metric.offdiag_norm(a) <= tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                a_pq = a[:, p, q]
                magnitude = np.abs(a_pq)
                active = magnitude > 1e-300
                safe = np.where(active, magnitude, 1.0)
                tau = np.where(active, (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe), 0.0)
                t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                phase = np.where(active, np.exp(-1j * np.angle(a_pq)), 1.0)
                rotation = np.broadcast_to(np.eye(n, dtype=complex), (m, n, n)).copy()
                rotation[index, p, p] = c
                rotation[index, p, q] = s
                rotation[index, q, p] = -s * phase
                rotation[index, q, q] = c * phase
                a = np.conj(np.swapaxes(rotation, -1, -2)) @ a @ rotation
                v = v @ rotation
        a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    else:
        if not np.all(Metric.offdiag_norm(a) <= tol * scale):
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    values = np.real(np.diagonal(a, axis1=-2, axis2=-1))
    order = np.argsort(values, axis=-1)
    values = np.take_along_axis(values, order, axis=-1)
    vectors = np.take_along_axis(v, order[:, None, :], axis=-1)
    return values, vectors


def eig_hermitian(h, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> Tuple[NDArray, NDArray]:
    """ascending eigenvalues and eigenvectors (as columns) of one Hermitian matrix or a stack of them."""
    if isinstance(h, DenseHermitian):
        h = h.entries
    a = np.array(h, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DomainError(f"expected square matrices, got shape {a.shape}")
    residual = Metric.hermiticity_residual(a)
    if np.any(residual > HERMITIAN_TOL * np.maximum(1.0, np.abs(a).max())):
        raise DomainError(f"matrix is not Hermitian (residual {float(np.max(residual)):.3e})")
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    shape = a.shape
    values, vectors = _jacobi_stack(a.reshape((-1,) + shape[-2:]), tol, max_sweeps)
    return values.reshape(shape[:-1]), vectors.reshape(shape)


def partial_trace_dense(x: NDArray, subsystem: str) -> NDArray:
    """trace out subsystem "a" (left factor) or "b" of 4x4 matrices, via index sums."""
    x = np.asarray(x, dtype=complex)
    blocks = x.reshape(x.shape[:-2] + (2, 2, 2, 2))
    if subsystem == "a":
        return np.einsum("...ijik->...jk", blocks)
    if subsystem == "b":
        return np.einsum("...ijkj->...ik", blocks)
    raise DomainError(f"subsystem must be 'a' or 'b', got {subsystem!r}")


def _xlogx_sum(values: NDArray) -> NDArray:
    if np.any(values < -NEGATIVE_TOL):
        raise DomainError(f"negative eigenvalue {float(np.min(values)):.3e}")
    return -np.sum(entr(np.clip(values, 0.0, None)), axis=-1)


def ansatz_members_dense(m0: float, d_v: int, vset: NDArray, q: NDArray, eps: NDArray) -> NDArray:
    """members K^alpha in the standard basis for a batch of (q, eps): shape (batch, N_alpha, 4, 4)."""
    vset = np.asarray(vset, dtype=float)
    q = np.atleast_1d(np.asarray(q, dtype=float))
    eps = np.atleast_1d(np.asarray(eps, dtype=float))
    n_alpha = len(vset)
    m1 = (1.0 - m0) / d_v
    support = np.diag([1.0] * d_v + [0.0] * (3 - d_v))
    bell = np.zeros((len(q), n_alpha, 4, 4), dtype=complex)
    bell[:, :, 0, 0] = m0
    bell[:, :, 0, 1:] = 1j * q[:, None, None] * vset[None]
    bell[:, :, 1:, 0] = -1j * q[:, None, None] * vset[None]
    outer = np.einsum("ai,aj->aij", vset, vset)
    bell[:, :, 1:, 1:] = m1 * outer[None] + eps[:, None, None, None] * m1 * (support[None, None] - outer[None])
    return BELL_COLUMNS @ (bell / n_alpha) @ BELL_COLUMNS.conj().T


def _lagrangian_batch(m0: float, d_v: int, vset: NDArray, q: NDArray, eps: NDArray) -> NDArray:
    members = ansatz_members_dense(m0, d_v, vset, q, eps)
    n_alpha = members.shape[1]
    k_values, _ = eig_hermitian(members)
    a_values, _ = eig_hermitian(partial_trace_dense(members, "b"))
    b_values, _ = eig_hermitian(partial_trace_dense(members, "a"))
    # ln R = ln N + ln K_a + ln K_b
    traces = np.real(np.trace(members, axis1=-2, axis2=-1))
    l_k = np.sum(_xlogx_sum(k_values), axis=-1)
    l_r = np.sum(traces * np.log(n_alpha) + _xlogx_sum(a_values) + _xlogx_sum(b_values), axis=-1)
    return l_k - l_r


def lagrangian_dense(spec, p) -> float:
    """sum_alpha tr K (ln K - ln R) from dense matrices; `spec` and `p` are only read for their numbers."""
    return float(_lagrangian_batch(spec.m0, spec.d_v, spec.vset, p.q, p.eps)[0])


@dataclass(frozen=True)
class BruteMinimum:
    q: float
    eps: float
    lagrangian: float

    @property
    def entanglement(self) -> float:
        return self.lagrangian / (2.0 * np.log(2.0))


def _q_max(m0: float, d_v: int, eps: NDArray) -> NDArray:
    m1 = (1.0 - m0) / d_v
    return np.sqrt(np.maximum(m0 * m1 * (d_v - eps * (d_v - 1)), 0.0) / d_v)


def _evaluate(m0, d_v, vset, eps, sigma, chunk, progress, desc) -> NDArray:
    """L on (eps, sigma) pairs with q = q_max(eps) (1 - sigma)."""
    q = _q_max(m0, d_v, eps) * (1.0 - sigma)
    out = np.empty(len(eps))
    starts = range(0, len(eps), chunk)
    for start in tqdm(starts, desc=desc, ncols=90, disable=not progress):
        stop = start + chunk
        out[start:stop] = _lagrangian_batch(m0, d_v, vset, q[start:stop], eps[start:stop])
    return out


def brute_minimize(
    spec,
    resolution: int = GRID_RESOLUTION,
    refinements: int = REFINEMENTS,
    chunk: int = CHUNK,
    progress: bool = False,
) -> BruteMinimum:
    """
    grid search over eps in [0, 1] and q in [0, q_max(eps)], then local refinement in log coordinates.

    q is parameterized as q_max(eps) (1 - sigma) so that the pure corner (eps, sigma) = (0, 0) and the
    rank-deficient edge sigma = 0 are on the grid.

    Args:
        spec: Werner state (m0, d_v, vset)
        resolution (int): points per axis of the coarse grid, half linear and half log-spaced
        refinements (int): rounds of 10x local refinement
        chunk (int): grid points evaluated per batch
        progress (bool): show a tqdm bar
    """
    m0, d_v, vset = spec.m0, spec.d_v, spec.vset
    half = max(resolution // 2, 2)
    eps_axis = np.unique(np.concatenate([np.linspace(0.0, 1.0, half), np.logspace(-10.0, 0.0, half)]))
    sigma_axis = np.unique(np.concatenate([[0.0], np.linspace(0.0, 1.0, half), np.logspace(-12.0, 0.0, half)]))
    eps_grid, sigma_grid = (g.ravel() for g in np.meshgrid(eps_axis, sigma_axis, indexing="ij"))
    values = _evaluate(m0, d_v, vset, eps_grid, sigma_grid, chunk, progress, "Brute-force grid")
    best = int(np.argmin(values))
    eps_best, sigma_best, value_best = eps_grid[best], sigma_grid[best], values[best]

    width = 0.5
    for _ in range(refinements):
        log_eps = np.log10(max(eps_best, 1e-12))
        log_sigma = np.log10(max(sigma_best, 1e-14))
        offsets = np.linspace(-width, width, REFINE_POINTS)
        eps_local = np.clip(np.concatenate([[eps_best, 0.0], 10.0 ** (log_eps + offsets)]), 0.0, 1.0)
        sigma_local = np.clip(np.concatenate([[sigma_best, 0.0], 10.0 ** (log_sigma + offsets)]), 0.0, 1.0)
        eps_grid, sigma_grid = (g.ravel() for g in np.meshgrid(eps_local, sigma_local, indexing="ij"))
        values = _evaluate(m0, d_v, vset, eps_grid, sigma_grid, chunk, False, "Refinement")
        best = int(np.argmin(values))
        if values[best] <= value_best:
            eps_best, sigma_best, value_best = eps_grid[best], sigma_grid[best], values[best]
        width /= 10.0
    q_best = float(_q_max(m0, d_v, np.array([eps_best]))[0] * (1.0 - sigma_best))
    _logger.info("brute minimum L=%.12f at q=%.6e eps=%.6e", value_best, q_best, eps_best)
    return BruteMinimum(q=q_best, eps=float(eps_best), lagrangian=float(value_best))


def bell_mixture_eof(weights: Sequence[float]) -> float:
    """E = h((1 + sqrt(1 - C^2))/2) with C = max(0, 2 m_max - 1); weights sorted descending."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (4,):
        raise DomainError(f"expected 4 Bell weights, got {weights.shape}")
    if np.any(np.diff(weights) > 1e-15):
        raise DomainError(f"weights must be sorted in descending order, got {weights}")
    if np.any(weights < -1e-12) or abs(weights.sum() - 1.0) > 1e-12:
        raise DomainError(f"weights must be a probability vector, got {weights}")
    concurrence = max(0.0, 2.0 * weights[0] - 1.0)
    x = 0.5 * (1.0 + np.sqrt(max(1.0 - concurrence**2, 0.0)))
    return float((entr(x) + entr(1.0 - x)) / np.log(2.0))
