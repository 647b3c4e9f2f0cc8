"""
stationary points of the pre-concurrence C(theta) = |sum_j exp(i theta_j) m_j|, theta_0 = 0.
"""

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from .errors import DomainError
from .log import setup_logger

WEIGHT_TOL = 1e-12
DEDUP_TOL = 1e-12
MAX_SEGMENTS = 20
MAX_GRID_SEGMENTS = 3

_logger = setup_logger(filename=__file__, classname="preconcurrence")


@dataclass(frozen=True)
class WeightVector:
    """non-negative weights m_0..m_n summing to one."""

    m: Tuple[float, ...]

    def __post_init__(self):
        m = tuple(float(x) for x in np.ravel(self.m))
        if len(m) == 0:
            raise DomainError("a weight vector needs at least one weight")
        if min(m) < -WEIGHT_TOL:
            raise DomainError(f"weights must be non-negative, got {m}")
        if abs(sum(m) - 1.0) > WEIGHT_TOL:
            raise DomainError(f"weights must sum to 1, got sum {sum(m)!r}")
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        """number of free phases."""
        return len(self.m) - 1

    def array(self) -> NDArray:
        return np.array(self.m)


@dataclass(frozen=True)
class StationarySet:
    values: Tuple[float, ...]
    zero_feasible: bool

    @property
    def all_values(self) -> Tuple[float, ...]:
        """the enumerated values plus 0 when a closed polygon is possible (largest weight <= 1/2)."""
        if self.zero_feasible and (not self.values or self.values[0] > DEDUP_TOL):
            return (0.0,) + self.values
        return self.values

    @property
    def minimum(self) -> float:
        return self.all_values[0]


def _weights(m) -> WeightVector:
    return m if isinstance(m, WeightVector) else WeightVector(tuple(m))


def _phases(theta: Sequence[float], n: int) -> NDArray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape[-1] == n + 1:
        if np.any(theta[..., 0] != 0.0):
            raise DomainError("theta_0 is fixed to 0")
        return theta
    if theta.shape[-1] != n:
        raise DomainError(f"expected {n} free phases, got {theta.shape[-1]}")
    return np.concatenate([np.zeros(theta.shape[:-1] + (1,)), theta], axis=-1)


def gamma_theta(m, theta: Sequence[float]) -> complex:
    """pre-concurrence amplitude; `theta` may include theta_0 = 0 or omit it."""
    weights = _weights(m)
    phases = _phases(theta, weights.n)
    return complex(np.sum(weights.array() * np.exp(1j * phases)))


def stationary_phases(m) -> List[Tuple[NDArray, float]]:
    """(theta, C) for every sign pattern b with b_0 = 0, theta_j = pi b_j."""
    weights = _weights(m)
    if weights.n > MAX_SEGMENTS:
        raise DomainError(f"at most {MAX_SEGMENTS} free phases are enumerated, got {weights.n}")
    result = []
    for pattern in itertools.product((0, 1), repeat=weights.n):
        bits = np.array((0,) + pattern)
        value = abs(float(np.sum(weights.array() * (-1.0) ** bits)))
        result.append((np.pi * bits.astype(float), value))
    return result


def stationary_values(m) -> StationarySet:
    weights = _weights(m)
    raw = sorted(value for _, value in stationary_phases(weights))
    values: List[float] = []
    for value in raw:
        if not values or value - values[-1] > DEDUP_TOL:
            values.append(value)
    return StationarySet(tuple(values), max(weights.m) <= 0.5)


def stationarity_residual(m, theta: Sequence[float]) -> float:
    """max_j m_j |gamma| |sin(theta_j - arg gamma)|."""
    weights = _weights(m)
    phases = _phases(theta, weights.n)
    gamma = np.sum(weights.array() * np.exp(1j * phases))
    terms = weights.array()[1:] * abs(gamma) * np.sin(phases[1:] - np.angle(gamma))
    return float(np.max(np.abs(terms))) if terms.size else 0.0


def min_concurrence(m) -> float:
    """0 if m_0 <= 1/2, else m_0 - sum_{j>=1} m_j; m_0 must be the largest weight."""
    weights = _weights(m)
    if weights.n and weights.m[0] < max(weights.m[1:]):
        raise DomainError(f"m_0 must be the largest weight, got {weights.m}")
    if weights.m[0] <= 0.5:
        return 0.0
    return weights.m[0] - sum(weights.m[1:])


def grid_minimum(m, resolution: int = 100) -> Tuple[float, NDArray]:
    """min of C over a uniform phase grid with spacing 2 pi / resolution, and its argmin."""
    weights = _weights(m)
    if weights.n == 0:
        return abs(weights.m[0]), np.zeros(0)
    if weights.n > MAX_GRID_SEGMENTS:
        raise DomainError(f"grid search supports at most {MAX_GRID_SEGMENTS} free phases")
    axis = 2.0 * np.pi * np.arange(resolution) / resolution
    mesh = np.meshgrid(*([axis] * weights.n), indexing="ij")
    gamma = weights.m[0] + sum(weight * np.exp(1j * grid) for weight, grid in zip(weights.m[1:], mesh))
    magnitude = np.abs(gamma)
    index = np.unravel_index(np.argmin(magnitude), magnitude.shape)
    return float(magnitude[index]), np.array([grid[index] for grid in mesh])


def _polish(weights: WeightVector, theta: NDArray, max_iter: int = 50) -> NDArray:
    """Gauss-Newton on (Re gamma, Im gamma) = 0 with least-norm steps."""
    m = weights.array()
    for _ in range(max_iter):
        gamma = m[0] + np.sum(m[1:] * np.exp(1j * theta))
        if abs(gamma) < 1e-15:
            break
        derivative = 1j * m[1:] * np.exp(1j * theta)
        jacobian = np.vstack([derivative.real, derivative.imag])
        step, *_ = np.linalg.lstsq(jacobian, -np.array([gamma.real, gamma.imag]), rcond=None)
        theta = theta + step
    return theta


def zero_witness(m, resolution: int = 64) -> NDArray:
    """free phases theta_1..theta_n with C(theta) ~ 0; only exists when m_0 <= 1/2."""
    weights = _weights(m)
    if weights.m[0] > 0.5:
        raise DomainError(f"C = 0 needs m_0 <= 1/2, got m_0 = {weights.m[0]}")
    if weights.n == 0:
        raise DomainError("a single segment cannot close")
    if weights.n <= MAX_GRID_SEGMENTS:
        _, start = grid_minimum(weights, resolution=resolution)
    else:
        start = np.random.default_rng(0).uniform(0.0, 2.0 * np.pi, weights.n)
    refined = minimize(
        lambda theta: abs(gamma_theta(weights, theta)) ** 2,
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-16, "maxiter": 4000},
    )
    theta = _polish(weights, np.asarray(refined.x, dtype=float))
    _logger.debug("zero witness %s with |gamma| = %.3e", theta, abs(gamma_theta(weights, theta)))
    return np.mod(theta, 2.0 * np.pi)


def surface_grid(m, resolution: int = 400) -> Tuple[NDArray, NDArray, NDArray]:
    """C(theta1, theta2) = |m_0 + m_1 (exp(i theta1) + exp(i theta2))| on [0, 2 pi)^2."""
    weights = _weights(m)
    if weights.n != 2 or abs(weights.m[1] - weights.m[2]) > WEIGHT_TOL:
        raise DomainError(f"the surface needs weights (m0, m1, m1), got {weights.m}")
    axis = 2.0 * np.pi * np.arange(resolution) / resolution
    theta1, theta2 = np.meshgrid(axis, axis, indexing="ij")
    surface = np.abs(weights.m[0] + weights.m[1] * (np.exp(1j * theta1) + np.exp(1j * theta2)))
    return axis, axis.copy(), surface
