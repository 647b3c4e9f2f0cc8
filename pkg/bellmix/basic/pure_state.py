"""
entanglement of a pure two-qubit state from its Bell-basis coefficients.

|psi> = (z0 + i z . sigma_b)|B(0)> = z0|B(0)> + sum_k z_k |B(k)>.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.special import entr

from .bell_algebra import BELL_STATES
from .errors import DomainError
from .hermitian2 import PauliDecomp2

PROBABILITY_TOL = 1e-12

EntropyValue = float


def natural_binary_entropy(x: float) -> EntropyValue:
    """h_e(x) = -x ln x - (1 - x) ln(1 - x), with 0 ln 0 = 0."""
    if not -PROBABILITY_TOL <= x <= 1.0 + PROBABILITY_TOL:
        raise DomainError(f"binary entropy needs a probability in [0, 1], got {x}")
    x = min(max(float(x), 0.0), 1.0)
    return float(entr(x) + entr(1.0 - x))


def binary_entropy(x: float) -> EntropyValue:
    """h(x) in bits."""
    return natural_binary_entropy(x) / np.log(2.0)


@dataclass(frozen=True)
class BellCoeffs:
    """normalized Bell-basis coefficients; `scale` is the factor applied on construction."""

    z0: complex
    z: NDArray
    scale: float = field(default=1.0, init=False)

    def __post_init__(self):
        z = np.array(self.z, dtype=complex).reshape(3)
        norm = np.sqrt(abs(self.z0) ** 2 + np.vdot(z, z).real)
        if norm == 0.0:
            raise DomainError("Bell coefficients must not all vanish")
        z = z / norm
        z.setflags(write=False)
        object.__setattr__(self, "z0", complex(self.z0) / norm)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "scale", float(1.0 / norm))

    def vector(self) -> NDArray:
        """(z0, z1, z2, z3): coordinates in the Bell basis."""
        return np.concatenate([[self.z0], self.z])

    def to_state(self) -> NDArray:
        """dense state vector in the standard basis."""
        return BELL_STATES.T @ self.vector()


def random_coeffs(rng: np.random.Generator) -> BellCoeffs:
    raw = rng.normal(size=4) + 1j * rng.normal(size=4)
    return BellCoeffs(raw[0], raw[1:])


def reduced_density(c: BellCoeffs) -> PauliDecomp2:
    """tr_a |psi><psi| = 1/2 + n . sigma_b with n = (i/2)(z0* z - z0 z* + z x z*)."""
    z0, z = c.z0, c.z
    n = 0.5j * (np.conj(z0) * z - z0 * np.conj(z) + np.cross(z, np.conj(z)))
    return PauliDecomp2(0.5, n.real)


def concurrence_pure(c: BellCoeffs) -> float:
    """C = |z0^2 + z . z|, clamped to [0, 1]."""
    return float(min(abs(c.z0**2 + np.dot(c.z, c.z)), 1.0))


def entanglement_pure(c: BellCoeffs) -> EntropyValue:
    """E = h((1 + sqrt(1 - C^2)) / 2)."""
    concurrence = concurrence_pure(c)
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - concurrence**2)))


def entanglement_from_reduced(c: BellCoeffs) -> EntropyValue:
    """E = h(n0 + |n|), the eigenvalue route."""
    reduced = reduced_density(c)
    return binary_entropy(min(reduced.n0 + reduced.norm, 1.0))
