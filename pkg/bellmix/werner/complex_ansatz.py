"""
the ansatz with complex vectors zeta^alpha = U^alpha v^alpha, U^alpha = diag(exp(i phi^alpha_j)), and the
search for orbits whose entanglement operator does not depend on alpha.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..basic.bell_algebra import Basis, BellOperator, bell_sigma_a_block, bell_sigma_b_block
from ..basic.config import ALGEBRA_TOL, INSENSITIVITY_TOL
from ..basic.errors import BoundaryError, DomainError
from ..basic.log import setup_logger
from ..basic.preconcurrence import stationary_values
from ..basic.pure_state import binary_entropy
from .core import AnsatzParams, WernerSpec, ansatz_K, log_K, pure_members
from .model import MixedMinimization

GAMMA_TOL = 1e-12
N_SAMPLES = 64

_logger = setup_logger(filename=__file__, classname="complex_ansatz")


@dataclass(frozen=True)
class PhaseFamily:
    """phases phi^alpha_j, one row per alpha."""

    phi: NDArray

    def __post_init__(self):
        phi = np.array(self.phi, dtype=float)
        if phi.ndim != 2 or phi.shape[1] != 3:
            raise DomainError(f"phases must have shape (N_alpha, 3), got {phi.shape}")
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def uniform(cls, spec: WernerSpec, phi: NDArray) -> "PhaseFamily":
        """the same three phases for every alpha."""
        return cls(np.tile(np.asarray(phi, dtype=float).reshape(1, 3), (spec.n_alpha, 1)))

    @classmethod
    def zeros(cls, spec: WernerSpec) -> "PhaseFamily":
        return cls(np.zeros((spec.n_alpha, 3)))

    def unitary(self, alpha: int) -> NDArray:
        return np.diag(np.exp(1j * self.phi[alpha]))

    def bar_unitary(self, alpha: int) -> NDArray:
        """diag(1, U^alpha) on the Bell basis."""
        return np.diag(np.concatenate([[1.0], np.exp(1j * self.phi[alpha])]))

    def zetas(self, spec: WernerSpec) -> NDArray:
        self._check(spec)
        return np.exp(1j * self.phi) * spec.vset

    def constraint_residuals(self, spec: WernerSpec) -> Tuple[float, float, float]:
        """max violations of zeta^dagger zeta = d_v, sum zeta = 0, sum zeta zeta^dagger = N_alpha I_v."""
        zetas = self.zetas(spec)
        norms = np.max(np.abs(np.einsum("ai,ai->a", np.conj(zetas), zetas) - spec.d_v))
        total = np.max(np.abs(zetas.sum(axis=0)))
        support = np.diag([1.0] * spec.d_v + [0.0] * (3 - spec.d_v))
        outer = np.max(np.abs(np.einsum("ai,aj->ij", zetas, np.conj(zetas)) - spec.n_alpha * support))
        return float(norms), float(total), float(outer)

    def _check(self, spec: WernerSpec):
        if self.phi.shape[0] != spec.n_alpha:
            raise DomainError(f"{self.phi.shape[0]} phase rows for N_alpha = {spec.n_alpha}")


def gamma_alpha(spec: WernerSpec, phases: PhaseFamily, alpha: int) -> complex:
    """gamma = m0 - m1 sum_j exp(2 i phi_j) v_j^2."""
    v = spec.vset[alpha]
    return complex(spec.m0 - spec.m1 * np.sum(np.exp(2j * phases.phi[alpha]) * v * v))


def pure_coefficients(spec: WernerSpec, phases: PhaseFamily, alpha: int) -> Tuple[float, NDArray]:
    """(z0, z) = (sqrt(m0), -i sqrt(m1) zeta^alpha)."""
    zeta = phases.zetas(spec)[alpha]
    return float(np.sqrt(spec.m0)), -1j * np.sqrt(spec.m1) * zeta


def n_vectors(spec: WernerSpec, phases: PhaseFamily, p: AnsatzParams, alpha: int) -> Tuple[NDArray, NDArray, float]:
    """n = q Re(zeta), dn = m1 (1 - eps) Re(zeta) x Im(zeta), and Ytilde = |n + dn|."""
    zeta = phases.zetas(spec)[alpha]
    n = p.q * zeta.real
    dn = spec.m1 * (1.0 - p.eps) * np.cross(zeta.real, zeta.imag)
    return n, dn, float(np.linalg.norm(n + dn))


def n_magnitudes(spec: WernerSpec, gamma: complex, p: AnsatzParams) -> Tuple[float, float]:
    """|n|^2 and |dn|^2 from gamma alone."""
    n_sq = 0.0 if spec.m1 == 0.0 else (p.q**2 / (spec.m0 * spec.m1)) * 0.5 * spec.m0 * (1.0 - gamma.real)
    dn_sq = 0.25 * (1.0 - p.eps) ** 2 * ((1.0 - gamma.real) * (gamma.real - (2.0 * spec.m0 - 1.0)) - gamma.imag**2)
    return float(n_sq), float(dn_sq)


def K_tilde(spec: WernerSpec, p: AnsatzParams, phases: PhaseFamily, alpha: int) -> BellOperator:
    bar = phases.bar_unitary(alpha)
    return BellOperator(bar @ ansatz_K(spec, p, alpha).k.entries @ bar.conj().T, Basis.BELL)


def log_K_tilde(spec: WernerSpec, phases: PhaseFamily, p: AnsatzParams, alpha: int) -> BellOperator:
    """U-bar ln K U-bar^dagger."""
    bar = phases.bar_unitary(alpha)
    return BellOperator(bar @ log_K(spec, p, alpha).entries @ bar.conj().T, Basis.BELL)


def _log_ratio(ytilde: float) -> float:
    return float(np.log(0.5 + ytilde) - np.log(0.5 - ytilde))


def log_R_tilde(spec: WernerSpec, phases: PhaseFamily, p: AnsatzParams, alpha: int) -> BellOperator:
    """-ln N + ln((1/2 + Y)(1/2 - Y)) + (L / Y) [[0, i n^T], [-i n, i dn x .]].

    The bracket is half the sum of the Bell blocks of (n + dn).sigma_b and (F2 (n - dn)).sigma_a.
    """
    n, dn, ytilde = n_vectors(spec, phases, p, alpha)
    if ytilde >= 0.5 - GAMMA_TOL:
        raise BoundaryError(f"Ytilde = {ytilde} reaches 1/2")
    entries = (-np.log(spec.n_alpha) + np.log(0.25 - ytilde * ytilde)) * np.eye(4, dtype=complex)
    if ytilde > 0.0:
        bracket = 0.5 * (bell_sigma_b_block(n + dn) + bell_sigma_a_block(n - dn))
        entries = entries + (_log_ratio(ytilde) / ytilde) * bracket
    return BellOperator(entries, Basis.BELL)


def _support(spec: WernerSpec) -> slice:
    return slice(0, 1 + spec.d_v)


def pure_delta_diagonal(spec: WernerSpec, phases: PhaseFamily, alpha: int) -> NDArray:
    """the alpha-dependent diagonal operator whose action on psi_alpha is Delta-tilde^pure psi_alpha.

    -ln((1/2 + Y)(1/2 - Y)) - (L / 2Y) w with w = (1 - gamma, 1 + gamma conj(U)^2). The pure constraints give
    2Y = s = sqrt(1 - |gamma|^2) and (1/2 + Y)(1/2 - Y) = |gamma|^2 / 4, so the entries are evaluated as
    l (s - w) / s - 2 w ln(1/2 + Y) / s with l = -ln(|gamma|^2 / 4); every term vanishes with gamma.
    """
    gamma = gamma_alpha(spec, phases, alpha)
    magnitude_sq = min(abs(gamma) ** 2, 1.0)
    s = float(np.sqrt(1.0 - magnitude_sq))
    w = np.concatenate([[1.0 - gamma], 1.0 + gamma * np.exp(-2j * phases.phi[alpha])])
    if s < 0.5:
        # artanh(s) / s -> 1 at Y = 0
        factor = 2.0 if s == 0.0 else 2.0 * float(np.arctanh(s)) / s
        return -np.log(0.25 * magnitude_sq) - factor * w
    if gamma == 0.0:
        return np.zeros(4, dtype=complex)
    shift = magnitude_sq / (1.0 + s)
    s_minus_w = np.concatenate([[gamma - shift], -shift - gamma * np.exp(-2j * phases.phi[alpha])])
    ell = -2.0 * np.log(0.5 * abs(gamma))
    log_plus = np.log1p(-0.5 * shift)
    return (ell * s_minus_w - 2.0 * w * log_plus) / s


def delta_tilde(spec: WernerSpec, phases: PhaseFamily, p: AnsatzParams, mode: str, alpha: int):
    """mixed: the operator ln K-tilde - ln R-tilde; pure: its action on psi_alpha = (z0, z^alpha)."""
    if mode == "mixed":
        entries = log_K_tilde(spec, phases, p, alpha).entries - log_R_tilde(spec, phases, p, alpha).entries
        return BellOperator(entries, Basis.BELL)
    if mode == "pure":
        z0, z = pure_coefficients(spec, phases, alpha)
        return pure_delta_diagonal(spec, phases, alpha) * np.concatenate([[z0], z])
    raise DomainError(f"mode must be 'pure' or 'mixed', got {mode!r}")


def alpha_deviation(spec: WernerSpec, phases: PhaseFamily, p: AnsatzParams, mode: str) -> float:
    """max over alpha of the distance between the alpha-th entanglement operator and the first one."""
    if mode == "pure":
        operators = [pure_delta_diagonal(spec, phases, alpha) for alpha in range(spec.n_alpha)]
    else:
        support = _support(spec)
        operators = [delta_tilde(spec, phases, p, "mixed", alpha).entries[support, support] for alpha in range(spec.n_alpha)]
    return float(max(np.max(np.abs(op - operators[0])) for op in operators))


def zero_gamma_phases(spec: WernerSpec) -> PhaseFamily:
    """alpha-independent phases with gamma = 0: the unit vectors exp(2 i phi_j) close a polygon of length m0/m1."""
    if spec.m0 > 0.5 + GAMMA_TOL:
        raise DomainError(f"gamma = 0 needs m0 <= 1/2, got {spec.m0}")
    ratio = spec.m0 / spec.m1
    if spec.d_v == 1:
        if abs(ratio - 1.0) > 1e-9:
            raise DomainError("with d_v = 1, gamma = 0 needs m0 = 1/2")
        return PhaseFamily.zeros(spec)
    cosine = ratio / 2.0 if spec.d_v == 2 else (ratio - 1.0) / 2.0
    theta = float(np.arccos(np.clip(cosine, -1.0, 1.0)))
    if spec.d_v == 2:
        phi = np.array([theta / 2.0, -theta / 2.0, 0.0])
    else:
        phi = np.array([0.0, theta / 2.0, -theta / 2.0])
    return PhaseFamily.uniform(spec, phi)


@dataclass(frozen=True)
class LemmaResult:
    points: Tuple[Tuple[float, float], ...]
    deviations: NDArray


def lemma_check(spec: WernerSpec, grid: int = 11) -> LemmaResult:
    """(q, eps) grid points where K-tilde is alpha-independent at phases pi/2 (gamma = 1 for every alpha)."""
    phases = PhaseFamily.uniform(spec, np.full(3, 0.5 * np.pi))
    points = []
    deviations = np.zeros((grid, grid))
    for i, eps in enumerate(np.linspace(0.0, 1.0, grid)):
        q_max = np.sqrt(spec.m0 * spec.m1 * (spec.d_v - eps * (spec.d_v - 1)) / spec.d_v)
        for j, q in enumerate(np.linspace(0.0, q_max, grid)):
            p = AnsatzParams.from_q_eps(spec, q, eps)
            members = [K_tilde(spec, p, phases, alpha).entries for alpha in range(spec.n_alpha)]
            deviations[i, j] = max(np.max(np.abs(member - members[0])) for member in members)
            if deviations[i, j] <= ALGEBRA_TOL:
                points.append((float(q), float(eps)))
    return LemmaResult(tuple(points), deviations)


class OrbitClass(Enum):
    GLOBAL_ORBIT = "global_orbit"
    STATIONARY_ORBIT = "stationary_orbit"
    EXCLUDED_GAMMA1 = "excluded_gamma1"
    NOT_INSENSITIVE = "not_insensitive"


@dataclass(frozen=True)
class OrbitReport:
    mode: str
    classification: OrbitClass
    phases: PhaseFamily
    gamma_per_alpha: Tuple[complex, ...]
    ytilde_per_alpha: Tuple[float, ...]
    insensitive: bool
    max_delta_deviation: float
    pattern: Optional[Tuple[int, ...]] = None
    entanglement: Optional[float] = None

    @property
    def concurrence(self) -> float:
        return float(abs(self.gamma_per_alpha[0]))


def _orbit(spec, phases, p, mode, classification, pattern=None) -> OrbitReport:
    gammas = tuple(gamma_alpha(spec, phases, alpha) for alpha in range(spec.n_alpha))
    ytildes = tuple(n_vectors(spec, phases, p, alpha)[2] for alpha in range(spec.n_alpha))
    if classification is OrbitClass.EXCLUDED_GAMMA1:
        return OrbitReport(mode, classification, phases, gammas, ytildes, False, np.nan, pattern)
    deviation = alpha_deviation(spec, phases, p, mode)
    insensitive = deviation <= INSENSITIVITY_TOL
    if not insensitive:
        classification = OrbitClass.NOT_INSENSITIVE
    entanglement = None
    if mode == "pure":
        concurrence = min(abs(gammas[0]), 1.0)
        entanglement = binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - concurrence**2)))
    return OrbitReport(mode, classification, phases, gammas, ytildes, insensitive, deviation, pattern, entanglement)


def _check_squares(spec: WernerSpec):
    if np.max(np.ptp(spec.vset**2, axis=0)) > ALGEBRA_TOL:
        raise DomainError("orbit classification needs (v_j)^2 independent of alpha")


def _pure_orbits(spec: WernerSpec) -> List[OrbitReport]:
    p = AnsatzParams.pure_min(spec)
    reports = []
    for pattern in itertools.product((0, 1), repeat=spec.d_v):
        bits = np.array(pattern + (0,) * (3 - spec.d_v))
        phases = PhaseFamily.uniform(spec, 0.5 * np.pi * bits)
        if all(pattern):
            classification = OrbitClass.EXCLUDED_GAMMA1
        elif not any(pattern):
            classification = OrbitClass.GLOBAL_ORBIT if spec.m0 > 0.5 else OrbitClass.STATIONARY_ORBIT
        else:
            classification = OrbitClass.STATIONARY_ORBIT
        reports.append(_orbit(spec, phases, p, "pure", classification, pattern))
    if spec.m0 <= 0.5:
        try:
            phases = zero_gamma_phases(spec)
        except DomainError as exc:
            _logger.info("no gamma = 0 orbit: %s", exc)
        else:
            reports.append(_orbit(spec, phases, p, "pure", OrbitClass.GLOBAL_ORBIT))
    return reports


def _mixed_orbits(spec: WernerSpec, p: Optional[AnsatzParams], n_samples: int, seed: int) -> List[OrbitReport]:
    if p is None:
        p = MixedMinimization().minimize(spec)
    reports = [_orbit(spec, PhaseFamily.zeros(spec), p, "mixed", OrbitClass.GLOBAL_ORBIT)]
    rng = np.random.default_rng(seed)
    for _ in range(n_samples):
        phases = PhaseFamily(rng.uniform(0.0, 2.0 * np.pi, size=(spec.n_alpha, 3)))
        try:
            report = _orbit(spec, phases, p, "mixed", OrbitClass.STATIONARY_ORBIT)
        except BoundaryError:
            continue
        if report.insensitive:
            _logger.warning("random phases gave an insensitive mixed orbit: %s", phases.phi)
        reports.append(report)
    _logger.info(
        "%d of %d random phase families insensitive",
        sum(r.insensitive for r in reports[1:]),
        len(reports) - 1,
    )
    return reports


def classify_orbits(
    spec: WernerSpec,
    mode: str,
    p: Optional[AnsatzParams] = None,
    n_samples: int = N_SAMPLES,
    seed: int = 0,
) -> List[OrbitReport]:
    """
    pure: one orbit per sign pattern exp(2 i phi_j) = (-1)^b_j plus the gamma = 0 orbit when m0 <= 1/2;
    the all-flip pattern has gamma = 1 and is excluded.
    mixed: the real orbit at the stationary parameters, then `n_samples` random phase families.
    """
    _check_squares(spec)
    if mode == "pure":
        return _pure_orbits(spec)
    if mode == "mixed":
        return _mixed_orbits(spec, p, n_samples, seed)
    raise DomainError(f"mode must be 'pure' or 'mixed', got {mode!r}")


def admitted_concurrences(reports: List[OrbitReport]) -> Tuple[float, ...]:
    """sorted |gamma| of the admitted pure orbits, together with the excluded value 1."""
    values = sorted({round(r.concurrence, 12) for r in reports} | {1.0})
    deduped: List[float] = []
    for value in values:
        if not deduped or value - deduped[-1] > GAMMA_TOL:
            deduped.append(value)
    return tuple(deduped)


def stationary_weights(spec: WernerSpec) -> Tuple[float, ...]:
    """(m0, m1 v_1^2, m1 v_2^2, m1 v_3^2) for the first alpha."""
    return (spec.m0,) + tuple(spec.m1 * spec.vset[0] ** 2)


def matches_stationary_set(spec: WernerSpec, reports: List[OrbitReport]) -> bool:
    expected = stationary_values(stationary_weights(spec)).all_values
    found = admitted_concurrences(reports)
    return len(expected) == len(found) and bool(np.allclose(expected, found, atol=1e-12, rtol=0.0))


def pure_psi(spec: WernerSpec, phases: PhaseFamily, alpha: int) -> NDArray:
    """(z0, z^alpha) = U-bar psi_alpha."""
    _, psi = pure_members(spec)[alpha]
    return phases.bar_unitary(alpha) @ psi
