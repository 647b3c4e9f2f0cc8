"""
the ansatz decomposition K^alpha of a Werner state, its spectral data, the marginal product R^alpha,
the Lagrangian and the entanglement operators Delta.

All 4x4 operators are returned in the Bell basis. Eigenvalues are kept unnormalized
(u/2 +- X, eps m1) and divided by N_alpha only where an operator is assembled.
"""

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.special import entr

from ..basic.bell_algebra import F2, SIGMA, Basis, BellOperator, QubitOperator
from ..basic.config import INSENSITIVITY_TOL
from ..basic.errors import BoundaryError, DomainError
from ..basic.log import setup_logger

SUPPORTED_FAMILIES = ((1, 2), (2, 4), (3, 4), (3, 8))
DEFAULT_N_ALPHA = {1: 2, 2: 4, 3: 4}

PARAM_TOL = 1e-12
ZERO_EIGENVALUE_TOL = 1e-13

_logger = setup_logger(filename=__file__, classname="werner_core")


def make_vset(d_v: int, n_alpha: int) -> NDArray:
    """the integer sign-vector families, one row per alpha."""
    if (d_v, n_alpha) not in SUPPORTED_FAMILIES:
        raise DomainError(f"unsupported (d_v, N_alpha) = ({d_v}, {n_alpha}); choose from {SUPPORTED_FAMILIES}")
    if d_v == 1:
        rows = [(1, 0, 0), (-1, 0, 0)]
    elif d_v == 2:
        rows = [((-1) ** a, (-1) ** b, 0) for a in (0, 1) for b in (0, 1)]
    elif n_alpha == 4:
        rows = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    else:
        rows = list(itertools.product((1, -1), repeat=3))
    return np.array(rows, dtype=int)


def identity_v(d_v: int) -> NDArray:
    """I_v = diag(1^{d_v}, 0^{3 - d_v})."""
    return np.diag([1.0] * d_v + [0.0] * (3 - d_v))


def vset_residuals(vset: NDArray, d_v: int) -> Tuple[float, float, float]:
    """max violations of v.v = d_v, sum_alpha v = 0 and sum_alpha v v^T = N_alpha I_v."""
    vset = np.asarray(vset, dtype=float)
    norms = float(np.max(np.abs(np.einsum("ai,ai->a", vset, vset) - d_v)))
    total = float(np.max(np.abs(vset.sum(axis=0))))
    outer = float(np.max(np.abs(np.einsum("ai,aj->ij", vset, vset) - len(vset) * identity_v(d_v))))
    return norms, total, outer


def rotate_vset(vset: NDArray, omega: NDArray) -> NDArray:
    """v -> omega v for every alpha; only meaningful for d_v = 3 where I_v = I."""
    return np.asarray(vset, dtype=float) @ np.asarray(omega, dtype=float).T


@dataclass(frozen=True)
class WernerSpec:
    """Bell mixture diag(m0, m1^{d_v}, 0^{3 - d_v}) with the v-family used by the ansatz."""

    m0: float
    d_v: int
    n_alpha: Optional[int] = None
    vset: Optional[NDArray] = None

    def __post_init__(self):
        if self.d_v not in (1, 2, 3):
            raise DomainError(f"d_v must be 1, 2 or 3, got {self.d_v!r}")
        if not -PARAM_TOL <= self.m0 <= 1.0 + PARAM_TOL:
            raise DomainError(f"m0 must lie in [0, 1], got {self.m0}")
        object.__setattr__(self, "m0", min(max(float(self.m0), 0.0), 1.0))
        if self.vset is None:
            n_alpha = self.n_alpha if self.n_alpha is not None else DEFAULT_N_ALPHA[self.d_v]
            vset = make_vset(self.d_v, n_alpha).astype(float)
        else:
            vset = np.array(self.vset, dtype=float)
            if vset.ndim != 2 or vset.shape[1] != 3:
                raise DomainError(f"vset must have shape (N_alpha, 3), got {vset.shape}")
            worst = max(vset_residuals(vset, self.d_v))
            if worst > PARAM_TOL * 10:
                raise DomainError(f"vset violates the family constraints by {worst:.3e}")
        vset.setflags(write=False)
        object.__setattr__(self, "vset", vset)
        object.__setattr__(self, "n_alpha", len(vset))

    @property
    def m1(self) -> float:
        return (1.0 - self.m0) / self.d_v

    @property
    def y_pure(self) -> float:
        """Y at the pure-min point, sqrt(m0 (1 - m0))."""
        return float(np.sqrt(self.m0 * (1.0 - self.m0)))

    def weights(self) -> NDArray:
        """Bell weights (m0, m1^{d_v}, 0^{3 - d_v})."""
        return np.array([self.m0] + [self.m1] * self.d_v + [0.0] * (3 - self.d_v))

    def rho(self) -> BellOperator:
        return BellOperator(np.diag(self.weights()), Basis.BELL)

    def with_vset(self, vset: NDArray) -> "WernerSpec":
        return WernerSpec(self.m0, self.d_v, vset=vset)


def _stable_params(spec: WernerSpec, q: float, eps: float, rho: float) -> dict:
    d_v, m0, m1 = spec.d_v, spec.m0, spec.m1
    eta = d_v - eps * (d_v - 1)
    u = m0 + eta * m1
    k = 0.5 * (m0 - eta * m1)
    y = abs(q) * np.sqrt(d_v)
    x = float(np.sqrt(max(k * k + y * y, 0.0)))
    lam_plus = 0.5 * u + x
    lam_minus = rho / lam_plus if lam_plus > 0 else 0.0
    quarter_minus_y2 = (m0 - 0.5) ** 2 + m0 * m1 * eps * (d_v - 1) + rho
    return dict(
        eta=eta,
        u=u,
        k=k,
        y=y,
        x=x,
        rho=rho,
        lam_plus=lam_plus,
        lam_minus=lam_minus,
        half_minus_y=quarter_minus_y2 / (0.5 + y),
    )


@dataclass(frozen=True)
class AnsatzParams:
    """(q, eps) with the derived quantities eta, u, k, Y, X.

    `rho` = (u/2)^2 - X^2 = m0 m1 eta - q^2 d_v; `lam_minus` = u/2 - X and `half_minus_y` = 1/2 - Y
    are stored in a cancellation-free form.
    """

    q: float
    eps: float
    eta: float = field(repr=False)
    u: float = field(repr=False)
    k: float = field(repr=False)
    y: float = field(repr=False)
    x: float = field(repr=False)
    rho: float = field(repr=False)
    lam_plus: float = field(repr=False)
    lam_minus: float = field(repr=False)
    half_minus_y: float = field(repr=False)

    @classmethod
    def from_q_eps(cls, spec: WernerSpec, q: float, eps: float) -> "AnsatzParams":
        # q -> -q together with v -> -v leaves the family unchanged
        q = abs(float(q))
        eps = float(eps)
        if eps < -PARAM_TOL:
            raise DomainError(f"eps must be non-negative, got {eps}")
        eta = spec.d_v - eps * (spec.d_v - 1)
        rho = spec.m0 * spec.m1 * eta - q * q * spec.d_v
        if rho < -PARAM_TOL:
            q_max = np.sqrt(max(spec.m0 * spec.m1 * eta, 0.0) / spec.d_v)
            raise DomainError(f"q = {q} exceeds sqrt(m0 m1 eta / d_v) = {q_max}; K would not be PSD")
        rho = max(rho, 0.0)
        return cls(q=q, eps=max(eps, 0.0), **_stable_params(spec, q, max(eps, 0.0), rho))

    @classmethod
    def from_eps_rho(cls, spec: WernerSpec, eps: float, rho: float) -> "AnsatzParams":
        eps, rho = max(float(eps), 0.0), float(rho)
        eta = spec.d_v - eps * (spec.d_v - 1)
        y2 = spec.m0 * spec.m1 * eta - rho
        if rho < -PARAM_TOL or y2 < -PARAM_TOL:
            raise DomainError(f"rho = {rho} outside [0, m0 m1 eta] at eps = {eps}")
        rho = max(rho, 0.0)
        q = float(np.sqrt(max(y2, 0.0) / spec.d_v))
        return cls(q=q, eps=eps, **_stable_params(spec, q, eps, rho))

    @classmethod
    def pure_min(cls, spec: WernerSpec) -> "AnsatzParams":
        """q = sqrt(m0 m1), eps = 0: every member is rank one."""
        return cls.from_eps_rho(spec, 0.0, 0.0)

    @classmethod
    def trivial(cls, spec: WernerSpec) -> "AnsatzParams":
        """q = 0, eps = 1: K^alpha = rho / N_alpha."""
        return cls.from_q_eps(spec, 0.0, 1.0)

    def eigenvalue_table(self, spec: WernerSpec) -> NDArray:
        """unnormalized eigenvalues (u/2 + X, u/2 - X, (eps m1)^{d_v - 1}, 0^{3 - d_v})."""
        return np.array(
            [self.lam_plus, self.lam_minus] + [self.eps * spec.m1] * (spec.d_v - 1) + [0.0] * (3 - spec.d_v)
        )


@dataclass(frozen=True)
class DecompositionMember:
    alpha: int
    k: BellOperator
    weight: float


def _check_alpha(spec: WernerSpec, alpha: int) -> NDArray:
    if not 0 <= alpha < spec.n_alpha:
        raise DomainError(f"alpha must be in 0..{spec.n_alpha - 1}, got {alpha}")
    return spec.vset[alpha]


def ansatz_K(spec: WernerSpec, p: AnsatzParams, alpha: int) -> DecompositionMember:
    """K^alpha = (1/N)[[m0, i q v^T], [-i q v, m1 v v^T + eps m1 (I_v - v v^T)]]."""
    v = _check_alpha(spec, alpha)
    if p.lam_minus < -PARAM_TOL or p.eps < -PARAM_TOL:
        raise DomainError(f"parameters give a negative eigenvalue: u/2 - X = {p.lam_minus}, eps = {p.eps}")
    outer = np.outer(v, v)
    entries = np.zeros((4, 4), dtype=complex)
    entries[0, 0] = spec.m0
    entries[0, 1:] = 1j * p.q * v
    entries[1:, 0] = -1j * p.q * v
    entries[1:, 1:] = spec.m1 * outer + p.eps * spec.m1 * (identity_v(spec.d_v) - outer)
    return DecompositionMember(alpha, BellOperator(entries / spec.n_alpha, Basis.BELL), 1.0 / spec.n_alpha)


def decomposition_sum(spec: WernerSpec, p: AnsatzParams) -> NDArray:
    """sum_alpha K^alpha, which must equal rho."""
    return sum(ansatz_K(spec, p, alpha).k.entries for alpha in range(spec.n_alpha))


@dataclass(frozen=True)
class ProjectorFamily:
    e: NDArray
    sigma: NDArray
    p0: NDArray
    plus: NDArray
    minus: NDArray


def _embed(top_left, top, lower) -> NDArray:
    block = np.zeros((4, 4), dtype=complex)
    block[0, 0] = top_left
    block[0, 1:] = top
    block[1:, 0] = np.conj(top)
    block[1:, 1:] = lower
    return block


def projector_family(spec: WernerSpec, p: AnsatzParams, alpha: int) -> ProjectorFamily:
    """E_alpha, Sigma_alpha, P0_alpha and P+- = (E +- Sigma)/2; K = (lam+ P+ + lam- P- + eps m1 P0)/N."""
    v = _check_alpha(spec, alpha)
    if p.x <= 0.0:
        raise BoundaryError("X = 0: the +- eigenvalues coincide and Sigma is undefined")
    vv = np.outer(v, v) / spec.d_v
    e = _embed(1.0, np.zeros(3), vv)
    sigma = _embed(p.k, 1j * p.q * v, -p.k * vv) / p.x
    p0 = _embed(0.0, np.zeros(3), identity_v(spec.d_v) - vv)
    return ProjectorFamily(e, sigma, p0, 0.5 * (e + sigma), 0.5 * (e - sigma))


def _spectral_pairs(spec: WernerSpec, p: AnsatzParams, alpha: int) -> List[Tuple[float, NDArray]]:
    """(unnormalized eigenvalue, projector) pairs of K^alpha on its support."""
    v = spec.vset[alpha]
    vv = np.outer(v, v) / spec.d_v
    pairs = []
    if p.x > 0.0:
        family = projector_family(spec, p, alpha)
        pairs += [(p.lam_plus, family.plus), (p.lam_minus, family.minus), (p.eps * spec.m1, family.p0)]
    else:
        pairs += [(0.5 * p.u, _embed(1.0, np.zeros(3), vv))]
        pairs += [(p.eps * spec.m1, _embed(0.0, np.zeros(3), identity_v(spec.d_v) - vv))]
    return [(value, projector) for value, projector in pairs if value > ZERO_EIGENVALUE_TOL]


def log_K(spec: WernerSpec, p: AnsatzParams, alpha: int) -> BellOperator:
    """support-restricted ln K^alpha = sum ln(lambda / N) P over the nonzero eigenvalues."""
    _check_alpha(spec, alpha)
    entries = np.zeros((4, 4), dtype=complex)
    for value, projector in _spectral_pairs(spec, p, alpha):
        entries += np.log(value / spec.n_alpha) * projector
    return BellOperator(entries, Basis.BELL)


def support_projector(spec: WernerSpec, p: AnsatzParams, alpha: int) -> NDArray:
    return sum((projector for _, projector in _spectral_pairs(spec, p, alpha)), np.zeros((4, 4), dtype=complex))


def _scaled_log_ratio(x: float, c: float, lower: float) -> float:
    """ln((c - x) / (c + x)) / x, with `lower` = c - x given in stable form."""
    if x == 0.0:
        return -2.0 / c
    if x < 0.5 * c:
        return float(-2.0 * np.arctanh(x / c) / x)
    if lower <= 0.0:
        return -np.inf
    return float((np.log(lower) - np.log(c + x)) / x)


def _log_marginal_ratio(p: AnsatzParams) -> float:
    """L = ln((1/2 + Y) / (1/2 - Y))."""
    if p.y < 0.25:
        return float(2.0 * np.arctanh(2.0 * p.y))
    return float(np.log(0.5 + p.y) - np.log(p.half_minus_y))


@dataclass(frozen=True)
class Marginals:
    k_a: QubitOperator
    k_b: QubitOperator
    r: BellOperator
    log_r: BellOperator


def marginals_and_R(spec: WernerSpec, p: AnsatzParams, alpha: int) -> Marginals:
    """K_b = (1/2 + n.sigma_b)/N with n = q v, K_a uses F_2 n, R = K_a K_b / w and its closed-form log."""
    v = _check_alpha(spec, alpha)
    if p.half_minus_y <= 0.0:
        raise BoundaryError(f"Y = {p.y} reaches 1/2: the marginals are not full rank")
    n_alpha = spec.n_alpha
    n = p.q * v
    k_b = (0.5 * SIGMA[0] + np.einsum("k,kij->ij", n, SIGMA[1:])) / n_alpha
    k_a = (0.5 * SIGMA[0] + np.einsum("k,kij->ij", F2 @ n, SIGMA[1:])) / n_alpha
    r = BellOperator(n_alpha * np.kron(k_a, k_b), Basis.STANDARD).to(Basis.BELL)
    scalar = -np.log(n_alpha) + np.log(0.5 + p.y) + np.log(p.half_minus_y)
    log_r = scalar * np.eye(4, dtype=complex)
    if p.y > 0.0:
        n_hat = n / p.y
        off = np.zeros((4, 4), dtype=complex)
        off[0, 1:] = 1j * n_hat
        off[1:, 0] = -1j * n_hat
        log_r += _log_marginal_ratio(p) * off
    return Marginals(QubitOperator(k_a), QubitOperator(k_b), r, BellOperator(log_r, Basis.BELL))


def _xlogx(x: float) -> float:
    return float(-entr(max(x, 0.0)))


def natural_marginal_entropy(p: AnsatzParams) -> float:
    """h_e(1/2 + Y) using the stable 1/2 - Y."""
    return float(entr(0.5 + p.y) + entr(max(p.half_minus_y, 0.0)))


def lagrangian(spec: WernerSpec, p: AnsatzParams) -> float:
    """L = sum_+- (u/2 +- X) ln(u/2 +- X) + (d_v - 1) eps m1 ln(eps m1) + 2 h_e(1/2 + Y)."""
    value = _xlogx(p.lam_plus) + _xlogx(p.lam_minus)
    value += (spec.d_v - 1) * _xlogx(p.eps * spec.m1)
    return value + 2.0 * natural_marginal_entropy(p)


def lagrangian_terms(spec: WernerSpec, p: AnsatzParams) -> Tuple[float, float]:
    """(l_K, l_R) = (sum_alpha tr K ln K, sum_alpha tr K ln R)."""
    log_n = np.log(spec.n_alpha)
    l_k = _xlogx(p.lam_plus) + _xlogx(p.lam_minus) + (spec.d_v - 1) * _xlogx(p.eps * spec.m1) - log_n
    l_r = -log_n - 2.0 * natural_marginal_entropy(p)
    return l_k, l_r


def eps_weights(p: AnsatzParams) -> Tuple[float, float]:
    """(1/2 - k/2X, 1/2 + k/2X), the weights of ln(u/2 + X) and ln(u/2 - X)."""
    if p.x == 0.0:
        return 0.5, 0.5
    return 0.5 - 0.5 * p.k / p.x, 0.5 + 0.5 * p.k / p.x


def _weighted_log(weights: Tuple[float, float], p: AnsatzParams) -> float:
    total = 0.0
    for weight, value in zip(weights, (p.lam_plus, p.lam_minus)):
        if weight == 0.0:
            continue
        if value <= 0.0:
            return -np.inf
        total += weight * np.log(value)
    return total


def eps_residual(spec: WernerSpec, p: AnsatzParams) -> float:
    """ln(eps m1) - sum_+- (1/2 -+ k/2X) ln(u/2 +- X); identically zero when d_v = 1."""
    if spec.d_v == 1:
        return 0.0
    if p.eps * spec.m1 <= 0.0 or p.lam_minus <= 0.0:
        return np.inf
    return float(np.log(p.eps * spec.m1) - _weighted_log(eps_weights(p), p))


def q_residual(spec: WernerSpec, p: AnsatzParams) -> float:
    """(1/2X) ln((u/2 - X)/(u/2 + X)) - (1/Y) ln((1/2 - Y)/(1/2 + Y))."""
    if p.lam_minus <= 0.0 or p.half_minus_y <= 0.0:
        return np.inf
    return 0.5 * _scaled_log_ratio(p.x, 0.5 * p.u, p.lam_minus) - _scaled_log_ratio(p.y, 0.5, p.half_minus_y)


def lagrangian_gradient(spec: WernerSpec, p: AnsatzParams) -> Tuple[float, float]:
    """(dL/d eps, dL/dq) = ((d_v - 1) m1 r_eps, -2 sqrt(d_v) Y r_q)."""
    d_eps = (spec.d_v - 1) * spec.m1 * eps_residual(spec, p) if spec.d_v > 1 else 0.0
    d_q = -2.0 * np.sqrt(spec.d_v) * p.y * q_residual(spec, p) if p.y > 0.0 else 0.0
    return float(d_eps), float(d_q)


def pure_members(spec: WernerSpec) -> List[Tuple[float, NDArray]]:
    """(w_alpha, psi_alpha) with psi_alpha = (sqrt(m0), -i sqrt(m1) v^alpha) in the Bell basis."""
    return [
        (1.0 / spec.n_alpha, np.concatenate([[np.sqrt(spec.m0)], -1j * np.sqrt(spec.m1) * v]))
        for v in spec.vset
    ]


def _is_pure_min(spec: WernerSpec, p: AnsatzParams) -> bool:
    return abs(p.eps) <= PARAM_TOL and abs(p.q - np.sqrt(spec.m0 * spec.m1)) <= 1e-9


def _pure_delta_diagonal(spec: WernerSpec) -> NDArray:
    p = AnsatzParams.pure_min(spec)
    if p.half_minus_y <= 0.0:
        raise BoundaryError("m0 = 1/2: Y = 1/2 and the pure entanglement operator diverges")
    if spec.m0 == 1.0:
        l_f, l_over_f = 0.0, 4.0
    elif spec.m0 == 0.0:
        l_f, l_over_f = 4.0, 0.0
    else:
        f = np.sqrt((1.0 - spec.m0) / spec.m0)
        ratio = _log_marginal_ratio(p)
        l_f, l_over_f = ratio * f, ratio / f
    a = -(np.log(0.5 + p.y) + np.log(p.half_minus_y))
    return a + np.array([-l_f] + [-l_over_f] * spec.d_v + [0.0] * (3 - spec.d_v))


def _mixed_delta_diagonal(spec: WernerSpec, p: AnsatzParams) -> NDArray:
    if p.half_minus_y <= 0.0:
        raise BoundaryError(f"Y = {p.y} reaches 1/2")
    w_plus, w_minus = eps_weights(p)
    top = _weighted_log((1.0 - w_plus, 1.0 - w_minus), p)
    if spec.d_v == 1:
        lower = _weighted_log((w_plus, w_minus), p)
    elif p.eps * spec.m1 > 0.0:
        lower = float(np.log(p.eps * spec.m1))
    else:
        raise BoundaryError("eps = 0 with d_v > 1 is not a mixed stationary point")
    a = -(np.log(0.5 + p.y) + np.log(p.half_minus_y))
    return a + np.array([top] + [lower] * spec.d_v + [0.0] * (3 - spec.d_v))


def delta_operator(spec: WernerSpec, p: AnsatzParams, mode: str) -> BellOperator:
    """Delta = M + a, diagonal in the Bell basis and independent of alpha."""
    if mode == "pure":
        if not _is_pure_min(spec, p):
            raise DomainError("the pure entanglement operator needs q = sqrt(m0 m1), eps = 0")
        diagonal = _pure_delta_diagonal(spec)
    elif mode == "mixed":
        diagonal = _mixed_delta_diagonal(spec, p)
    else:
        raise DomainError(f"mode must be 'pure' or 'mixed', got {mode!r}")
    return BellOperator(np.diag(diagonal).astype(complex), Basis.BELL)


def member_delta(spec: WernerSpec, p: AnsatzParams, alpha: int) -> NDArray:
    """ln K^alpha - ln R^alpha on the support of rho."""
    return log_K(spec, p, alpha).entries - marginals_and_R(spec, p, alpha).log_r.entries


def _rho_support(spec: WernerSpec) -> slice:
    return slice(0, 1 + spec.d_v)


def delta_deviation(spec: WernerSpec, p: AnsatzParams, mode: str) -> float:
    """max over alpha of |Delta psi_alpha - (ln K - ln R) psi_alpha| (pure) or of the operator
    difference on the support of rho (mixed)."""
    delta = delta_operator(spec, p, mode).entries
    support = _rho_support(spec)
    worst = 0.0
    for alpha in range(spec.n_alpha):
        difference = delta - member_delta(spec, p, alpha)
        if mode == "pure":
            _, psi = pure_members(spec)[alpha]
            worst = max(worst, float(np.linalg.norm(difference @ psi)))
        else:
            worst = max(worst, float(np.max(np.abs(difference[support, support]))))
    return worst


def trace_identity_residual(spec: WernerSpec, p: AnsatzParams, mode: str) -> float:
    """|tr(rho Delta) - L|, where L = (2 ln 2) E at a stationary point."""
    delta = delta_operator(spec, p, mode).entries
    return float(abs(np.trace(np.diag(spec.weights()) @ delta).real - lagrangian(spec, p)))


@dataclass(frozen=True)
class InsensitivityReport:
    mode: str
    max_deviation: float
    insensitive: bool
    entanglement: float
    reference_eof: float

    @property
    def matches_reference(self) -> bool:
        return abs(self.entanglement - self.reference_eof) <= 1e-9


def orbit_insensitivity_check(spec: WernerSpec, p: AnsatzParams, mode: str) -> InsensitivityReport:
    """alpha-independence of Delta for this orbit, and its E next to the Bell-mixture reference."""
    from ..oracle import bell_mixture_eof

    deviation = delta_deviation(spec, p, mode)
    insensitive = deviation <= INSENSITIVITY_TOL
    if not insensitive:
        _logger.warning("orbit is alpha-sensitive in %s mode: deviation %.3e", mode, deviation)
    entanglement = lagrangian(spec, p) / (2.0 * np.log(2.0))
    reference = bell_mixture_eof(sorted(spec.weights(), reverse=True))
    return InsensitivityReport(mode, deviation, insensitive, entanglement, reference)


__all__ = [
    "AnsatzParams",
    "DecompositionMember",
    "InsensitivityReport",
    "Marginals",
    "ProjectorFamily",
    "WernerSpec",
    "ansatz_K",
    "decomposition_sum",
    "delta_deviation",
    "delta_operator",
    "eps_residual",
    "eps_weights",
    "lagrangian",
    "lagrangian_gradient",
    "lagrangian_terms",
    "log_K",
    "make_vset",
    "marginals_and_R",
    "orbit_insensitivity_check",
    "projector_family",
    "pure_members",
    "q_residual",
    "rotate_vset",
    "trace_identity_residual",
]
