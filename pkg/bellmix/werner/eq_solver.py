"""
the two stationarity equations of the mixed minimization (d_v > 1): their residuals, a damped Newton
solver in (ln eps, ln rho), and the small-rho approximation f(rho) that seeds it.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from ..basic.config import STATIONARITY_TOL
from ..basic.errors import DomainError
from ..basic.log import setup_logger
from .core import AnsatzParams, WernerSpec, eps_residual, eps_weights, lagrangian, q_residual

MAX_ITER = 200
MAX_HALVINGS = 30
N_STARTS = 8
Q_MIN = 1e-8
RHO_FLOOR = 1e-12
BRACKET_POINTS = 64
JACOBIAN_STEP = 1e-7

_logger = setup_logger(filename=__file__, classname="eq_solver")


class RootKind(Enum):
    TRIVIAL = "trivial"
    PHYSICAL = "physical"
    APPROXIMATE = "approximate"
    UNCONVERGED = "unconverged"


@dataclass(frozen=True)
class EqSystemRoot:
    eps: float
    q: float
    rho: float
    residuals: Tuple[float, float]
    kind: RootKind
    converged: bool
    near_pure: bool
    iterations: int = 0

    @property
    def residual_norm(self) -> float:
        return float(max(abs(r) for r in self.residuals))


@dataclass(frozen=True)
class RhoApprox:
    rho: float
    eps: float
    q: float
    self_consistency: Dict[str, float] = field(default_factory=dict)

    def f_residual(self, spec: WernerSpec) -> float:
        return abs(f_rho(spec, self.rho))

    def as_root(self, spec: WernerSpec) -> EqSystemRoot:
        """the approximate point with its residuals in the exact system."""
        return EqSystemRoot(
            self.eps, self.q, self.rho, residuals(spec, self.eps, self.q), RootKind.APPROXIMATE, False, True
        )


def _params(spec: WernerSpec, eps: float, q: float) -> Optional[AnsatzParams]:
    try:
        return AnsatzParams.from_q_eps(spec, q, eps)
    except DomainError:
        return None


def residuals(spec: WernerSpec, eps: float, q: float) -> Tuple[float, float]:
    """(r_eps, Y r_q): the stationarity equations up to the factors (d_v - 1) m1 and -2 sqrt(d_v).

    Both vanish at the trivial root (eps, q) = (1, 0); points outside the valid region, or where a
    logarithm diverges, give infinite residuals.
    """
    p = _params(spec, eps, q)
    if p is None:
        return np.inf, np.inf
    r_eps = eps_residual(spec, p)
    r_q = p.y * q_residual(spec, p) if p.y > 0.0 else 0.0
    return float(r_eps), float(r_q)


def power_residuals(spec: WernerSpec, eps: float, q: float) -> Tuple[float, float]:
    """the exponentiated system.

    eps m1 = (u/2 + X)^(1/2 - k/2X) (u/2 - X)^(1/2 + k/2X) and
    ((u/2 - X)/(u/2 + X))^Y = ((1/2 - Y)/(1/2 + Y))^(2X), as left minus right.
    """
    p = _params(spec, eps, q)
    if p is None:
        return np.inf, np.inf
    if spec.d_v == 1:
        first = 0.0
    else:
        w_plus, w_minus = eps_weights(p)
        first = p.eps * spec.m1 - p.lam_plus**w_plus * p.lam_minus**w_minus
    second = (p.lam_minus / p.lam_plus) ** p.y - (p.half_minus_y / (0.5 + p.y)) ** (2.0 * p.x)
    return float(first), float(second)


def _log_residuals(spec: WernerSpec, z: NDArray) -> NDArray:
    """(r_eps, r_q) at (eps, rho) = exp(z); r_q does not vanish at the trivial root."""
    try:
        p = AnsatzParams.from_eps_rho(spec, float(np.exp(z[0])), float(np.exp(z[1])))
    except DomainError:
        return np.array([np.inf, np.inf])
    return np.array([eps_residual(spec, p), q_residual(spec, p)])


def _norm(values: NDArray) -> float:
    return float(np.max(np.abs(values))) if np.all(np.isfinite(values)) else np.inf


def _jacobian(spec: WernerSpec, z: NDArray, value: NDArray) -> NDArray:
    jacobian = np.zeros((2, 2))
    for j in range(2):
        step = np.zeros(2)
        step[j] = JACOBIAN_STEP * max(1.0, abs(z[j]))
        forward = _log_residuals(spec, z + step)
        if np.all(np.isfinite(forward)):
            jacobian[:, j] = (forward - value) / step[j]
        else:
            jacobian[:, j] = (value - _log_residuals(spec, z - step)) / step[j]
    return jacobian


def _newton(spec: WernerSpec, z: NDArray, tol: float, max_iter: int) -> Tuple[NDArray, float, bool, int]:
    value = _log_residuals(spec, z)
    norm = _norm(value)
    iteration = 0
    for iteration in range(max_iter):
        if norm <= tol:
            return z, norm, True, iteration
        jacobian = _jacobian(spec, z, value)
        if not np.all(np.isfinite(jacobian)):
            break
        direction, *_ = np.linalg.lstsq(jacobian, -value, rcond=None)
        scale = 1.0
        for _ in range(MAX_HALVINGS):
            trial = z + scale * direction
            trial_value = _log_residuals(spec, trial)
            trial_norm = _norm(trial_value)
            if trial_norm < norm:
                z, value, norm = trial, trial_value, trial_norm
                break
            scale *= 0.5
        else:
            _logger.debug("newton stalled at %s with residual %.3e", np.exp(z), norm)
            break
        _logger.debug("iteration %d: eps=%.6e rho=%.6e residual=%.3e", iteration, *np.exp(z), norm)
    return z, norm, norm <= tol, iteration + 1


def _root_from(spec: WernerSpec, z: NDArray, converged: bool, near_pure: bool, iterations: int) -> EqSystemRoot:
    eps, rho = float(np.exp(z[0])), float(np.exp(z[1]))
    try:
        p = AnsatzParams.from_eps_rho(spec, eps, rho)
    except DomainError:
        return EqSystemRoot(eps, 0.0, rho, (np.inf, np.inf), RootKind.UNCONVERGED, False, near_pure, iterations)
    if not converged:
        kind = RootKind.UNCONVERGED
    else:
        kind = RootKind.PHYSICAL if p.q > Q_MIN else RootKind.TRIVIAL
    return EqSystemRoot(eps, p.q, rho, residuals(spec, eps, p.q), kind, converged, near_pure, iterations)


def _rho_max(spec: WernerSpec, eps: float) -> float:
    return spec.m0 * spec.m1 * (spec.d_v - eps * (spec.d_v - 1))


def solve_exact(
    spec: WernerSpec,
    tol: float = STATIONARITY_TOL,
    max_iter: int = MAX_ITER,
    n_starts: int = N_STARTS,
    seed: int = 0,
) -> EqSystemRoot:
    """physical root of the stationarity system, seeded from `solve_approx`.

    When the approximate root does not exist or Newton fails from it, `n_starts` random interior
    starts are tried; the result then has near_pure = False. A non-converged result carries the best
    iterate found.
    """
    if spec.d_v == 1:
        raise DomainError("d_v = 1 has a single stationarity equation; use the one-dimensional branch")
    if not 0.0 < spec.m0 < 1.0:
        raise DomainError(f"the stationarity system needs 0 < m0 < 1, got {spec.m0}")

    best: Optional[EqSystemRoot] = None
    approx = solve_approx(spec)
    if approx is not None and approx.eps > 0.0 and 0.0 < approx.rho < _rho_max(spec, approx.eps):
        start = np.log([approx.eps, approx.rho])
        z, norm, converged, iterations = _newton(spec, start, tol, max_iter)
        root = _root_from(spec, z, converged, True, iterations)
        if converged and root.kind is RootKind.PHYSICAL:
            _logger.info("near-pure root eps=%.6e q=%.6e after %d iterations", root.eps, root.q, iterations)
            return root
        best = root
        _logger.info("newton from the approximate root failed (residual %.3e); trying random starts", norm)
    else:
        _logger.info("no approximate root for m0=%s d_v=%s; trying random starts", spec.m0, spec.d_v)

    rng = np.random.default_rng(seed)
    found: List[EqSystemRoot] = []
    for _ in range(n_starts):
        eps = 10.0 ** rng.uniform(-4.0, 0.0)
        rho = _rho_max(spec, eps) * 10.0 ** rng.uniform(-8.0, -0.01)
        z, norm, converged, iterations = _newton(spec, np.log([eps, rho]), tol, max_iter)
        root = _root_from(spec, z, converged, False, iterations)
        if converged and root.kind is RootKind.PHYSICAL:
            found.append(root)
        elif best is None or root.residual_norm < best.residual_norm:
            best = root
    if found:
        return min(found, key=lambda r: lagrangian(spec, AnsatzParams.from_eps_rho(spec, r.eps, r.rho)))
    _logger.warning("no physical root found for m0=%s d_v=%s", spec.m0, spec.d_v)
    return best


def _y0(spec: WernerSpec) -> float:
    return float(np.sqrt(spec.m0 * (1.0 - spec.m0)))


def f_rho(spec: WernerSpec, rho: float) -> float:
    """f(rho) = -rho + Y0^2 [1 - rho^m0 (d_v - 1)/(1 - m0)] - [1/2 - rho^Y0 (1/2 + Y0)]^2."""
    if rho < 0.0:
        raise DomainError(f"rho must be non-negative, got {rho}")
    if spec.m0 >= 1.0:
        raise DomainError("f(rho) is undefined at m0 = 1")
    y0 = _y0(spec)
    power = rho**spec.m0 if rho > 0.0 else 0.0
    shrink = rho**y0 if rho > 0.0 else float(y0 == 0.0)
    first = y0 * y0 - spec.m0 * (spec.d_v - 1) * power
    return float(-rho + first - (0.5 - shrink * (0.5 + y0)) ** 2)


def f_rho_derivative_limits(spec: WernerSpec, rho: float) -> Tuple[float, float]:
    """small-rho approximations of f' and f'', valid for m0 close to 1/2."""
    if rho <= 0.0:
        raise DomainError(f"the derivative limits need rho > 0, got {rho}")
    delta_m = spec.m0 - 0.5
    scaled = rho**delta_m
    first = (-0.25 * (spec.d_v - 1) * scaled + 0.5) / np.sqrt(rho)
    second = (-0.25 * (spec.d_v - 1) * (delta_m - 0.5) * scaled - 0.25) / rho**1.5
    return float(first), float(second)


def scan_f_rho(spec: WernerSpec, rhos: NDArray) -> NDArray:
    return np.array([f_rho(spec, float(rho)) for rho in np.asarray(rhos, dtype=float)])


def rho_upper(spec: WernerSpec) -> float:
    """m0 m1 d_v = m0 (1 - m0), the largest rho at eps = 0."""
    return spec.m0 * spec.m1 * spec.d_v


def eps_q_from_rho(spec: WernerSpec, rho: float) -> Tuple[float, float]:
    """eps = rho^m0 d_v/(1 - m0) and q = [1/2 - rho^Y0 (1/2 + Y0)]/sqrt(d_v)."""
    y0 = _y0(spec)
    eps = rho**spec.m0 * spec.d_v / (1.0 - spec.m0)
    q = (0.5 - rho**y0 * (0.5 + y0)) / np.sqrt(spec.d_v)
    return float(eps), float(q)


def self_consistency(spec: WernerSpec, eps: float, q: float) -> Dict[str, float]:
    """|u - 1|, |k - k0|, |X - 1/2|, |Y - Y0| at (eps, q)."""
    eta = spec.d_v - eps * (spec.d_v - 1)
    u = spec.m0 + eta * spec.m1
    k = 0.5 * (spec.m0 - eta * spec.m1)
    y = abs(q) * np.sqrt(spec.d_v)
    x = np.sqrt(k * k + y * y)
    return {
        "u": float(abs(u - 1.0)),
        "k": float(abs(k - (spec.m0 - 0.5))),
        "X": float(abs(x - 0.5)),
        "Y": float(abs(y - _y0(spec))),
    }


def solve_approx(spec: WernerSpec) -> Optional[RhoApprox]:
    """first root of f on a log-spaced rho grid up to m0 (1 - m0), or None when f keeps its sign."""
    if spec.d_v == 1:
        raise DomainError("the small-rho approximation is for d_v > 1")
    if not 0.0 < spec.m0 < 1.0:
        raise DomainError(f"the small-rho approximation needs 0 < m0 < 1, got {spec.m0}")
    grid = np.logspace(np.log10(RHO_FLOOR), np.log10(rho_upper(spec)), BRACKET_POINTS)
    values = scan_f_rho(spec, grid)
    signs = np.sign(values)
    changes = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if changes.size == 0:
        _logger.info("f(rho) has no sign change for m0=%s d_v=%s", spec.m0, spec.d_v)
        return None
    i = int(changes[0])
    rho = brentq(lambda r: f_rho(spec, r), grid[i], grid[i + 1], xtol=1e-300, rtol=1e-15)
    eps, q = eps_q_from_rho(spec, rho)
    return RhoApprox(rho=float(rho), eps=eps, q=q, self_consistency=self_consistency(spec, eps, q))
