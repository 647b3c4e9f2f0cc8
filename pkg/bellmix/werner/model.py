"""
minimization models for the entanglement of a Werner state: pure and mixed.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..basic.bell_algebra import BellOperator
from ..basic.config import STATIONARITY_TOL
from ..basic.errors import BoundaryError, ConvergenceError
from ..basic.log import setup_logger
from .core import (
    AnsatzParams,
    WernerSpec,
    decomposition_sum,
    delta_deviation,
    delta_operator,
    lagrangian,
    q_residual,
    trace_identity_residual,
)
from .eq_solver import N_STARTS, MAX_ITER, residuals, solve_exact

LN2 = np.log(2.0)
SCAN_POINTS = 200


@dataclass(frozen=True)
class EntanglementReport:
    mode: str
    entanglement: float
    params: AnsatzParams
    delta: Optional[BellOperator]
    residuals: Dict[str, float] = field(default_factory=dict)
    converged: bool = True
    candidates: Tuple[Tuple[float, float], ...] = ()

    @property
    def lagrangian(self) -> float:
        return 2.0 * LN2 * self.entanglement


class Minimization:
    """A template for both minimizations of the Werner Lagrangian."""

    def __init__(self, logging_level=None):
        self._logger = setup_logger(
            filename=__file__,
            classname=self.__class__.__name__,
            level=logging_level,
        )
        self.MODE = ""
        self.spec: Optional[WernerSpec] = None
        self.params: Optional[AnsatzParams] = None

    def minimize(self, spec: WernerSpec) -> AnsatzParams:
        """placeholder method to be overridden by subclasses"""
        raise NotImplementedError("Subclass must implement this method")

    def stationarity(self, spec: WernerSpec, p: AnsatzParams) -> Dict[str, float]:
        return {}

    def report(self, spec: WernerSpec) -> EntanglementReport:
        self.spec = spec
        self.params = self.minimize(spec)
        p = self.params
        checks = {"closure": float(np.max(np.abs(decomposition_sum(spec, p) - np.diag(spec.weights()))))}
        checks.update(self.stationarity(spec, p))
        try:
            delta = delta_operator(spec, p, self.MODE)
        except BoundaryError as exc:
            self._logger.info("no entanglement operator: %s", exc)
            delta = None
        if delta is not None and not np.all(np.isfinite(delta.entries)):
            self._logger.info("entanglement operator diverges at q=%.6e eps=%.6e", p.q, p.eps)
            delta = None
        if delta is not None:
            checks["trace_identity"] = trace_identity_residual(spec, p, self.MODE)
            checks["insensitivity"] = delta_deviation(spec, p, self.MODE)
        entanglement = lagrangian(spec, p) / (2.0 * LN2)
        self._logger.info("%s E = %.12f at q=%.6e eps=%.6e", self.MODE, entanglement, p.q, p.eps)
        return EntanglementReport(self.MODE, entanglement, p, delta, checks, candidates=self._candidates())

    def _candidates(self) -> Tuple[Tuple[float, float], ...]:
        return ()

    def __str__(self):
        if not self.MODE:
            raise NotImplementedError("Subclass should set self.MODE attribute")
        return f"{self.MODE}"


class PureMinimization(Minimization):
    """Every member rank one: q = sqrt(m0 m1), eps = 0, E = h(1/2 + sqrt(m0 (1 - m0)))."""

    def __init__(self, logging_level=None):
        super().__init__(logging_level=logging_level)
        self.MODE = "pure"

    def minimize(self, spec: WernerSpec) -> AnsatzParams:
        return AnsatzParams.pure_min(spec)


class MixedMinimization(Minimization):
    """
    Members of any rank.

    For d_v = 1 the Lagrangian depends on Y alone; every stationary point on [0, Y_pure] is found by
    bracketing and the smallest Lagrangian among them and both endpoints wins. For d_v > 1 the
    two-equation system goes to the Newton solver.
    """

    def __init__(
        self,
        tol: float = STATIONARITY_TOL,
        max_iter: int = MAX_ITER,
        n_starts: int = N_STARTS,
        seed: int = 0,
        logging_level=None,
    ):
        """
        Args:
            tol (float): stationarity tolerance of the solver
            max_iter (int): Newton iterations per start
            n_starts (int): random starts when the approximate seed fails
            seed (int): seed of the random starts
        """
        super().__init__(logging_level=logging_level)
        self.MODE = "mixed"
        self.tol = tol
        self.max_iter = max_iter
        self.n_starts = n_starts
        self.seed = seed
        self.candidates: List[Tuple[float, float]] = []

    def _single_axis(self, spec: WernerSpec) -> AnsatzParams:
        """d_v = 1: rho = Y_pure^2 - Y runs over [0, Y_pure^2], eps plays no role."""
        rho_max = spec.y_pure**2

        def at(rho: float) -> AnsatzParams:
            return AnsatzParams.from_eps_rho(spec, 1.0, min(max(rho, 0.0), rho_max))

        points = [at(0.0), at(rho_max)]
        if rho_max > 0.0:
            grid = np.logspace(np.log10(rho_max) - 14.0, np.log10(rho_max), SCAN_POINTS)[:-1]
            values = np.array([q_residual(spec, at(rho)) for rho in grid])
            finite = np.isfinite(values)
            for i in np.nonzero(finite[:-1] & finite[1:] & (values[:-1] * values[1:] < 0))[0]:
                root = brentq(lambda r: q_residual(spec, at(r)), grid[i], grid[i + 1], xtol=1e-300, rtol=1e-15)
                points.append(at(root))
        self.candidates = [(p.y, lagrangian(spec, p)) for p in points]
        self._logger.debug("candidates (Y, L): %s", self.candidates)
        return min(points, key=lambda p: lagrangian(spec, p))

    def minimize(self, spec: WernerSpec) -> AnsatzParams:
        if spec.m1 == 0.0:
            return AnsatzParams.pure_min(spec)
        if spec.d_v == 1:
            return self._single_axis(spec)
        root = solve_exact(spec, tol=self.tol, max_iter=self.max_iter, n_starts=self.n_starts, seed=self.seed)
        if not root.converged:
            raise ConvergenceError(
                f"no stationary point found for m0={spec.m0} d_v={spec.d_v}",
                best=root,
                residual=root.residual_norm,
            )
        params = AnsatzParams.from_eps_rho(spec, root.eps, root.rho)
        pure = AnsatzParams.pure_min(spec)
        if lagrangian(spec, params) > lagrangian(spec, pure) + 1e-12:
            self._logger.warning("stationary point lies above the pure minimum for m0=%s", spec.m0)
        return params

    def stationarity(self, spec: WernerSpec, p: AnsatzParams) -> Dict[str, float]:
        r_eps, r_q = residuals(spec, p.eps, p.q)
        return {"stationarity_eps": abs(r_eps), "stationarity_q": abs(r_q)}

    def _candidates(self) -> Tuple[Tuple[float, float], ...]:
        return tuple(self.candidates)


def e_pure(spec: WernerSpec) -> EntanglementReport:
    return PureMinimization().report(spec)


def e_mixed(spec: WernerSpec, **kwargs) -> EntanglementReport:
    return MixedMinimization(**kwargs).report(spec)


MODELS = {"pure": PureMinimization, "mixed": MixedMinimization}
