"""
parameter grids behind the figures: L versus Y, f(rho), the preconcurrence surface and E versus m0.
"""

import sys
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..basic.errors import BellmixError, ConvergenceError, DomainError
from ..basic.log import setup_logger
from ..basic.preconcurrence import surface_grid
from ..oracle import bell_mixture_eof
from .core import AnsatzParams, WernerSpec, lagrangian
from .eq_solver import f_rho, rho_upper
from .model import LN2, MixedMinimization

DEFAULT_RESOLUTION = 200
RHO_DECADES = 12


def progress_enabled(quiet: bool = False) -> bool:
    """bars only on an interactive stderr."""
    return not quiet and sys.stderr.isatty()


class GridScan:
    """a pipeline that evaluates one row per grid point and collects the rows in a DataFrame."""

    def __init__(
        self,
        evaluator: Callable[[float], Dict[str, float]],
        axis: str,
        progress: bool = False,
        logging_level: Optional[str] = None,
    ):
        """
        Args:
            evaluator: maps an axis value to the remaining columns of its row
            axis (str): name of the axis column
            progress (bool): show a tqdm bar on stderr
            logging_level (str): logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        self._logger = setup_logger(
            filename=__file__,
            classname=self.__class__.__name__,
            level=logging_level,
        )
        self.evaluator = evaluator
        self.axis = axis
        self.progress = progress
        self.frame: Optional[pd.DataFrame] = None
        self._is_built = False

    def build(self, points: Iterable[float], desc: str = "Scanning") -> pd.DataFrame:
        """
        evaluate every point; rows keep the order of `points`.

        Args:
            points: monotone axis values
            desc (str): label of the progress bar
        """
        points = np.asarray(list(points), dtype=float)
        self._logger.info("building %d rows along %s", len(points), self.axis)
        rows: List[Dict[str, float]] = []
        for point in tqdm(points, desc=desc, ncols=90, disable=not self.progress, file=sys.stderr):
            row = {self.axis: float(point)}
            row.update(self.evaluator(float(point)))
            rows.append(row)
        self.frame = pd.DataFrame(rows)
        self._is_built = True
        self._logger.info("grid built with columns %s", list(self.frame.columns))
        return self.frame

    def _built(self) -> pd.DataFrame:
        if not self._is_built or self.frame is None:
            raise BellmixError("the grid is not built yet, call build() first")
        return self.frame

    def argmin(self, column: str) -> float:
        """axis value at the smallest finite entry of `column`."""
        frame = self._built()
        return float(frame.loc[frame[column].idxmin(), self.axis])

    def minimum(self, column: str) -> float:
        return float(self._built()[column].min())

    def sign_changes(self, column: str) -> List[float]:
        """axis values just before each strict sign change of `column`."""
        frame = self._built()
        signs = np.sign(frame[column].to_numpy())
        changes = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        return [float(frame[self.axis].iloc[i]) for i in changes]


def lagrangian_vs_y(
    m0: float,
    d_v: int,
    resolution: int = DEFAULT_RESOLUTION,
    eps: float = 0.0,
    progress: bool = False,
) -> pd.DataFrame:
    """L and E = L / (2 ln 2) at fixed eps for Y from 0 to sqrt(m0 m1 eta)."""
    spec = WernerSpec(m0, d_v)
    if resolution < 2:
        raise DomainError(f"resolution must be at least 2, got {resolution}")
    eta = d_v - eps * (d_v - 1)
    y_max = float(np.sqrt(spec.m0 * spec.m1 * eta))

    def evaluate(y: float) -> Dict[str, float]:
        p = AnsatzParams.from_eps_rho(spec, eps, max(y_max * y_max - y * y, 0.0))
        value = lagrangian(spec, p)
        return {"lagrangian": value, "entanglement": value / (2.0 * LN2)}

    scan = GridScan(evaluate, axis="Y", progress=progress)
    return scan.build(np.linspace(0.0, y_max, resolution), desc="L versus Y")


def f_rho_curve(m0: float, d_v: int, resolution: int = DEFAULT_RESOLUTION, progress: bool = False) -> pd.DataFrame:
    """f on rho = 0 followed by a log grid reaching m0 (1 - m0)."""
    spec = WernerSpec(m0, d_v)
    if not 0.0 < spec.m0 < 1.0:
        raise DomainError(f"f(rho) needs 0 < m0 < 1, got {spec.m0}")
    if resolution < 2:
        raise DomainError(f"resolution must be at least 2, got {resolution}")
    top = np.log10(rho_upper(spec))
    rhos = np.concatenate([[0.0], np.logspace(top - RHO_DECADES, top, resolution - 1)])
    scan = GridScan(lambda rho: {"f": f_rho(spec, rho)}, axis="rho", progress=progress)
    return scan.build(rhos, desc="f(rho)")


def preconcurrence_surface(m: Sequence[float], resolution: int = 400) -> pd.DataFrame:
    """C(theta1, theta2) in long format, theta1 major."""
    theta1, theta2, surface = surface_grid(m, resolution)
    grid1, grid2 = np.meshgrid(theta1, theta2, indexing="ij")
    return pd.DataFrame({"theta1": grid1.ravel(), "theta2": grid2.ravel(), "concurrence": surface.ravel()})


def reference_eof(spec: WernerSpec) -> float:
    return bell_mixture_eof(np.sort(spec.weights())[::-1])


def entanglement_vs_m0(d_v: int, m0s: Iterable[float], progress: bool = False, **mixed_kwargs) -> pd.DataFrame:
    """E_pure, E_mixed and the Bell-mixture reference along m0; E_mixed is NaN where the solver fails."""
    logger = setup_logger(filename=__file__, classname="entanglement_vs_m0")
    minimization = MixedMinimization(**mixed_kwargs)

    def evaluate(m0: float) -> Dict[str, float]:
        spec = WernerSpec(m0, d_v)
        e_pure = lagrangian(spec, AnsatzParams.pure_min(spec)) / (2.0 * LN2)
        try:
            e_mixed = lagrangian(spec, minimization.minimize(spec)) / (2.0 * LN2)
        except (ConvergenceError, DomainError) as exc:
            logger.warning("no mixed minimum at m0=%s: %s", m0, exc)
            e_mixed = float("nan")
        return {"e_pure": e_pure, "e_mixed": e_mixed, "reference_eof": reference_eof(spec)}

    scan = GridScan(evaluate, axis="m0", progress=progress)
    return scan.build(m0s, desc="E versus m0")
