"""
named tolerances shared by the library; BELLMIX_TOL overrides the default one.
"""

import os

from .errors import DomainError

ALGEBRA_TOL = 1e-13
HERMITIAN_TOL = 1e-12
STATIONARITY_TOL = 1e-10
INSENSITIVITY_TOL = 1e-8
DEFAULT_TOL = 1e-10

ENV_TOL = "BELLMIX_TOL"


def get_tolerance() -> float:
    """global float tolerance, read from the environment on every call."""
    raw = os.environ.get(ENV_TOL)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise DomainError(f"{ENV_TOL}={raw!r} is not a float") from exc
    if not value > 0:
        raise DomainError(f"{ENV_TOL} must be positive, got {value}")
    return value
