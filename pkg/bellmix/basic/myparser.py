"""
a parser for the command-line values: complex numbers "re,im" and comma-separated weights.
"""

from typing import List, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import DomainError
from .log import setup_logger


class Parser:
    def __init__(self, separator: str = ",", logging_level=None):
        self._logger = setup_logger(
            filename=__file__,
            classname=self.__class__.__name__,
            level=logging_level,
        )
        self._separator = separator

    def _fields(self, text: str) -> List[str]:
        return [field.strip() for field in text.strip().split(self._separator)]

    def _float(self, field: str, text: str) -> float:
        try:
            value = float(field)
        except ValueError as exc:
            raise DomainError(f"{text!r}: {field!r} is not a number") from exc
        if not np.isfinite(value):
            raise DomainError(f"{text!r}: {field!r} is not finite")
        return value

    def parse_complex(self, text: str) -> complex:
        """
        parse "re,im" (a bare "re" means im = 0).

        Args:
            text (str): the raw command-line value

        Return:
            complex: re + i im
        """
        fields = self._fields(text)
        if len(fields) not in (1, 2) or not all(fields):
            raise DomainError(f"{text!r} is not of the form re,im")
        values = [self._float(field, text) for field in fields]
        self._logger.debug("parsed %r as %s", text, values)
        return complex(values[0], values[1] if len(values) == 2 else 0.0)

    def parse_complex_vector(self, texts: Sequence[str], size: int = 3) -> NDArray:
        if len(texts) != size:
            raise DomainError(f"expected {size} complex values, got {len(texts)}")
        return np.array([self.parse_complex(text) for text in texts], dtype=complex)

    def parse_weights(self, text: str) -> NDArray:
        """non-negative weights "m0,m1,..." summing to one."""
        fields = self._fields(text)
        if not all(fields):
            raise DomainError(f"{text!r} has an empty weight")
        weights = np.array([self._float(field, text) for field in fields])
        if np.any(weights < 0.0):
            raise DomainError(f"weights must be non-negative, got {weights}")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise DomainError(f"weights must sum to 1, got {weights.sum()}")
        return weights
