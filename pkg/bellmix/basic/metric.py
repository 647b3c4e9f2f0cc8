import numpy as np
from numpy.typing import NDArray


class Metric:
    def __init__(self):
        """distances used to compare closed forms with their dense references."""

    @staticmethod
    def max_abs_deviation(left: NDArray, right: NDArray) -> float:
        """
        largest entrywise difference, max |L - R|.

        Args:
            left (NDArray): any array
            right (NDArray): an array broadcastable against `left`
        """
        difference = np.abs(np.asarray(left) - np.asarray(right))
        return float(np.max(difference)) if difference.size else 0.0

    @staticmethod
    def hermiticity_residual(matrix: NDArray) -> NDArray:
        """
        max |H - H^dagger| per matrix; works on a stack of shape (..., n, n).
        """
        matrix = np.asarray(matrix)
        return np.max(np.abs(matrix - np.conj(np.swapaxes(matrix, -1, -2))), axis=(-2, -1))

    @staticmethod
    def offdiag_norm(matrix: NDArray) -> NDArray:
        """
        Frobenius norm of the off-diagonal part, per matrix of a stack.
        off = sqrt(sum_{i != j} |a_ij|^2)
        """
        matrix = np.asarray(matrix)
        mask = 1.0 - np.eye(matrix.shape[-1])
        return np.sqrt(np.sum(np.abs(matrix * mask) ** 2, axis=(-2, -1)))
