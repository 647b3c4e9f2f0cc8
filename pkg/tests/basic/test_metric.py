import numpy as np
import pytest

from bellmix.basic.metric import Metric


@pytest.fixture
def hermitian():
    return np.array([[1.0, 2 - 1j], [2 + 1j, -3.0]])


@pytest.fixture
def stack(hermitian):
    skew = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    return np.stack([hermitian, hermitian + skew])


def test_max_abs_deviation_1():
    assert Metric.max_abs_deviation(np.array([1.0, 2.0]), np.array([1.0, 2.5])) == 0.5


def test_max_abs_deviation_2():
    assert Metric.max_abs_deviation(np.zeros(0), np.zeros(0)) == 0.0


def test_max_abs_deviation_broadcast():
    assert Metric.max_abs_deviation(np.eye(2), 0.0) == 1.0


def test_hermiticity_residual_1(hermitian):
    assert Metric.hermiticity_residual(hermitian) == 0.0


def test_hermiticity_residual_stack(stack):
    residual = Metric.hermiticity_residual(stack)
    assert residual.shape == (2,)
    assert residual[0] == 0.0
    assert residual[1] == 1.0


def test_offdiag_norm_1(hermitian):
    assert Metric.offdiag_norm(hermitian) == pytest.approx(np.sqrt(10.0))


def test_offdiag_norm_diagonal():
    assert Metric.offdiag_norm(np.diag([1.0, 2.0, 3.0])) == 0.0


def test_offdiag_norm_small_coupling():
    matrix = np.array([[1.0, 1e-12], [1e-12, 1.0]])
    assert Metric.offdiag_norm(matrix) == pytest.approx(np.sqrt(2.0) * 1e-12, rel=1e-12)
