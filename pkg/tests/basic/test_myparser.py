import numpy as np
import pytest

from bellmix.basic.errors import DomainError
from bellmix.basic.myparser import Parser


@pytest.fixture
def parser_default():
    return Parser()


def test_parse_complex_1(parser_default):
    assert parser_default.parse_complex("0.5,-1") == complex(0.5, -1.0)


def test_parse_complex_2(parser_default):
    assert parser_default.parse_complex(" 2 , 3 ") == complex(2.0, 3.0)


def test_parse_complex_real_only(parser_default):
    assert parser_default.parse_complex("0.7071") == complex(0.7071, 0.0)


@pytest.mark.parametrize("text", ["", "1,2,3", "a,1", "1,", "nan,0", "inf,1"])
def test_parse_complex_malformed(parser_default, text):
    with pytest.raises(DomainError):
        parser_default.parse_complex(text)


def test_parse_complex_vector(parser_default):
    vector = parser_default.parse_complex_vector(["0,0", "0,0.7071", "1,0"])
    np.testing.assert_array_equal(vector, np.array([0, 0.7071j, 1]))


def test_parse_complex_vector_wrong_size(parser_default):
    with pytest.raises(DomainError):
        parser_default.parse_complex_vector(["0,0", "1,0"])


def test_parse_weights_1(parser_default):
    np.testing.assert_allclose(parser_default.parse_weights("0.6,0.2,0.2"), [0.6, 0.2, 0.2])


@pytest.mark.parametrize("text", ["0.6,0.2", "0.6,-0.1,0.5", "0.5,,0.5", "x,1"])
def test_parse_weights_invalid(parser_default, text):
    with pytest.raises(DomainError):
        parser_default.parse_weights(text)


def test_custom_separator():
    parser = Parser(separator=";")
    assert parser.parse_complex("1;2") == complex(1.0, 2.0)
