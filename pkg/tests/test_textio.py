import numpy as np
import pytest

from thompson_schatten import errors
from thompson_schatten.textio import format_matrix, parse_matrix, read_matrix, write_matrix

from conftest import random_sym


def test_parse_with_comments():
    text = "# a comment\n2\n1 0.5\n# inline\n0.5 2\n"
    np.testing.assert_array_equal(parse_matrix(text), [[1.0, 0.5], [0.5, 2.0]])


def test_general_matrix_not_symmetrized():
    a = parse_matrix("2\n1 2\n3 4\n", symmetric=False)
    np.testing.assert_array_equal(a, [[1, 2], [3, 4]])


@pytest.mark.parametrize(
    "text",
    ["", "x\n1\n", "2\n1 2\n", "2\n1 2 3\n4 5 6\n", "1\nfoo\n", "2\n1 2\n3 4\n", "1\nnan\n", "0\n"],
)
def test_parse_errors(text):
    with pytest.raises(errors.ParseError):
        parse_matrix(text)


def test_round_trip_exact(rng, tmp_path):
    for n in (1, 3, 8):
        a = random_sym(rng, n) * 10.0 ** rng.uniform(-5, 5)
        path = tmp_path / f"m{n}.txt"
        write_matrix(path, a, comments=["round trip"])
        np.testing.assert_array_equal(read_matrix(path), a)


def test_seventeen_digits():
    text = format_matrix([[1.0 / 3.0]])
    assert text.splitlines()[-1] == "0.33333333333333331"
