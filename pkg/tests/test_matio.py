"""Matrix text format: round-trips and parse errors."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specnorm.errors import ParseError
from specnorm.matio import format_matrix, parse_matrix, read_matrix, write_matrix

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=80, deadline=None)
@given(
    st.integers(1, 6),
    st.integers(1, 6),
    st.data(),
)
def test_round_trip_is_entrywise_identical(m, n, data):
    reals = data.draw(
        st.lists(finite, min_size=m * n, max_size=m * n), label="re"
    )
    imags = data.draw(
        st.lists(finite, min_size=m * n, max_size=m * n), label="im"
    )
    a = (np.array(reals) + 1j * np.array(imags)).reshape(m, n)
    back = parse_matrix(format_matrix(a))
    assert back.shape == a.shape
    assert np.array_equal(back, a)


def test_real_matrices_render_without_parens():
    text = format_matrix(np.array([[1.5, -2.0], [0.25, 3.0]]))
    assert "(" not in text
    assert text.splitlines()[0] == "2 2"
    back = parse_matrix(text)
    assert np.array_equal(back, np.array([[1.5, -2.0], [0.25, 3.0]]))


def test_parse_complex_entries_and_comments():
    text = "# leading comment\n2 2\n(1,2) 3.5\n-1 (0,-0.5)  # trailing\n"
    a = parse_matrix(text)
    assert a[0, 0] == 1 + 2j
    assert a[0, 1] == 3.5
    assert a[1, 0] == -1.0
    assert a[1, 1] == -0.5j


def test_parse_accepts_crlf():
    a = parse_matrix("2 2\r\n1 0\r\n0 1\r\n")
    assert np.array_equal(a, np.eye(2))


def test_parse_errors_identify_the_line():
    with pytest.raises(ParseError):
        parse_matrix("")
    with pytest.raises(ParseError, match="1"):
        parse_matrix("2\n1 0\n0 1\n")
    with pytest.raises(ParseError):
        parse_matrix("0 3\n")
    with pytest.raises(ParseError, match="3"):
        parse_matrix("2 2\n1 0\n0 bad\n")
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 0 0\n0 1\n")
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 0\n")
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 0\n0 1\n1 1\n")


def test_non_finite_entries_rejected():
    with pytest.raises(ParseError):
        parse_matrix("1 2\nnan 1\n")
    with pytest.raises(ParseError):
        parse_matrix("1 2\n1 inf\n")
    with pytest.raises(ParseError):
        parse_matrix("1 1\n(1,nan)\n")


def test_file_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    a = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    path = tmp_path / "mat.txt"
    write_matrix(path, a)
    assert np.array_equal(read_matrix(path), a)
