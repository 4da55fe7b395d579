"""Exact Cartan matrix algebra."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from todalab.cartan import cartan_matrix, row_sum_check, to_lower, to_upper


@pytest.mark.parametrize("n", range(1, 9))
def test_inverse_is_exact(n):
    cd = cartan_matrix(n)
    for i in range(n):
        for j in range(n):
            s = sum(cd.a[i][k] * cd.a_inv[k][j] for k in range(n))
            assert s == (1 if i == j else 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_tridiagonal_structure(n):
    cd = cartan_matrix(n)
    for i in range(n):
        for j in range(n):
            if i == j:
                assert cd.a[i][j] == 2
            elif abs(i - j) == 1:
                assert cd.a[i][j] == -1
            else:
                assert cd.a[i][j] == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_inverse_closed_form_and_symmetry(n):
    cd = cartan_matrix(n)
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            assert cd.a_inv[i - 1][j - 1] == Fraction(j * (n + 1 - i), n + 1)
            assert cd.a_inv[i - 1][j - 1] == cd.a_inv[j - 1][i - 1]


@pytest.mark.parametrize("n", range(1, 9))
def test_row_sum_closed_form(n):
    # 4 * sum_j A^{-1}[i][j] = 2i(n+1-i): the quantized mass over 2 pi.
    for i in range(1, n + 1):
        assert row_sum_check(n, i) == 2 * i * (n + 1 - i)


def test_invalid_n_rejected():
    with pytest.raises(ValueError):
        cartan_matrix(0)
    with pytest.raises(IndexError):
        row_sum_check(3, 4)


@given(
    n=st.integers(min_value=1, max_value=6),
    data=st.data(),
)
def test_upper_lower_roundtrip(n, data):
    cd = cartan_matrix(n)
    u = np.array(
        data.draw(
            st.lists(
                st.floats(min_value=-10, max_value=10, allow_nan=False),
                min_size=n,
                max_size=n,
            )
        )
    )
    back = to_lower(to_upper(u, cd), cd)
    assert np.allclose(back, u, atol=1e-9)


def test_shape_mismatch_rejected():
    cd = cartan_matrix(3)
    with pytest.raises(ValueError):
        to_upper([1.0, 2.0], cd)
    with pytest.raises(ValueError):
        to_lower([1.0, 2.0, 3.0, 4.0], cd)
