"""Exact rational algebra for the type-A_n Cartan matrix and its inverse.

The matrix A is tridiagonal with 2 on the diagonal and -1 off it; the
inverse has the closed form A^{-1}[i][j] = j(n+1-i)/(n+1) for i >= j
(1-based), extended by symmetry.  Everything here is exact Fraction
arithmetic; floats appear only at the boundary (to_upper / to_lower).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = ["CartanData", "cartan_matrix", "row_sum_check", "to_upper", "to_lower"]


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix A and its exact inverse for SU(n+1)."""

    n: int
    a: tuple[tuple[Fraction, ...], ...]
    a_inv: tuple[tuple[Fraction, ...], ...]

    def a_float(self) -> np.ndarray:
        return np.array(self.a, dtype=float)

    def a_inv_float(self) -> np.ndarray:
        return np.array(self.a_inv, dtype=float)


def cartan_matrix(n: int) -> CartanData:
    """Build A and A^{-1} exactly; raises ValueError for n < 1."""
    if n < 1:
        raise ValueError(f"invalid Cartan dimension n={n}")
    a = tuple(
        tuple(Fraction(2 if i == j else (-1 if abs(i - j) == 1 else 0)) for j in range(n))
        for i in range(n)
    )

    def inv_entry(i: int, j: int) -> Fraction:
        # 1-based closed form, i >= j; symmetric otherwise.
        if i < j:
            i, j = j, i
        return Fraction(j * (n + 1 - i), n + 1)

    a_inv = tuple(
        tuple(inv_entry(i + 1, j + 1) for j in range(n)) for i in range(n)
    )
    # A * A^{-1} must be the identity exactly.
    for i in range(n):
        for j in range(n):
            s = sum(a[i][k] * a_inv[k][j] for k in range(n))
            if s != (1 if i == j else 0):
                raise AssertionError(f"A*A^-1 != I at ({i},{j}): {s}")
    return CartanData(n=n, a=a, a_inv=a_inv)


def row_sum_check(n: int, i: int) -> Fraction:
    """4 * sum_j A^{-1}[i][j] (1-based i); equals 2i(n+1-i) exactly."""
    cd = cartan_matrix(n)
    if not 1 <= i <= n:
        raise IndexError(f"row index {i} out of range 1..{n}")
    return 4 * sum(cd.a_inv[i - 1])


def to_upper(u, cd: CartanData) -> np.ndarray:
    """Lower-index components to upper: A^{-1} u."""
    u = np.asarray(u, dtype=float)
    if u.shape[0] != cd.n:
        raise ValueError(f"expected length {cd.n}, got {u.shape[0]}")
    return cd.a_inv_float() @ u


def to_lower(v, cd: CartanData) -> np.ndarray:
    """Upper-index components to lower: A v."""
    v = np.asarray(v, dtype=float)
    if v.shape[0] != cd.n:
        raise ValueError(f"expected length {cd.n}, got {v.shape[0]}")
    return cd.a_float() @ v
