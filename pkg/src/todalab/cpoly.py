"""Dense complex polynomials with exact differentiation.

Degrees stay small (at most the system size n), so a dense coefficient
tuple is the whole representation.  Evaluation is vectorized over numpy
arrays; `log_abs_eval` evaluates log|p(z)| in a form that stays accurate
and overflow-free for |z| up to ~1e3 and degrees up to ~100 by switching
to the reversed polynomial in 1/z outside the unit disk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ComplexPoly",
    "monic_from_coeffs",
    "derivative",
    "eval_poly",
    "log_abs_eval",
    "leading_terms",
    "poly_det",
]


@dataclass(frozen=True)
class ComplexPoly:
    """coeffs[k] is the coefficient of z^k; highest index nonzero unless zero poly."""

    coeffs: tuple[complex, ...]

    @staticmethod
    def from_coeffs(seq) -> "ComplexPoly":
        c = [complex(x) for x in seq]
        while c and c[-1] == 0:
            c.pop()
        return ComplexPoly(tuple(c))

    @property
    def degree(self) -> int:
        """Highest nonzero index; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] += v
        return ComplexPoly.from_coeffs(out)

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        return self + other.scale(-1)

    def __mul__(self, other: "ComplexPoly") -> "ComplexPoly":
        if self.is_zero() or other.is_zero():
            return ComplexPoly(())
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ComplexPoly.from_coeffs(out)

    def scale(self, s: complex) -> "ComplexPoly":
        return ComplexPoly.from_coeffs(s * c for c in self.coeffs)

    def __call__(self, z):
        return eval_poly(self, z)


def monic_from_coeffs(i: int, c) -> ComplexPoly:
    """Monic degree-i polynomial z^i + sum_{j<i} c_{ij} z^j.

    `c` maps either j or (i, j) to the coefficient; missing entries are 0.
    """
    if i < 1:
        raise ValueError(f"degree must be >= 1, got {i}")
    coeffs = [0j] * i + [1 + 0j]
    for key, val in c.items():
        j = key[1] if isinstance(key, tuple) else key
        if isinstance(key, tuple) and key[0] != i:
            raise ValueError(f"coefficient index {key} does not match degree {i}")
        if not 0 <= j < i:
            raise ValueError(f"coefficient index j={j} invalid for degree {i}")
        coeffs[j] = complex(val)
    return ComplexPoly(tuple(coeffs))


def derivative(p: ComplexPoly, order: int = 1) -> ComplexPoly:
    """Exact order-th derivative; order past the degree gives the zero polynomial."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = p.coeffs
    for _ in range(order):
        if len(coeffs) <= 1:
            return ComplexPoly(())
        coeffs = tuple(k * coeffs[k] for k in range(1, len(coeffs)))
    return ComplexPoly.from_coeffs(coeffs)


def eval_poly(p: ComplexPoly, z):
    """Horner evaluation; z may be a scalar or ndarray."""
    if p.is_zero():
        return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0j
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, p.coeffs[-1], dtype=complex)
    for c in reversed(p.coeffs[:-1]):
        acc = acc * z + c
    return acc if acc.shape else complex(acc)


def log_abs_eval(p: ComplexPoly, z):
    """log|p(z)|, stable for large |z| via the reversed polynomial in 1/z."""
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    z = np.atleast_1d(z)
    out = np.full(z.shape, -np.inf)
    if not p.is_zero():
        d = p.degree
        inner = np.abs(z) <= 1.0
        if inner.any():
            with np.errstate(divide="ignore"):
                out[inner] = np.log(np.abs(eval_poly(p, z[inner])))
        if (~inner).any():
            zo = z[~inner]
            rev = ComplexPoly.from_coeffs(tuple(reversed(p.coeffs)))
            with np.errstate(divide="ignore"):
                out[~inner] = d * np.log(np.abs(zo)) + np.log(
                    np.abs(eval_poly(rev, 1.0 / zo))
                )
    return float(out[0]) if scalar else out


def leading_terms(p: ComplexPoly, count: int) -> ComplexPoly:
    """Keep only the `count` highest-degree terms (lower ones zeroed)."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if p.is_zero() or count == 0:
        return ComplexPoly(())
    cut = max(len(p.coeffs) - count, 0)
    return ComplexPoly.from_coeffs(
        (0j,) * cut + p.coeffs[cut:]
    )


def poly_det(rows: list) -> ComplexPoly:
    """Determinant of a small square matrix of ComplexPoly, by Laplace expansion."""
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("matrix must be square")
    if k == 1:
        return rows[0][0]
    acc = ComplexPoly(())
    for j in range(k):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * poly_det(minor)
        acc = acc + (term if j % 2 == 0 else term.scale(-1))
    return acc
