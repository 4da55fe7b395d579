"""Construction and evaluation of the classified entire SU(n+1) Toda solutions.

A solution is determined by positive weights lambda_0..lambda_n (with a
fixed product) and monic polynomials P_1..P_n with deg P_i = i.  With
f = lambda_0 + sum_i lambda_i |P_i|^2, the upper components are
U^k = -(k(k-1) log 2 + log det_k(f)) where det_k(f) is the k x k Gram
determinant of mixed derivatives f^{p,q}.

det_k is evaluated through its Cauchy-Binet decomposition

    det_k(f) = sum_{|S|=k} (prod_{i in S} lambda_i) |W_S(z)|^2

over Wronskian minors W_S of the holomorphic family (1, P_1, ..., P_n).
Every term is nonnegative, so the sum has no cancellation and stays
accurate at radii ~1e3 where direct elimination on (f^{p,q}) loses all
significant digits for k >= 3.  The minors are fixed polynomials computed
once per parameter set; magnitudes are handled in log form.  A scaled-LU
evaluation of (f^{p,q}) is kept as an independent cross-check route.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cartan import CartanData, cartan_matrix
from .cpoly import ComplexPoly, derivative, eval_poly, log_abs_eval, poly_det

__all__ = [
    "PositivityError",
    "SolutionParams",
    "SolutionEval",
    "lambda_product_target",
    "normalize_lambdas",
    "sample_params",
    "mixed_derivative",
    "det_k",
    "det_k_lu",
    "log_det_k",
    "upper_components",
    "lower_components",
    "eval_all",
    "perturbed",
    "parse_direction",
    "kernel_directions",
    "params_to_json",
    "params_from_json",
    "load_params",
]

LOG2 = math.log(2.0)


class PositivityError(ArithmeticError):
    """Gram determinant positivity failed; signals numerical breakdown."""


def lambda_product_target(n: int) -> float:
    """Required product lambda_0 * ... * lambda_n."""
    prod = 1.0
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            prod *= float(j - i + 1) ** -2
    return 2.0 ** (-n * (n + 1)) * prod


def normalize_lambdas(raw, n: int):
    """Scale all lambdas by one common factor so the product constraint holds.

    Ratios lambda_i / lambda_j are preserved.  Returns (lambdas, scale).
    """
    raw = [float(x) for x in raw]
    if len(raw) != n + 1:
        raise ValueError(f"expected {n + 1} lambdas, got {len(raw)}")
    if any(x <= 0 for x in raw):
        raise ValueError("lambdas must be positive")
    target = lambda_product_target(n)
    log_t = (math.log(target) - sum(math.log(x) for x in raw)) / (n + 1)
    t = math.exp(log_t)
    return tuple(x * t for x in raw), t


@dataclass(frozen=True)
class SolutionParams:
    """The n^2 + 2n classification parameters of one global solution."""

    n: int
    lambdas: tuple[float, ...]
    polys: tuple[ComplexPoly, ...]

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("n must be >= 1")
        if len(self.lambdas) != n + 1 or any(x <= 0 for x in self.lambdas):
            raise ValueError("need n+1 positive lambdas")
        if len(self.polys) != n:
            raise ValueError("need n polynomials")
        for i, p in enumerate(self.polys, start=1):
            if p.degree != i or p.coeffs[-1] != 1:
                raise ValueError(f"P_{i} must be monic of degree {i}")
        prod = math.prod(self.lambdas)
        target = lambda_product_target(n)
        if abs(prod / target - 1.0) > 1e-10:
            raise ValueError("lambda product constraint violated; normalize first")

    # -- coefficient views -------------------------------------------------

    def c(self, i: int, j: int) -> complex:
        """Coefficient c_{ij} of z^j in P_i."""
        if not 1 <= i <= self.n or not 0 <= j < i:
            raise IndexError(f"c_{{{i},{j}}} out of range")
        return self.polys[i - 1].coeffs[j]

    def first_frequency_coeff(self, m: int) -> complex:
        """alpha_m + i beta_m = c_{n+1-m, n-m}, m = 1..n."""
        if not 1 <= m <= self.n:
            raise IndexError(f"m={m} out of range 1..{self.n}")
        return self.c(self.n + 1 - m, self.n - m)

    def second_frequency_coeff(self, m: int) -> complex:
        """alpha_{m,2} + i beta_{m,2} = c_{n+2-m, n-m}, m = 2..n."""
        if not 2 <= m <= self.n:
            raise IndexError(f"m={m} out of range 2..{self.n}")
        return self.c(self.n + 2 - m, self.n - m)

    def cartan(self) -> CartanData:
        return cartan_matrix(self.n)


@dataclass(frozen=True)
class SolutionEval:
    """All solution components at one point."""

    z: complex
    u_upper: tuple[float, ...]
    u_lower: tuple[float, ...]
    exp_lower: tuple[float, ...]
    logdet_scale: tuple[float, ...]  # log det_k(f), k = 1..n+1


def sample_params(
    n: int, seed: int, magnitude: float, dilation: float = 1.0
) -> SolutionParams:
    """Deterministic pseudo-random valid parameter set.

    `magnitude` bounds |c_ij| / dilation^(i-j) and the spread of log
    lambda ratios; magnitude 0 gives the radial all-c-zero solution.
    `dilation` rescales the solution core (z -> z/dilation up to gauge):
    lambda_i picks up dilation^(-2i) and c_ij picks up dilation^(i-j),
    so dilation > 1 widens the bubble without leaving the family.
    Sampled coefficient magnitudes stay in [magnitude/4, magnitude] so
    relative comparisons against them are well conditioned.
    """
    if dilation <= 0:
        raise ValueError("dilation must be positive")
    rng = np.random.default_rng(seed)
    raw = dilation ** (-2.0 * np.arange(n + 1)) * np.exp(
        magnitude * rng.uniform(-1.0, 1.0, size=n + 1)
    )
    lambdas, _ = normalize_lambdas(raw, n)
    bound = magnitude / math.sqrt(2.0)

    def draw() -> float:
        return rng.choice([-1.0, 1.0]) * rng.uniform(0.25 * bound, bound)

    polys = []
    for i in range(1, n + 1):
        coeffs = [
            complex(draw(), draw()) * dilation ** (i - j) if magnitude > 0 else 0j
            for j in range(i)
        ] + [1 + 0j]
        polys.append(ComplexPoly(tuple(coeffs)))
    return SolutionParams(n=n, lambdas=lambdas, polys=tuple(polys))


# -- mixed derivatives and Gram determinants ------------------------------


@lru_cache(maxsize=256)
def _derivative_table(sp: SolutionParams) -> tuple:
    """derivs[i][p] = p-th derivative of P_i, including P_0 = 1."""
    family = (ComplexPoly((1 + 0j,)),) + sp.polys
    return tuple(
        tuple(derivative(p, order) for order in range(sp.n + 1)) for p in family
    )


def mixed_derivative(sp: SolutionParams, p: int, q: int, z):
    """f^{p,q} = d_zbar^q d_z^p f, via the separable structure of f."""
    if p < 0 or q < 0:
        raise ValueError("derivative orders must be >= 0")
    derivs = _derivative_table(sp)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros(z.shape, dtype=complex)
    for i in range(sp.n + 1):
        dp = derivs[i][p] if p <= sp.n else derivative(derivs[i][min(p, sp.n)], p - sp.n)
        dq = derivs[i][q] if q <= sp.n else derivative(derivs[i][min(q, sp.n)], q - sp.n)
        if dp.is_zero() or dq.is_zero():
            continue
        acc = acc + sp.lambdas[i] * eval_poly(dp, z) * np.conj(eval_poly(dq, z))
    return acc if acc.shape else complex(acc)


@lru_cache(maxsize=256)
def _wronskian_minors(sp: SolutionParams) -> tuple:
    """For each k = 1..n+1, the list of (log lambda-product, W_S) minors.

    W_S = det( P_i^{(p)} )_{p=0..k-1, i in S} over k-subsets S of {0..n},
    with P_0 = 1; each W_S is a polynomial in z alone.
    """
    derivs = _derivative_table(sp)
    out = []
    for k in range(1, sp.n + 2):
        minors = []
        for subset in itertools.combinations(range(sp.n + 1), k):
            rows = [[derivs[i][p] for i in subset] for p in range(k)]
            w = poly_det(rows)
            log_lam = sum(math.log(sp.lambdas[i]) for i in subset)
            minors.append((log_lam, w))
        out.append(tuple(minors))
    return tuple(out)


def log_det_k(sp: SolutionParams, k: int, z):
    """log det_k(f) at z (scalar or array), k = 1..n+1."""
    if not 1 <= k <= sp.n + 1:
        raise ValueError(f"k={k} out of range 1..{sp.n + 1}")
    minors = _wronskian_minors(sp)[k - 1]
    z = np.asarray(z, dtype=complex)
    scalar = z.shape == ()
    terms = np.stack(
        [log_lam + 2.0 * np.atleast_1d(log_abs_eval(w, z)) for log_lam, w in minors]
    )
    peak = np.max(terms, axis=0)
    out = peak + np.log(np.sum(np.exp(terms - peak), axis=0))
    if not np.all(np.isfinite(out)):
        raise PositivityError("det_k evaluation produced non-finite values")
    return float(out[0]) if scalar else out


def det_k(sp: SolutionParams, k: int, z) -> tuple[float, int]:
    """Gram determinant in log-scaled form: (log magnitude, sign).

    The sign is +1 by construction (sum of nonnegative terms); a
    breakdown surfaces as PositivityError.
    """
    return log_det_k(sp, k, z), +1


def det_k_lu(sp: SolutionParams, k: int, z) -> tuple[float, int]:
    """Cross-check route: scaled LU on the raw matrix (f^{p,q}).

    Loses relative accuracy at large |z| for k >= 3; intended for
    moderate radii as an independent oracle against the minor route.
    """
    mat = np.array(
        [[mixed_derivative(sp, p, q, complex(z)) for q in range(k)] for p in range(k)],
        dtype=complex,
    )
    scales = np.max(np.abs(mat), axis=1)
    if np.any(scales == 0):
        raise PositivityError("zero row in Gram matrix")
    sign, logabs = np.linalg.slogdet(mat / scales[:, None])
    if sign.real <= 0.5:
        raise PositivityError(f"non-positive Gram determinant at z={z}")
    return float(logabs + np.sum(np.log(scales))), +1


def upper_components(sp: SolutionParams, z) -> np.ndarray:
    """U^k for k = 1..n, stacked along axis 0; z scalar or array."""
    return np.stack(
        [-(k * (k - 1) * LOG2 + np.atleast_1d(log_det_k(sp, k, z)))
         for k in range(1, sp.n + 1)]
    )


def lower_components(sp: SolutionParams, z) -> np.ndarray:
    """U_i = sum_j a_ij U^j, stacked along axis 0."""
    upper = upper_components(sp, z)
    a = sp.cartan().a_float()
    return np.tensordot(a, upper, axes=(1, 0))


def eval_all(sp: SolutionParams, z: complex) -> SolutionEval:
    z = complex(z)
    upper = upper_components(sp, z)[:, 0]
    a = sp.cartan().a_float()
    lower = a @ upper
    scales = tuple(log_det_k(sp, k, z) for k in range(1, sp.n + 2))
    return SolutionEval(
        z=z,
        u_upper=tuple(float(x) for x in upper),
        u_lower=tuple(float(x) for x in lower),
        exp_lower=tuple(float(math.exp(x)) for x in lower),
        logdet_scale=scales,
    )


# -- parameter directions --------------------------------------------------


def parse_direction(which: str) -> tuple[str, int]:
    """Parse a direction name: alpha_M, beta_M, alpha2_M, beta2_M, loglambda_I."""
    try:
        kind, idx = which.rsplit("_", 1)
        idx = int(idx)
    except (ValueError, AttributeError):
        raise ValueError(f"cannot parse direction {which!r}") from None
    if kind not in {"alpha", "beta", "alpha2", "beta2", "loglambda"}:
        raise ValueError(f"unknown direction kind {kind!r}")
    return kind, idx


def kernel_directions(n: int) -> list[str]:
    """All 2n first-frequency and 2(n-1) second-frequency directions."""
    out = [f"alpha_{m}" for m in range(1, n + 1)]
    out += [f"beta_{m}" for m in range(1, n + 1)]
    out += [f"alpha2_{m}" for m in range(2, n + 1)]
    out += [f"beta2_{m}" for m in range(2, n + 1)]
    return out


def perturbed(sp: SolutionParams, which: str, delta: float) -> SolutionParams:
    """New parameter set shifted by delta along one direction."""
    kind, m = parse_direction(which)
    n = sp.n
    if kind == "loglambda":
        if not 0 <= m <= n:
            raise IndexError(f"lambda index {m} out of range 0..{n}")
        raw = list(sp.lambdas)
        raw[m] *= math.exp(delta)
        lambdas, _ = normalize_lambdas(raw, n)
        return SolutionParams(n=n, lambdas=lambdas, polys=sp.polys)
    if kind in {"alpha", "beta"}:
        if not 1 <= m <= n:
            raise IndexError(f"m={m} out of range 1..{n} for {kind}")
        i, j = n + 1 - m, n - m
    else:
        if not 2 <= m <= n:
            raise IndexError(f"m={m} out of range 2..{n} for {kind}")
        i, j = n + 2 - m, n - m
    shift = delta if kind in {"alpha", "alpha2"} else 1j * delta
    polys = list(sp.polys)
    coeffs = list(polys[i - 1].coeffs)
    coeffs[j] += shift
    polys[i - 1] = ComplexPoly(tuple(coeffs))
    return SolutionParams(n=n, lambdas=sp.lambdas, polys=tuple(polys))


# -- JSON parameter schema -------------------------------------------------


def params_to_json(sp: SolutionParams) -> dict:
    coeffs = []
    for i in range(1, sp.n + 1):
        for j in range(i):
            v = sp.c(i, j)
            if v != 0:
                coeffs.append({"i": i, "j": j, "re": v.real, "im": v.imag})
    return {"n": sp.n, "lambdas": list(sp.lambdas), "coeffs": coeffs}


def params_from_json(doc: dict) -> tuple[SolutionParams, float]:
    """Build params from the JSON schema; lambdas are normalized.

    Returns (params, applied common scale factor).
    """
    n = int(doc["n"])
    lambdas, scale = normalize_lambdas(doc["lambdas"], n)
    cmaps = {i: {} for i in range(1, n + 1)}
    for entry in doc.get("coeffs", []):
        i, j = int(entry["i"]), int(entry["j"])
        if not 1 <= i <= n or not 0 <= j < i:
            raise ValueError(f"coefficient index ({i},{j}) out of range")
        cmaps[i][j] = complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    polys = []
    for i in range(1, n + 1):
        coeffs = [cmaps[i].get(j, 0j) for j in range(i)] + [1 + 0j]
        polys.append(ComplexPoly(tuple(coeffs)))
    return SolutionParams(n=n, lambdas=lambdas, polys=tuple(polys)), scale


def load_params(path) -> tuple[SolutionParams, float]:
    with open(path) as fh:
        return params_from_json(json.load(fh))
