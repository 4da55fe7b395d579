"""Solution construction, Gram determinants, parameter handling."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from todalab.cpoly import ComplexPoly
from todalab.solution import (
    SolutionParams,
    det_k,
    det_k_lu,
    eval_all,
    kernel_directions,
    lambda_product_target,
    load_params,
    log_det_k,
    lower_components,
    mixed_derivative,
    normalize_lambdas,
    params_from_json,
    params_to_json,
    parse_direction,
    perturbed,
    sample_params,
    upper_components,
)

LOG2 = math.log(2.0)


def liouville_params() -> SolutionParams:
    """n=1, lambda = (1/2, 1/2), P_1 = z: the closed-form reference case."""
    return SolutionParams(
        n=1, lambdas=(0.5, 0.5), polys=(ComplexPoly((0j, 1 + 0j)),)
    )


# -- lambda normalization --------------------------------------------------


def test_lambda_product_targets():
    assert lambda_product_target(1) == pytest.approx(0.25)
    assert lambda_product_target(2) == pytest.approx(1.0 / 256.0)
    assert lambda_product_target(3) == pytest.approx(1.0 / (4096.0 * 144.0))


@given(
    n=st.integers(min_value=1, max_value=4),
    data=st.data(),
)
@settings(max_examples=50)
def test_normalize_preserves_ratios_and_hits_product(n, data):
    raw = data.draw(
        st.lists(
            st.floats(min_value=1e-3, max_value=1e3),
            min_size=n + 1,
            max_size=n + 1,
        )
    )
    lambdas, scale = normalize_lambdas(raw, n)
    assert math.prod(lambdas) == pytest.approx(lambda_product_target(n), rel=1e-9)
    for a, b in zip(lambdas, raw):
        assert a == pytest.approx(scale * b, rel=1e-12)


def test_normalize_rejects_bad_input():
    with pytest.raises(ValueError):
        normalize_lambdas([1.0], 1)
    with pytest.raises(ValueError):
        normalize_lambdas([1.0, -1.0], 1)


def test_params_validation():
    with pytest.raises(ValueError):
        SolutionParams(n=1, lambdas=(1.0, 1.0), polys=(ComplexPoly((0j, 1 + 0j)),))
    with pytest.raises(ValueError):
        SolutionParams(n=1, lambdas=(0.5, 0.5), polys=(ComplexPoly((0j, 2 + 0j)),))
    with pytest.raises(ValueError):
        SolutionParams(n=0, lambdas=(1.0,), polys=())


# -- closed-form Liouville case --------------------------------------------


def test_liouville_upper_component_closed_form():
    sp = liouville_params()
    for z in (0j, 1 + 1j, 3 - 2j, 50j):
        f = 0.5 * (1.0 + abs(z) ** 2)
        assert log_det_k(sp, 1, z) == pytest.approx(math.log(f), rel=1e-12)
        u1 = upper_components(sp, z)[0]
        assert u1 == pytest.approx(-math.log(f), rel=1e-12)


def test_liouville_top_determinant_is_quarter():
    sp = liouville_params()
    for z in (0j, 2 + 1j, 100 + 0j):
        logd, sign = det_k(sp, 2, z)
        assert sign == 1
        assert logd == pytest.approx(math.log(0.25), abs=1e-12)


def test_liouville_lower_component_is_standard_bubble():
    # e^{U_1} = 4 / (1 + |z|^2)^2 for this parameter choice.
    sp = liouville_params()
    z = np.array([0j, 1 + 0j, 2j, 5 - 5j])
    e_u = np.exp(lower_components(sp, z)[0])
    assert np.allclose(e_u, 4.0 / (1.0 + np.abs(z) ** 2) ** 2, rtol=1e-12)


# -- Gram determinant routes -----------------------------------------------


@pytest.mark.parametrize("n,seed", [(1, 0), (2, 0), (2, 3), (3, 1)])
def test_minor_route_agrees_with_lu_at_moderate_radius(n, seed):
    sp = sample_params(n, seed, 0.4)
    for z in (0.3 + 0.2j, 1 + 1j, 2 - 3j):
        for k in range(1, n + 2):
            log_m, s_m = det_k(sp, k, z)
            log_lu, s_lu = det_k_lu(sp, k, z)
            assert s_m == s_lu == 1
            assert log_m == pytest.approx(log_lu, abs=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_top_determinant_is_constant(n):
    # det_{n+1}(f) = prod lambda_i * (prod_{i<=n} i!)^2 = 2^{-n(n+1)},
    # a z-independent constant once the product constraint holds.
    sp = sample_params(n, 7, 0.5)
    expected = -n * (n + 1) * LOG2
    for z in (0j, 1 + 2j, 30 - 40j, 1e3 + 0j):
        assert log_det_k(sp, n + 1, z) == pytest.approx(expected, abs=1e-9)


def test_mixed_derivative_hermitian_symmetry():
    sp = sample_params(2, 4, 0.5)
    for p in range(3):
        for q in range(3):
            z = 1.3 - 0.7j
            assert mixed_derivative(sp, p, q, z) == pytest.approx(
                np.conj(mixed_derivative(sp, q, p, z)), rel=1e-12
            )


def test_log_det_vectorized_matches_scalar():
    sp = sample_params(2, 1, 0.3)
    z = np.array([0.5 + 0.5j, 2 - 1j, 10 + 3j])
    vec = log_det_k(sp, 2, z)
    for zi, vi in zip(z, vec):
        assert vi == pytest.approx(log_det_k(sp, 2, complex(zi)), rel=1e-12)


def test_eval_all_consistency():
    sp = sample_params(2, 2, 0.3)
    ev = eval_all(sp, 1 + 1j)
    a = sp.cartan().a_float()
    lower = a @ np.array(ev.u_upper)
    assert np.allclose(ev.u_lower, lower, atol=1e-12)
    assert np.allclose(ev.exp_lower, np.exp(lower), rtol=1e-12)
    assert len(ev.logdet_scale) == sp.n + 1


# -- parameter directions ---------------------------------------------------


def test_parse_direction():
    assert parse_direction("alpha_1") == ("alpha", 1)
    assert parse_direction("beta2_3") == ("beta2", 3)
    assert parse_direction("loglambda_0") == ("loglambda", 0)
    with pytest.raises(ValueError):
        parse_direction("gamma_1")
    with pytest.raises(ValueError):
        parse_direction("alpha")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kernel_directions_count(n):
    dirs = kernel_directions(n)
    assert len(dirs) == 2 * n + 2 * (n - 1)
    assert len(set(dirs)) == len(dirs)


def test_perturbed_shifts_expected_coefficient():
    sp = sample_params(3, 0, 0.3)
    d = 1e-3
    for m in range(1, 4):
        delta = perturbed(sp, f"alpha_{m}", d).first_frequency_coeff(m) - sp.first_frequency_coeff(m)
        assert delta == pytest.approx(d)
        delta = perturbed(sp, f"beta_{m}", d).first_frequency_coeff(m) - sp.first_frequency_coeff(m)
        assert delta == pytest.approx(1j * d)
    for m in (2, 3):
        delta = perturbed(sp, f"alpha2_{m}", d).second_frequency_coeff(m) - sp.second_frequency_coeff(m)
        assert delta == pytest.approx(d)


def test_perturbed_loglambda_keeps_constraint():
    sp = sample_params(2, 0, 0.3)
    sp2 = perturbed(sp, "loglambda_1", 0.05)
    assert math.prod(sp2.lambdas) == pytest.approx(lambda_product_target(2), rel=1e-9)
    assert sp2.lambdas != sp.lambdas


def test_perturbed_rejects_out_of_range():
    sp = sample_params(2, 0, 0.3)
    with pytest.raises(IndexError):
        perturbed(sp, "alpha_3", 1e-3)
    with pytest.raises(IndexError):
        perturbed(sp, "alpha2_1", 1e-3)


# -- sampling and serialization ---------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sample_params_deterministic_and_valid(n):
    a = sample_params(n, 11, 0.5)
    b = sample_params(n, 11, 0.5)
    assert a == b
    assert sample_params(n, 12, 0.5) != a


def test_sample_magnitude_zero_is_radial():
    sp = sample_params(3, 5, 0.0)
    for i in range(1, 4):
        for j in range(i):
            assert sp.c(i, j) == 0


def test_sample_coefficients_bounded_away_from_zero():
    sp = sample_params(3, 9, 0.4)
    bound = 0.4 / math.sqrt(2.0)
    for i in range(1, 4):
        for j in range(i):
            assert abs(sp.c(i, j).real) >= 0.25 * bound * 0.999
            assert abs(sp.c(i, j).imag) >= 0.25 * bound * 0.999


def test_json_roundtrip(tmp_path):
    sp = sample_params(3, 2, 0.4)
    doc = params_to_json(sp)
    sp2, scale = params_from_json(doc)
    assert scale == pytest.approx(1.0, rel=1e-9)
    assert sp2.n == sp.n
    assert np.allclose(sp2.lambdas, sp.lambdas, rtol=1e-12)
    for i in range(1, 4):
        for j in range(i):
            assert sp2.c(i, j) == pytest.approx(sp.c(i, j))
    path = tmp_path / "params.json"
    path.write_text(json.dumps(doc))
    sp3, _ = load_params(path)
    assert sp3 == sp2


def test_params_from_json_normalizes():
    doc = {"n": 1, "lambdas": [1.0, 1.0], "coeffs": []}
    sp, scale = params_from_json(doc)
    assert math.prod(sp.lambdas) == pytest.approx(0.25, rel=1e-9)
    assert scale == pytest.approx(0.5)


def test_params_from_json_rejects_bad_index():
    doc = {"n": 1, "lambdas": [1.0, 1.0], "coeffs": [{"i": 2, "j": 0, "re": 1.0}]}
    with pytest.raises(ValueError):
        params_from_json(doc)
