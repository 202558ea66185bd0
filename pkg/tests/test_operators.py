"""The operator in both forms, derivative representations, inner sums."""

import math

import numpy as np
import pytest

from cesaro.measures import Atoms, BetaDensity, LEBESGUE, moments
from cesaro.operators import (CesaroOperator, apply_coefficient_form, apply_integral_form,
                              derivative_integral_form, inner_sum, inner_sum_profile,
                              second_derivative_integral_form)
from cesaro.series import PowerSeries, binomial_series


def test_classical_cesaro_reduction():
    rng = np.random.default_rng(11)
    op = CesaroOperator.build(LEBESGUE, 1.0, 256)
    for _ in range(5):
        a = rng.standard_normal(257) + 1j * rng.standard_normal(257)
        image = apply_coefficient_form(op, PowerSeries(a))
        direct = np.cumsum(a) / (np.arange(257) + 1.0)
        np.testing.assert_allclose(image.coeffs, direct, atol=1e-13)


def test_all_ones_alpha_two():
    # a == 1: inner sum telescopes to (n+1)(n+2)/2, so b_n = (n+2)/2 under Lebesgue
    op = CesaroOperator.build(LEBESGUE, 2.0, 32)
    image = apply_coefficient_form(op, binomial_series(1.0, 32))
    np.testing.assert_allclose(image.coeffs.real, (np.arange(33) + 2.0) / 2.0, rtol=1e-13)


def test_constant_function_images():
    # f = 1: only the k = n term survives, b_n = mu_n * w_n
    one = PowerSeries(np.concatenate([[1.0], np.zeros(16)]))
    op = CesaroOperator.build(LEBESGUE, 2.0, 16)
    image = apply_coefficient_form(op, one)
    np.testing.assert_allclose(image.coeffs.real, np.ones(17), rtol=1e-13)


def test_operator_linearity():
    rng = np.random.default_rng(5)
    op = CesaroOperator.build(BetaDensity(1.0, 2.0), 1.5, 64)
    f = PowerSeries(rng.standard_normal(65))
    g = PowerSeries(rng.standard_normal(65))
    combo = PowerSeries(2.0 * f.coeffs - 3.0j * g.coeffs)
    lhs = apply_coefficient_form(op, combo).coeffs
    rhs = 2.0 * apply_coefficient_form(op, f).coeffs - 3.0j * apply_coefficient_form(op, g).coeffs
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)


def test_monotonicity_in_measure():
    rng = np.random.default_rng(9)
    a = np.abs(rng.standard_normal(33))
    f = PowerSeries(a)
    small = CesaroOperator.build(Atoms(((0.5, 1.0),)), 1.0, 32)
    large = CesaroOperator.build(Atoms(((0.5, 1.5),)), 1.0, 32)
    lo = apply_coefficient_form(small, f).coeffs.real
    hi = apply_coefficient_form(large, f).coeffs.real
    assert np.all(lo <= hi + 1e-15)


def test_apply_rejects_degree_overflow():
    op = CesaroOperator.build(LEBESGUE, 1.0, 16)
    with pytest.raises(ValueError):
        apply_coefficient_form(op, PowerSeries(np.ones(18)))


def test_operator_validates_arguments():
    with pytest.raises(ValueError):
        CesaroOperator.build(LEBESGUE, 0.0, 16)
    ms = moments(LEBESGUE, 16)
    with pytest.raises(ValueError):
        CesaroOperator(1.0, BetaDensity(1.0, 2.0), ms)  # moments belong to another measure


def test_form_equivalence_random_grid():
    rng = np.random.default_rng(23)
    f = PowerSeries(rng.standard_normal(33) + 1j * rng.standard_normal(33))
    padded = PowerSeries(np.concatenate([f.coeffs, np.zeros(512 - 32)]))
    for mu in (LEBESGUE, Atoms(((0.25, 0.5), (0.75, 0.5)))):
        for alpha in (0.5, 1.0, 2.0):
            op = CesaroOperator.build(mu, alpha, 512)
            image = apply_coefficient_form(op, padded)
            for z in (0.0, 0.3, 0.5j, -0.6, 0.5 + 0.5j):
                coeff_val = image.eval(z)
                int_val = apply_integral_form(op, f, z)
                assert abs(coeff_val - int_val) <= 1e-9 * (1 + abs(coeff_val))


def test_integral_form_radius_guard():
    op = CesaroOperator.build(LEBESGUE, 1.0, 16)
    f = PowerSeries(np.ones(17))
    with pytest.raises(ValueError):
        apply_integral_form(op, f, 0.99)


def test_derivative_forms_at_zero():
    # (Cf)'(0) = mu_1 (a_1 + alpha a_0); (Cf)''(0) = 2 mu_2 (a_2 + alpha a_1 + alpha(alpha+1)/2 a_0)
    rng = np.random.default_rng(3)
    a = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    f = PowerSeries(a)
    alpha = 1.5
    op = CesaroOperator.build(BetaDensity(1.0, 2.0), alpha, 8)
    m = op.moments.moments
    d1 = derivative_integral_form(op, f, 0.0)
    assert d1 == pytest.approx(m[1] * (a[1] + alpha * a[0]), rel=1e-12)
    d2 = second_derivative_integral_form(op, f, 0.0)
    expect = 2.0 * m[2] * (a[2] + alpha * a[1] + alpha * (alpha + 1) / 2.0 * a[0])
    assert d2 == pytest.approx(expect, rel=1e-12)


def test_derivative_forms_match_central_differences():
    rng = np.random.default_rng(4)
    f = PowerSeries(rng.standard_normal(33) + 1j * rng.standard_normal(33))
    op = CesaroOperator.build(BetaDensity(1.0, 2.0), 1.5, 32)
    z0 = 0.4 + 0.2j
    h = 1e-4
    fd1 = (apply_integral_form(op, f, z0 + h) - apply_integral_form(op, f, z0 - h)) / (2 * h)
    assert derivative_integral_form(op, f, z0) == pytest.approx(fd1, rel=1e-6)
    fd2 = (apply_integral_form(op, f, z0 + h) - 2 * apply_integral_form(op, f, z0)
           + apply_integral_form(op, f, z0 - h)) / h**2
    assert second_derivative_integral_form(op, f, z0) == pytest.approx(fd2, rel=1e-5)


def test_kernel_weights_match_binomial():
    op = CesaroOperator.build(LEBESGUE, 1.5, 64)
    np.testing.assert_allclose(op.kernel_weights, binomial_series(1.5, 64).coeffs.real)


def test_inner_sum_harmonic():
    for n in (1, 2, 10, 100, 1000):
        h_n = math.fsum(1.0 / k for k in range(1, n + 1))
        assert inner_sum(n, 1.0) == pytest.approx(h_n, rel=1e-12)


def test_inner_sum_brute_force():
    from cesaro.specfun import gamma_ratio
    for alpha in (0.5, 2.0):
        for n in (1, 5, 50):
            brute = math.fsum(gamma_ratio(n - k, alpha) / k for k in range(1, n + 1))
            assert inner_sum(n, alpha) == pytest.approx(brute, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.0])
def test_inner_sum_growth_window(alpha):
    ns = np.unique(np.geomspace(1 << 4, 1 << 15, 24).astype(int))
    vals = inner_sum_profile(alpha, ns)
    ratio = vals / ((ns + 1.0) ** (alpha - 1.0) * np.log(ns + 2.0))
    assert ratio.max() / ratio.min() <= 5.0


def test_inner_sum_profile_matches_scalar():
    ns = np.array([1, 7, 33, 129])
    vals = inner_sum_profile(1.7, ns)
    ref = np.array([inner_sum(int(n), 1.7) for n in ns])
    np.testing.assert_allclose(vals, ref, rtol=1e-13)
