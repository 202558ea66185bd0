"""Truncated power series arithmetic and the calibrated constructors."""

import math

import numpy as np
import pytest

from cesaro.series import (PowerSeries, binomial_series, cauchy_product, load_coefficients,
                           log_power_series, log_series, monomial, save_coefficients)


def test_eval_polynomial():
    f = PowerSeries(np.array([1.0, 2.0, 3.0]))
    assert f.eval(0.5) == pytest.approx(2.75)
    assert f.eval(0.0) == pytest.approx(1.0)


def test_eval_complex_point():
    f = PowerSeries(np.array([1.0, 1.0j]))
    z = 0.3 + 0.4j
    assert f.eval(z) == pytest.approx(1.0 + 1.0j * z)


def test_eval_rejects_outside_disk():
    f = PowerSeries(np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        f.eval(1.0)
    with pytest.raises(ValueError):
        f.eval(0.8 + 0.8j)


def test_coefficients_read_only():
    f = PowerSeries(np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        f.coeffs[0] = 99.0


def test_derivatives():
    f = PowerSeries(np.array([5.0, 1.0, 2.0, 3.0]))
    np.testing.assert_allclose(f.derivative().coeffs.real, [1.0, 4.0, 9.0])
    np.testing.assert_allclose(f.derivative(2).coeffs.real, [4.0, 18.0])
    with pytest.raises(ValueError):
        PowerSeries(np.array([1.0])).derivative()
    with pytest.raises(ValueError):
        f.derivative(3)


def test_cauchy_product_identity():
    rng = np.random.default_rng(0)
    f = PowerSeries(rng.standard_normal(33))
    one = PowerSeries(np.concatenate([[1.0], np.zeros(32)]))
    np.testing.assert_allclose(cauchy_product(f, one).coeffs, f.coeffs)


def test_cauchy_product_geometric_squares():
    # (1-z)^{-1} * (1-z)^{-1} = (1-z)^{-2}: coefficients n+1
    g = binomial_series(1.0, 64)
    got = cauchy_product(g, g).coeffs.real
    np.testing.assert_allclose(got, np.arange(65) + 1.0, rtol=1e-14)


def test_cauchy_product_half_powers():
    # (1-z)^{-1/2} squared is (1-z)^{-1}
    h = binomial_series(0.5, 256)
    got = cauchy_product(h, h).coeffs.real
    np.testing.assert_allclose(got, np.ones(257), atol=1e-12)


def test_binomial_series_small_orders():
    np.testing.assert_allclose(binomial_series(1.0, 8).coeffs.real, np.ones(9))
    np.testing.assert_allclose(binomial_series(2.0, 8).coeffs.real, np.arange(9) + 1.0)
    with pytest.raises(ValueError):
        binomial_series(0.0, 8)


def test_binomial_series_asymptotic_window():
    f = binomial_series(1.5, 1 << 12)
    n = np.arange(1 << 10, (1 << 12) + 1)
    scaled = f.coeffs.real[n] * math.gamma(1.5) / n**0.5
    assert scaled.min() > 0.95 and scaled.max() < 1.05


def test_log_series_coefficients():
    f = log_series(128)
    assert f.coeffs[0] == 0.0
    assert f.coeffs[1].real == 1.0
    assert f.coeffs[100].real == pytest.approx(0.01)


def test_log_series_eval_near_edge():
    f = log_series(1 << 12)
    assert f.eval(0.9) == pytest.approx(math.log(10.0), abs=1e-6)


def test_log_power_series_reduces_to_binomial():
    a = log_power_series(1.5, 0, 64).coeffs
    b = binomial_series(1.5, 64).coeffs
    np.testing.assert_allclose(a, b)


def test_log_power_series_pure_log():
    f = log_power_series(0.0, 1, 64)
    assert f.coeffs[0].real == pytest.approx(math.log(2.0))
    np.testing.assert_allclose(f.coeffs.real[1:], 1.0 / np.arange(1, 65))


def test_log_power_series_matches_cauchy_oracle():
    n_max = 512
    base = np.zeros(n_max + 1)
    base[0] = math.log(2.0)
    base[1:] = 1.0 / np.arange(1, n_max + 1)
    expected = cauchy_product(binomial_series(0.5, n_max), PowerSeries(base)).coeffs
    got = log_power_series(0.5, 1, n_max).coeffs
    np.testing.assert_allclose(got, expected, rtol=1e-13)


def test_log_power_series_window():
    f = log_power_series(1.0, 1, 1 << 12)
    n = np.arange(1 << 8, (1 << 12) + 1)
    ratio = f.coeffs.real[n] / np.log(n + 1.0)
    assert ratio.max() / ratio.min() <= 3.0


def test_log_power_series_validation():
    with pytest.raises(ValueError):
        log_power_series(0.0, 0, 16)
    with pytest.raises(ValueError):
        log_power_series(1.0, -1, 16)
    with pytest.raises(ValueError):
        log_power_series(-0.5, 1, 16)


def test_monomial():
    f = monomial(3)
    np.testing.assert_allclose(f.coeffs.real, [0, 0, 0, 1])
    g = monomial(2, n_max=5)
    assert g.degree == 5 and g.coeffs[2] == 1.0


def test_coefficient_csv_round_trip(tmp_path):
    path = tmp_path / "coeffs.csv"
    f = PowerSeries(np.array([1.25 + 2j, -3.5, 0.1 - 0.1j]))
    save_coefficients(f, path)
    text = path.read_text()
    assert text.splitlines()[0] == "index,real,imag"
    back = load_coefficients(path)
    assert np.array_equal(back.coeffs, f.coeffs)


def test_coefficient_csv_rejects_gaps(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("index,real,imag\n0,1.0,0.0\n2,1.0,0.0\n")
    with pytest.raises(ValueError):
        load_coefficients(path)


def test_coefficient_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n0,1.0,0.0\n")
    with pytest.raises(ValueError):
        load_coefficients(path)
