"""Measures, moment sequences, and the text mini-format."""

import numpy as np
import pytest
from scipy import integrate

from cesaro.measures import (Atoms, BetaDensity, GenericDensity, IntegrabilityError, LEBESGUE,
                             LogBetaDensity, MeasureSpecError, dyadic_shell_integrals,
                             format_measure, measure_quadrature, moments, parse_measure,
                             tail_exponent_fit, validate_moments)


def test_lebesgue_moments_are_harmonic():
    m = moments(LEBESGUE, 16).moments
    np.testing.assert_allclose(m, 1.0 / (np.arange(17) + 1.0), rtol=1e-15)


def test_atom_moments_exact():
    m = moments(Atoms(((0.5, 1.0),)), 20).moments
    np.testing.assert_allclose(m, 0.5 ** np.arange(21), rtol=0)


def test_beta_density_closed_form():
    m = moments(BetaDensity(1.0, 2.0), 64).moments
    n = np.arange(65)
    np.testing.assert_allclose(m, 1.0 / ((n + 1) * (n + 2)), rtol=1e-13)


def test_beta_closed_vs_quadrature():
    closed = moments(BetaDensity(1.5, 0.7), 256, method="closed").moments
    quad = moments(BetaDensity(1.5, 0.7), 256, method="quadrature").moments
    np.testing.assert_allclose(closed, quad, rtol=1e-10)


def test_logbeta_moments_against_scipy():
    mu = LogBetaDensity(1.0, 1.5, 2)
    m = moments(mu, 32).moments
    for n in (0, 3, 32):
        ref, _ = integrate.quad(
            lambda t: t**n * (1 - t) ** 0.5 * np.log(np.e / (1 - t)) ** 2,
            0, 1, points=[1.0], limit=200,
        )
        assert m[n] == pytest.approx(ref, rel=1e-10)


def test_generic_density_quadrature():
    mu = GenericDensity(lambda t: np.ones_like(t))
    m = moments(mu, 32).moments
    np.testing.assert_allclose(m, 1.0 / (np.arange(33) + 1.0), rtol=1e-10)


def test_generic_density_integrability_error():
    mu = GenericDensity(lambda t: (1 - t) ** -1.2, integrable_near_one=False)
    with pytest.raises(IntegrabilityError):
        moments(mu, 4)


def test_moments_are_decreasing_and_positive():
    for mu in (LEBESGUE, BetaDensity(2.0, 0.5), LogBetaDensity(1.0, 2.0, 1),
               Atoms(((0.25, 0.5), (0.75, 0.5)))):
        m = moments(mu, 256).moments
        assert np.all(m > 0)
        assert np.all(np.diff(m) <= 1e-15)


def test_validate_moments_accepts_true_sequences():
    for mu in (LEBESGUE, BetaDensity(1.0, 3.0), Atoms(((0.5, 1.0),))):
        check = validate_moments(moments(mu, 128), depth=4)
        assert bool(check) and check.violation is None


def test_validate_moments_flags_corruption():
    ms = moments(LEBESGUE, 16)
    broken = np.array(ms.moments)
    broken[8] = broken[7] * 1.5  # increasing -> not a moment sequence
    import dataclasses
    check = validate_moments(dataclasses.replace(ms, moments=broken), depth=4)
    assert not bool(check)
    n, k = check.violation
    assert k >= 1 and 0 <= n <= 16


def test_tail_exponent_fit_recovers_s():
    for s, tol in [(1.0, 0.02), (2.0, 0.02)]:
        fit = tail_exponent_fit(moments(BetaDensity(1.0, s), 4096))
        assert fit.s_hat == pytest.approx(s, abs=tol)
        assert fit.r_squared > 0.999


def test_measure_quadrature_reproduces_moments():
    for mu in (BetaDensity(1.0, 2.0), LogBetaDensity(1.0, 1.0, 1), Atoms(((0.5, 2.0),))):
        t, w = measure_quadrature(mu)
        ref = moments(mu, 16).moments
        got = np.array([np.sum(w * t**n) for n in range(17)])
        np.testing.assert_allclose(got, ref, rtol=1e-9)


def test_dyadic_shell_integrals_against_scipy():
    # f(u) = log(e/u)/u integrated against (1-t) dt, shells u in (2^-m, 1]
    shells = dyadic_shell_integrals(BetaDensity(1.0, 2.0), lambda u: np.log(np.e / u) / u, 16)
    ref, _ = integrate.quad(lambda u: np.log(np.e / u), 2.0**-16, 1)
    assert np.sum(shells) == pytest.approx(ref, rel=1e-9)


def test_dyadic_shell_integrals_atom_bucketing():
    shells = dyadic_shell_integrals(Atoms(((0.5, 1.0),)), lambda u: 1.0 / u, 8)
    # the atom sits at u = 0.5, i.e. shell (2^-1, 2^0]
    assert shells[1] == pytest.approx(2.0)
    assert np.sum(np.abs(np.delete(shells, 1))) == 0.0


@pytest.mark.parametrize("text,family", [
    ("beta: c=1 s=2", BetaDensity),
    ("beta: s=2", BetaDensity),
    ("logbeta: c=2 s=1 g=1", LogBetaDensity),
    ("atoms: (0.5,1.0)", Atoms),
    ("atoms: (0.25,0.5) (0.75,2)", Atoms),
])
def test_parse_measure_families(text, family):
    assert isinstance(parse_measure(text), family)


def test_parse_measure_round_trip():
    for text in ("beta: c=1 s=2", "logbeta: c=1 s=2 g=1", "atoms: (0.5,1)"):
        mu = parse_measure(text)
        again = parse_measure(format_measure(mu))
        assert again == mu


@pytest.mark.parametrize("bad", [
    "beta",                 # no colon
    "beta: c=1",            # missing s
    "beta: s=zebra",        # not a number
    "beta: s=1 g=1",        # g invalid for beta
    "logbeta: s=1",         # missing g
    "logbeta: s=1 g=1.5",   # non-integer g
    "atoms:",               # no points
    "atoms: (1.5,1)",       # t outside [0,1)
    "atoms: (0.5,-1)",      # nonpositive weight
    "gauss: s=1",           # unknown family
])
def test_parse_measure_rejects(bad):
    with pytest.raises(MeasureSpecError) as err:
        parse_measure(bad)
    assert err.value.column >= 1


def test_parse_measure_error_column_points_at_token():
    with pytest.raises(MeasureSpecError) as err:
        parse_measure("beta: s=zebra")
    assert err.value.column == "beta: s=zebra".index("zebra") + 1


def test_measure_validation_constructor_errors():
    with pytest.raises(ValueError):
        Atoms(((1.0, 1.0),))
    with pytest.raises(ValueError):
        Atoms(((0.5, 0.0),))
    with pytest.raises(ValueError):
        BetaDensity(0.0, 1.0)
    with pytest.raises(ValueError):
        BetaDensity(1.0, -2.0)
    with pytest.raises(ValueError):
        LogBetaDensity(1.0, 1.0, -1)
