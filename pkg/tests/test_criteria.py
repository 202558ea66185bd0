"""Boundedness criteria, verdict classification, and the probes."""

import warnings

import numpy as np
import pytest

from cesaro.criteria import (HypothesisWarning, Verdict, boundedness_verdict, compactness_probe,
                             criterion_integral_p1, criterion_sum, growth_probe, radial_majorant,
                             report_record)
from cesaro.measures import Atoms, BetaDensity, LEBESGUE, LogBetaDensity, moments


def _ms(mu, n_max=1 << 14):
    return moments(mu, n_max)


def test_atom_measures_always_converge():
    for alpha, p in ((0.5, 2.0), (1.0, 1.0), (2.0, 3.0)):
        rep = criterion_sum(_ms(Atoms(((0.5, 1.0),))), alpha, p)
        assert rep.verdict == Verdict.CONVERGES


def test_calibrated_beta_verdicts():
    # terms ~ (n+1)^{p alpha - 1 - p s} log^p(n+2)
    assert criterion_sum(_ms(BetaDensity(1.0, 2.0)), 1.0, 2.0).verdict == Verdict.CONVERGES
    assert criterion_sum(_ms(LEBESGUE), 1.0, 2.0).verdict == Verdict.DIVERGES
    assert criterion_sum(_ms(LEBESGUE), 1.0, 1.0).verdict == Verdict.DIVERGES
    assert criterion_sum(_ms(BetaDensity(1.0, 0.4)), 0.5, 2.0).verdict == Verdict.DIVERGES
    assert criterion_sum(_ms(BetaDensity(1.0, 0.75)), 0.5, 2.0).verdict == Verdict.CONVERGES


def test_partial_sums_non_decreasing():
    rep = criterion_sum(_ms(LEBESGUE), 1.0, 2.0)
    assert np.all(np.diff(rep.partial_sums) >= 0)
    assert len(rep.partial_sums) == 7  # checkpoints 2^8 .. 2^14


def test_converging_sum_stabilizes():
    rep = criterion_sum(_ms(BetaDensity(1.0, 2.0)), 1.0, 2.0)
    s = rep.partial_sums
    assert abs(s[-1] - s[4]) <= 1e-3 * s[-1]  # stabilized by N = 2^12


def test_hypothesis_warning_emitted():
    with pytest.warns(HypothesisWarning):
        criterion_sum(_ms(LEBESGUE, 1 << 10), 0.5, 1.0)  # p < 1/alpha


def test_criterion_integral_atom_closed_form():
    t0, w = 0.5, 2.0
    rep = criterion_integral_p1(Atoms(((t0, w),)), 1.0)
    expect = w * np.log(np.e / (1 - t0)) / (1 - t0)
    assert rep.values[-1] == pytest.approx(expect, rel=1e-12)
    assert rep.verdict == Verdict.CONVERGES


def test_criterion_integral_beta_threshold():
    # integral of (1-t)^{s-1-alpha} log(e/(1-t)) converges iff s > alpha
    assert criterion_integral_p1(BetaDensity(1.0, 2.0), 1.0).verdict == Verdict.CONVERGES
    assert criterion_integral_p1(LEBESGUE, 1.0).verdict == Verdict.DIVERGES
    assert criterion_integral_p1(BetaDensity(1.0, 1.5), 1.5).verdict == Verdict.DIVERGES


def test_sum_and_integral_agree_at_p_one():
    for mu in (LEBESGUE, BetaDensity(1.0, 1.5), BetaDensity(1.0, 3.0),
               LogBetaDensity(1.0, 2.0, 1), Atoms(((0.25, 1.0),))):
        for alpha in (1.0, 2.0):
            rs = criterion_sum(_ms(mu), alpha, 1.0)
            ri = criterion_integral_p1(mu, alpha)
            assert rs.verdict == ri.verdict, (mu, alpha)


def test_boundedness_verdict_analytic_cross_check():
    for s, alpha, expect in ((3.0, 1.0, Verdict.CONVERGES), (1.0, 1.0, Verdict.DIVERGES),
                             (2.25, 2.0, Verdict.CONVERGES), (1.0, 2.0, Verdict.DIVERGES)):
        for p in (1.0, 2.0):
            rep = boundedness_verdict(BetaDensity(1.0, s), alpha, p)
            assert rep.verdict == expect
            assert rep.analytic_verdict == expect


def test_boundedness_verdict_atoms_analytic():
    rep = boundedness_verdict(Atoms(((0.9, 1.0),)), 2.0, 2.0)
    assert rep.verdict == Verdict.CONVERGES
    assert rep.analytic_verdict == Verdict.CONVERGES


def test_radial_majorant_values():
    ms = _ms(LEBESGUE, 1 << 10)
    assert radial_majorant(ms, 1.0, 2.0, 0.0) == 0.0  # n = 0 term carries log(1) = 0
    v1 = radial_majorant(ms, 1.0, 2.0, 0.5)
    v2 = radial_majorant(ms, 1.0, 2.0, 0.9)
    assert 0.0 < v1 < v2


def test_radial_majorant_atom_at_zero():
    ms = moments(Atoms(((0.0, 1.0),)), 64)
    assert radial_majorant(ms, 1.0, 2.0, 0.7) == 0.0


def test_radial_majorant_dominates_image_means():
    # M_2(r, (C f)') <= C * majorant(r) for f = log_series on a calibrated measure
    from cesaro.norms import integral_mean
    from cesaro.operators import CesaroOperator, apply_coefficient_form
    from cesaro.series import log_series

    mu = BetaDensity(1.0, 2.0)
    op = CesaroOperator.build(mu, 1.0, 1 << 10)
    image = apply_coefficient_form(op, log_series(1 << 10))
    deriv = image.derivative()
    ms = op.moments
    ratios = []
    for r in (0.5, 0.7, 0.9, 0.95):
        ratios.append(integral_mean(deriv, r, 2.0) / radial_majorant(ms, 1.0, 2.0, r))
    assert max(ratios) / min(ratios) <= 10.0
    assert max(ratios) <= 10.0


def test_growth_probe_stable_when_bounded():
    pts = growth_probe(BetaDensity(1.0, 2.0), 1.0, 2.0)
    ratios = np.array([r for _, r in pts])
    assert ratios.max() / ratios.min() <= 1.5


def test_growth_probe_grows_when_unbounded():
    pts = growth_probe(LEBESGUE, 1.0, 2.0)
    ratios = np.array([r for _, r in pts])
    steps = ratios[1:] / ratios[:-1]
    assert np.all(steps >= 1.10)


def test_growth_probe_atom_stable():
    pts = growth_probe(Atoms(((0.5, 1.0),)), 1.0, 2.0)
    ratios = np.array([r for _, r in pts])
    assert ratios.max() / ratios.min() <= 1.05


def test_compactness_probe_decays():
    pts = compactness_probe(BetaDensity(1.0, 2.0), 1.0, 2.0)
    norms = np.array([v for _, v in pts])
    assert np.all(np.diff(norms) < 0)
    assert norms[-1] < 1e-2 * norms[0]


def test_report_record_schema():
    mu = BetaDensity(1.0, 3.0)
    rep = boundedness_verdict(mu, 1.0, 2.0)
    doc = report_record(rep, mu)
    assert doc["family"] == "beta"
    assert doc["params"] == {"c": 1.0, "s": 3.0}
    assert doc["alpha"] == 1.0 and doc["p"] == 2.0
    assert doc["verdict"] == "Converges" and doc["analytic_verdict"] == "Converges"
    assert len(doc["partial_sums"]) == 7
    assert isinstance(doc["tail_slope"], float)


def test_report_record_atom_slope_none():
    mu = Atoms(((0.5, 1.0),))
    rep = boundedness_verdict(mu, 1.0, 2.0)
    doc = report_record(rep, mu)
    assert doc["tail_slope"] is None  # increments vanish identically
    assert doc["verdict"] == "Converges"


def test_criterion_sum_requires_enough_moments():
    with pytest.raises(ValueError):
        criterion_sum(_ms(LEBESGUE, 128), 1.0, 2.0)


def test_hypothesis_warning_suppressed_inside_valid_region():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        criterion_sum(_ms(LEBESGUE, 1 << 10), 1.0, 1.0)
        criterion_sum(_ms(LEBESGUE, 1 << 10), 0.5, 2.0)
