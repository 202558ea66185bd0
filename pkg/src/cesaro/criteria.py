"""Moment-summability criteria, verdict classification, and probe experiments.

The boundedness question for the averaging operator reduces to convergence of

    sum_n (n+1)^(p alpha - 1) mu_n^p log^p(n+2),

and, for p = 1 (with alpha >= 1), equivalently to finiteness of

    integral_0^1 log(e/(1-t)) / (1-t)^alpha dmu(t).

Convergence of an infinite series cannot be decided numerically; the verdicts
here classify the growth of dyadic partial sums and are calibrated on measure
families whose answer is known analytically.  Borderline is a first-class
outcome, not an error.
"""

import warnings

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import measures as _measures
from . import norms as _norms
from .measures import Atoms, BetaDensity, Measure, MomentSequence, measure_record
from .operators import CesaroOperator, apply_coefficient_form
from .series import PowerSeries, log_series, monomial

__all__ = [
    "Verdict",
    "CriterionReport",
    "IntegralCriterionReport",
    "VerdictConflictError",
    "HypothesisWarning",
    "CHECKPOINTS",
    "INTEGRAL_CUTOFF_EXPONENTS",
    "SLOPE_BAND",
    "criterion_sum",
    "criterion_integral_p1",
    "radial_majorant",
    "boundedness_verdict",
    "growth_probe",
    "compactness_probe",
    "report_record",
]

CHECKPOINTS = tuple(1 << j for j in range(8, 15))  # 2^8 .. 2^14
INTEGRAL_CUTOFF_EXPONENTS = tuple(range(8, 21))  # cutoffs 1 - 2^-m, m = 8..20
SLOPE_BAND = 0.05


class Verdict(str, Enum):
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    BORDERLINE = "Borderline"


class VerdictConflictError(RuntimeError):
    """The p = 1 sum and integral classifiers reached opposite verdicts."""


class HypothesisWarning(UserWarning):
    """The (alpha, p) pair sits outside the calibrated hypothesis range."""


@dataclass
class CriterionReport:
    """Dyadic partial sums of the criterion series plus the growth verdict."""

    alpha: float
    p: float
    checkpoints: List[int]
    partial_sums: np.ndarray
    tail_slope: float
    verdict: Verdict
    analytic_verdict: Optional[Verdict] = None


@dataclass
class IntegralCriterionReport:
    """Cutoff integrals of the p = 1 criterion plus the stabilization verdict."""

    alpha: float
    cutoff_exponents: List[int]
    values: np.ndarray
    tail_slope: float
    verdict: Verdict


def _classify(scales: np.ndarray, sums: np.ndarray) -> Tuple[Verdict, float]:
    """Verdict from the increments between consecutive checkpoint sums.

    Converges when increments decay with log-log slope < -SLOPE_BAND (or die
    out entirely), Diverges when they are non-decreasing or grow with slope
    > +SLOPE_BAND, Borderline inside the band.
    """
    d = np.diff(sums)
    tiny = 1e-15 * max(float(sums[-1]), 1e-300)
    pos = d > tiny
    if not pos.any() or not pos[-1]:
        # Nothing left in the tail: the sum has effectively terminated.
        return Verdict.CONVERGES, float("-inf")
    mids = np.sqrt(scales[:-1] * scales[1:])
    x = np.log(mids[pos])
    y = np.log(d[pos])
    slope = float(np.polyfit(x, y, 1)[0]) if x.size >= 2 else 0.0
    if np.all(d[1:] >= d[:-1] * (1.0 - 1e-9)):
        return Verdict.DIVERGES, slope
    if slope < -SLOPE_BAND:
        return Verdict.CONVERGES, slope
    if slope > SLOPE_BAND:
        return Verdict.DIVERGES, slope
    return Verdict.BORDERLINE, slope


def _check_hypothesis(alpha: float, p: float) -> Optional[str]:
    bound = max(1.0, 1.0 / alpha)
    if p < bound - 1e-12:
        msg = (f"criterion calibrated for p >= max(1, 1/alpha) = {bound:g}; "
               f"got p = {p:g} at alpha = {alpha:g}")
        warnings.warn(msg, HypothesisWarning, stacklevel=3)
        return msg
    return None


def criterion_sum(mseq: MomentSequence, alpha: float, p: float) -> CriterionReport:
    """Partial sums of sum_n (n+1)^(p alpha - 1) mu_n^p log^p(n+2) with verdict."""
    if not alpha > 0:
        raise ValueError(f"criterion_sum requires alpha > 0, got {alpha!r}")
    if not p >= 1:
        raise ValueError(f"criterion_sum requires p >= 1, got {p!r}")
    _check_hypothesis(alpha, p)
    checkpoints = [c for c in CHECKPOINTS if c <= mseq.n_max]
    if len(checkpoints) < 3:
        raise ValueError("criterion_sum needs moments out to degree >= 1024")
    n = np.arange(mseq.n_max + 1, dtype=float)
    terms = (n + 1.0) ** (p * alpha - 1.0) * mseq.moments**p * np.log(n + 2.0) ** p
    csum = np.cumsum(terms)
    sums = csum[np.array(checkpoints)]
    verdict, slope = _classify(np.array(checkpoints, dtype=float), sums)
    return CriterionReport(alpha, p, checkpoints, sums, slope, verdict)


def criterion_integral_p1(mu: Measure, alpha: float) -> IntegralCriterionReport:
    """Cutoff integrals of log(e/(1-t)) (1-t)^(-alpha) dmu with verdict.

    Cutoffs are t <= 1 - 2^-m for m = 8..20; the integrand is accumulated
    shell by shell so consecutive cutoffs share all their quadrature work.
    """
    if not alpha > 0:
        raise ValueError(f"criterion_integral_p1 requires alpha > 0, got {alpha!r}")
    if alpha < 1.0 - 1e-12:
        warnings.warn(
            f"integral criterion calibrated for alpha >= 1, got alpha = {alpha:g}",
            HypothesisWarning,
            stacklevel=2,
        )
    m_lo, m_hi = INTEGRAL_CUTOFF_EXPONENTS[0], INTEGRAL_CUTOFF_EXPONENTS[-1]
    shells = _measures.dyadic_shell_integrals(
        mu, lambda u: (1.0 - np.log(u)) * u ** (-alpha), m_hi
    )
    running = np.concatenate([[0.0], np.cumsum(shells)])  # running[m] = cutoff at 1 - 2^-m
    values = running[m_lo : m_hi + 1]
    exponents = list(range(m_lo, m_hi + 1))
    verdict, slope = _classify(2.0 ** np.array(exponents, dtype=float), values)
    return IntegralCriterionReport(alpha, exponents, values, slope, verdict)


def radial_majorant(mseq: MomentSequence, alpha: float, p: float, r: float) -> float:
    """sum_n (n+1)^(alpha - 1/p) mu_n log(n+1) r^n, the growth majorant of
    M_p(r, (C f)') for unit-norm data; vanishes at r = 0."""
    if not (0.0 <= r < 1.0):
        raise ValueError(f"radial_majorant requires 0 <= r < 1, got {r!r}")
    n = np.arange(mseq.n_max + 1, dtype=float)
    return float(np.sum((n + 1.0) ** (alpha - 1.0 / p) * mseq.moments * np.log(n + 1.0) * r**n))


def _analytic_verdict(mu: Measure, alpha: float) -> Optional[Verdict]:
    # Calibrated families only: atoms always converge; the beta-type density
    # converges exactly when s > alpha (independent of p).
    if isinstance(mu, Atoms):
        return Verdict.CONVERGES
    if isinstance(mu, BetaDensity):
        return Verdict.CONVERGES if mu.s > alpha + 1e-12 else Verdict.DIVERGES
    return None


def boundedness_verdict(mu: Measure, alpha: float, p: float,
                        n_max: int = CHECKPOINTS[-1]) -> CriterionReport:
    """Criterion verdict for (mu, alpha, p), with the p = 1 integral cross-check.

    At p = 1 the sum and integral classifiers must not contradict each other
    (VerdictConflictError otherwise); a Borderline on one side defers to the
    decisive side.
    """
    mseq = _measures.moments(mu, n_max)
    report = criterion_sum(mseq, alpha, p)
    if abs(p - 1.0) <= 1e-12:
        integral = criterion_integral_p1(mu, alpha)
        a, b = report.verdict, integral.verdict
        if Verdict.BORDERLINE not in (a, b) and a != b:
            raise VerdictConflictError(
                f"sum says {a.value} but integral says {b.value} "
                f"(alpha = {alpha:g}, measure = {type(mu).__name__})"
            )
        if a is Verdict.BORDERLINE and b is not Verdict.BORDERLINE:
            report.verdict = b
    report.analytic_verdict = _analytic_verdict(mu, alpha)
    return report


def _image_norm(f: PowerSeries, p: float) -> float:
    if abs(p - 1.0) <= 1e-12:
        return _norms.besov1_norm(f).value
    return _norms.besov_norm(f, p).value


def growth_probe(mu: Measure, alpha: float, p: float,
                 degrees: Sequence[int] = (256, 512, 1024, 2048, 4096)) -> List[Tuple[int, float]]:
    """Norm-ratio probe on truncations of the logarithmic test function.

    For each degree N, applies the operator to log(1/(1-z)) truncated at N and
    returns (N, ||image||_{B_p} / ||test||_{mean-Lipschitz, s=2}).  The ratio
    stabilizes when the criterion converges and keeps growing when it
    diverges; it probes boundedness, it does not prove it.
    """
    degrees = [int(d) for d in degrees]
    if any(d < 2 for d in degrees) or degrees != sorted(degrees):
        raise ValueError("growth_probe needs an increasing list of degrees >= 2")
    out = []
    for deg in degrees:
        op = CesaroOperator.build(mu, alpha, deg)
        test = log_series(deg)
        image = apply_coefficient_form(op, test)
        ratio = _image_norm(image, p) / _norms.mean_lipschitz_norm(test, 2.0).value
        out.append((deg, float(ratio)))
    return out


def compactness_probe(mu: Measure, alpha: float, p: float,
                      ks: Sequence[int] = tuple(1 << j for j in range(4, 11))) -> List[Tuple[int, float]]:
    """Image norms of normalized monomials z^k / ||z^k|| for dyadic k.

    The monomials are normalized in the mean-Lipschitz (s = 2) norm and tend
    to zero on compact subsets, so when the operator is bounded (equivalently
    compact here) the image norms must die out as k grows.
    """
    ks = [int(k) for k in ks]
    if any(k < 1 for k in ks):
        raise ValueError("compactness_probe requires k >= 1")
    out = []
    for k in ks:
        deg = max(4 * k, 2048)
        op = CesaroOperator.build(mu, alpha, deg)
        probe = monomial(k, deg)
        image = apply_coefficient_form(op, probe)
        scaled = PowerSeries(image.coeffs / _norms.mean_lipschitz_norm(probe, 2.0).value)
        out.append((k, _image_norm(scaled, p)))
    return out


def report_record(report: CriterionReport, mu: Measure) -> dict:
    """JSON-ready record of a criterion report."""
    family, params = measure_record(mu)
    slope = report.tail_slope
    return {
        "family": family,
        "params": params,
        "alpha": report.alpha,
        "p": report.p,
        "partial_sums": [float(s) for s in report.partial_sums],
        "tail_slope": float(slope) if np.isfinite(slope) else None,
        "verdict": report.verdict.value,
        "analytic_verdict": report.analytic_verdict.value if report.analytic_verdict else None,
    }
