"""Built-in verification sweeps, addressed by catalog id.

Each suite checks one of the package's load-bearing equivalences on a
calibrated corpus and reports per-case ratios:

  2.1        coefficient sum vs. Besov norm consistency for decreasing data
  2.2        dyadic block equivalence for radial integrals
  2.3        coefficient asymptotics of (1-z)^(-beta) log^gamma(2/(1-z))
  2.4        circle integrals of |1 - z e^{-i theta}|^(-alpha)
  inner-sum  the operator's inner-sum growth profile
  forms      coefficient form vs. integral form of the operator

The suites are deterministic (fixed seeds) and double as the acceptance gate.
"""

import math

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from .measures import Atoms, BetaDensity, LEBESGUE, moments
from .norms import (
    besov_norm,
    circle_kernel_integral,
    coefficient_besov_sum,
    dyadic_block_equivalence,
)
from .operators import CesaroOperator, apply_coefficient_form, apply_integral_form, inner_sum_profile
from .series import PowerSeries, log_power_series

__all__ = ["CaseResult", "SuiteResult", "run_suite", "suite_names"]


@dataclass
class CaseResult:
    label: str
    passed: bool
    detail: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        # normalize numpy scalars so the results serialize cleanly
        self.passed = bool(self.passed)
        self.detail = {k: float(v) for k, v in self.detail.items()}


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    cases: List[CaseResult]


def _window(values: np.ndarray) -> float:
    """max/min of a positive array (inf when the min collapses to zero)."""
    lo = float(np.min(values))
    hi = float(np.max(values))
    return math.inf if lo <= 0.0 else hi / lo


def _geometric_ns(lo: int, hi: int, per_octave: int = 3) -> np.ndarray:
    count = int(math.log2(hi / lo) * per_octave) + 1
    ns = np.unique(np.round(lo * 2.0 ** (np.arange(count + 1) / per_octave)).astype(int))
    return ns[(ns >= lo) & (ns <= hi)]


# ---------------------------------------------------------------------------
# 2.1: coefficient sum vs Besov norm react identically to truncation doubling

_GROWTH_CUT = 1.05


def _suite_coefficient_consistency() -> SuiteResult:
    base_n = 256
    families = [
        ("n^-0.5, p=2", lambda n: (n + 1.0) ** -0.5, 2.0),
        ("n^-0.75, p=2", lambda n: (n + 1.0) ** -0.75, 2.0),
        ("n^-0.6, p=1.5", lambda n: (n + 1.0) ** -0.6, 1.5),
        ("n^-2, p=2", lambda n: (n + 1.0) ** -2.0, 2.0),
        ("2^-n, p=1.5", lambda n: 0.5**n, 1.5),
        ("n^-3, p=3", lambda n: (n + 1.0) ** -3.0, 3.0),
    ]
    cases = []
    for label, gen, p in families:
        fs = [PowerSeries(gen(np.arange(n + 1, dtype=float))) for n in (base_n, 2 * base_n)]
        norm_growth = besov_norm(fs[1], p).value / besov_norm(fs[0], p).value
        sum_growth = (coefficient_besov_sum(fs[1], p) / coefficient_besov_sum(fs[0], p)) ** (1.0 / p)
        agree = (norm_growth >= _GROWTH_CUT) == (sum_growth >= _GROWTH_CUT)
        cases.append(CaseResult(label, agree, {
            "norm_growth": norm_growth, "coefficient_growth": sum_growth,
        }))
    return SuiteResult("2.1", all(c.passed for c in cases), cases)


# ---------------------------------------------------------------------------
# 2.2: dyadic block equivalence

_DYADIC_WINDOW = 10.0


def _dyadic_sequences(n_max: int):
    n = np.arange(n_max + 1, dtype=float)
    delta = np.zeros(n_max + 1)
    delta[0] = 1.0
    profile_mu = moments(BetaDensity(1.0, 2.0), n_max).moments
    return [
        ("delta", delta),
        ("ones", np.ones(n_max + 1)),
        ("harmonic", 1.0 / (n + 1.0)),
        ("inv-sqrt", (n + 1.0) ** -0.5),
        ("log-harmonic", np.log(n + 2.0) / (n + 1.0)),
        ("moment-profile", (n + 1.0) ** 0.5 * profile_mu * np.log(n + 1.0)),
    ]


def _suite_dyadic_blocks() -> SuiteResult:
    n_max = 1 << 12
    sequences = _dyadic_sequences(n_max)
    cases = []
    for beta in (0.5, 1.0):
        for p in (1.0, 2.0):
            ratios = []
            for _, lam in sequences:
                lhs, rhs = dyadic_block_equivalence(lam, beta, p)
                ratios.append(lhs / rhs)
            ratios = np.array(ratios)
            window = _window(ratios)
            cases.append(CaseResult(
                f"beta={beta:g} p={p:g}", window <= _DYADIC_WINDOW,
                {"window": window, "min_ratio": float(ratios.min()), "max_ratio": float(ratios.max())},
            ))
    return SuiteResult("2.2", all(c.passed for c in cases), cases)


# ---------------------------------------------------------------------------
# 2.3: coefficient asymptotics of the log-binomial series

_SERIES_WINDOW = 10.0


def _suite_series_asymptotics() -> SuiteResult:
    n_max = 1 << 14
    ns = np.arange(1 << 6, n_max + 1)
    cases = []
    for beta in (0.5, 1.0, 2.0):
        for gamma in (0, 1, 2):
            coeffs = log_power_series(beta, gamma, n_max).coeffs.real
            comparator = ns ** (beta - 1.0) * np.log(ns + 1.0) ** gamma
            window = _window(coeffs[ns] / comparator)
            cases.append(CaseResult(
                f"beta={beta:g} gamma={gamma}", window <= _SERIES_WINDOW, {"window": window},
            ))
    # beta = 0 branch: coefficients behave like n^-1 log^(gamma-1)(n+1)
    for gamma in (1, 2):
        coeffs = log_power_series(0.0, gamma, n_max).coeffs.real
        comparator = ns ** -1.0 * np.log(ns + 1.0) ** (gamma - 1.0)
        window = _window(coeffs[ns] / comparator)
        cases.append(CaseResult(
            f"beta=0 gamma={gamma}", window <= _SERIES_WINDOW, {"window": window},
        ))
    return SuiteResult("2.3", all(c.passed for c in cases), cases)


# ---------------------------------------------------------------------------
# 2.4: circle kernel integrals

_KERNEL_WINDOW = 5.0


def _suite_circle_kernel() -> SuiteResult:
    cases = []
    for rho in (0.3, 0.5, 0.9):
        got = circle_kernel_integral(rho, 2.0)
        want = 2.0 * np.pi / (1.0 - rho * rho)
        err = abs(got - want) / want
        cases.append(CaseResult(f"alpha=2 |z|={rho:g}", err <= 1e-9, {"relative_error": err}))
    rhos = np.array([0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.97, 0.99])
    log_ratio = np.array([
        circle_kernel_integral(r, 1.0) / math.log(2.0 / (1.0 - r * r)) for r in rhos
    ])
    window = _window(log_ratio)
    cases.append(CaseResult("alpha=1 vs log(2/(1-|z|^2))", window <= _KERNEL_WINDOW, {"window": window}))
    bounded = np.array([circle_kernel_integral(r, 0.5) for r in rhos])
    window = _window(bounded)
    cases.append(CaseResult("alpha=0.5 bounded", window <= _KERNEL_WINDOW, {"window": window}))
    return SuiteResult("2.4", all(c.passed for c in cases), cases)


# ---------------------------------------------------------------------------
# inner-sum: S(n, alpha) against (n+1)^(alpha-1) log(n+2)

_INNER_WINDOW = 5.0


def _suite_inner_sum() -> SuiteResult:
    cases = []
    ns = _geometric_ns(1 << 4, 1 << 15)
    for alpha in (0.5, 1.0, 2.0, 3.0):
        vals = inner_sum_profile(alpha, ns)
        comparator = (ns + 1.0) ** (alpha - 1.0) * np.log(ns + 2.0)
        window = _window(vals / comparator)
        cases.append(CaseResult(f"alpha={alpha:g}", window <= _INNER_WINDOW, {"window": window}))
    # Exact check at alpha = 1: S(n, 1) is the harmonic number H_n.
    check_ns = np.array([1, 2, 16, 256, 4096, 1 << 15])
    vals = inner_sum_profile(1.0, check_ns)
    err = 0.0
    for n, v in zip(check_ns, vals):
        h = math.fsum(1.0 / k for k in range(1, n + 1))
        err = max(err, abs(v - h) / h)
    cases.append(CaseResult("alpha=1 harmonic", err <= 1e-12, {"max_relative_error": err}))
    return SuiteResult("inner-sum", all(c.passed for c in cases), cases)


# ---------------------------------------------------------------------------
# forms: coefficient form vs integral form on a random corpus

_FORMS_SEED = 20240814
_FORMS_TOL = 1e-7


def _forms_measures():
    return [
        ("lebesgue", LEBESGUE),
        ("beta(1,2)", BetaDensity(1.0, 2.0)),
        ("atoms", Atoms(((0.25, 0.5), (0.75, 0.5)))),
    ]


def _suite_form_equivalence() -> SuiteResult:
    rng = np.random.default_rng(_FORMS_SEED)
    degree = 64
    # The integral form carries the whole image series, so the coefficient
    # form is evaluated with zero-padding: at |z| = 0.9 the discarded image
    # tail beyond degree 1024 is ~0.9^1024, far below the tolerance.
    pad = 1024
    fs = [
        PowerSeries(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))
        for _ in range(10)
    ]
    radii = (0.1, 0.3, 0.5, 0.7, 0.9)
    angles = np.exp(2j * np.pi * np.arange(8) / 8)
    zs = np.array([r * a for r in radii for a in angles])
    cases = []
    for label, mu in _forms_measures():
        for alpha in (0.5, 1.0, 1.5, 2.0):
            op = CesaroOperator.build(mu, alpha, pad)
            worst = 0.0
            for f in fs:
                padded = PowerSeries(np.concatenate([f.coeffs, np.zeros(pad - degree)]))
                image = apply_coefficient_form(op, padded)
                coeff_vals = image.eval(zs)
                for z, cval in zip(zs, coeff_vals):
                    ival = apply_integral_form(op, f, z)
                    worst = max(worst, abs(cval - ival) / (1.0 + abs(cval)))
            cases.append(CaseResult(
                f"{label} alpha={alpha:g}", worst <= _FORMS_TOL, {"max_scaled_deviation": worst},
            ))
    return SuiteResult("forms", all(c.passed for c in cases), cases)


# ---------------------------------------------------------------------------

_SUITES = {
    "2.1": _suite_coefficient_consistency,
    "2.2": _suite_dyadic_blocks,
    "2.3": _suite_series_asymptotics,
    "2.4": _suite_circle_kernel,
    "inner-sum": _suite_inner_sum,
    "forms": _suite_form_equivalence,
}


def suite_names() -> tuple:
    return tuple(_SUITES)


def run_suite(name: str) -> SuiteResult:
    """Run one verification suite by catalog id."""
    try:
        fn = _SUITES[name]
    except KeyError:
        raise ValueError(f"unknown verification suite {name!r}; choose from {', '.join(_SUITES)}") from None
    return fn()
