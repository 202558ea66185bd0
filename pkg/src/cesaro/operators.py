"""The generalized Cesaro-like averaging operator on truncated power series.

Acting on f(z) = sum a_k z^k, the operator with parameter alpha > 0 and
averaging measure mu produces

    (C f)(z) = sum_n ( mu_n * sum_{k<=n} w_{n-k} a_k ) z^n,

where w_j = Gamma(j + alpha) / (Gamma(alpha) j!) are the Taylor coefficients
of (1 - z)^(-alpha) and mu_n are the power moments of mu.  Equivalently,

    (C f)(z) = integral f(tz) / (1 - tz)^alpha dmu(t),

and the coefficient form is taken as definitional on truncations.  With
alpha = 1 and Lebesgue measure this is the classical Cesaro mean
b_n = (a_0 + ... + a_n) / (n + 1).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .measures import Measure, MomentSequence, measure_quadrature, moments as compute_moments
from .series import PowerSeries
from .specfun import gamma_ratio_sequence

__all__ = [
    "CesaroOperator",
    "apply_coefficient_form",
    "apply_integral_form",
    "derivative_integral_form",
    "second_derivative_integral_form",
    "inner_sum",
    "inner_sum_profile",
]

# The integral forms keep |z| away from the boundary so the kernel
# (1 - tz)^(-alpha) stays uniformly smooth over t in [0, 1].
_INTEGRAL_RADIUS_LIMIT = 0.95


@dataclass(frozen=True, eq=False)
class CesaroOperator:
    """Operator parameters plus the cached moment sequence of the measure."""

    alpha: float
    measure: Measure
    moments: MomentSequence

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"operator requires alpha > 0, got {self.alpha!r}")
        if self.moments.source is not self.measure:
            raise ValueError("moment sequence does not belong to the measure")

    @classmethod
    def build(cls, measure: Measure, alpha: float, degree: int) -> "CesaroOperator":
        """Construct with moments cached out to the given series degree."""
        return cls(alpha, measure, compute_moments(measure, degree))

    @cached_property
    def kernel_weights(self) -> np.ndarray:
        """Coefficients w_j of (1 - z)^(-alpha), j = 0..n_max."""
        return gamma_ratio_sequence(self.alpha, self.moments.n_max)

    @cached_property
    def _quadrature(self):
        return measure_quadrature(self.measure)


def apply_coefficient_form(op: CesaroOperator, f: PowerSeries) -> PowerSeries:
    """Coefficient-side application b_n = mu_n * sum_{k<=n} w_{n-k} a_k."""
    d = f.degree
    if d > op.moments.n_max:
        raise ValueError(
            f"series degree {d} exceeds cached moment degree {op.moments.n_max}"
        )
    conv = np.convolve(op.kernel_weights[: d + 1], f.coeffs)[: d + 1]
    return PowerSeries(op.moments.moments[: d + 1] * conv)


def _check_radius(z: complex) -> complex:
    z = complex(z)
    if abs(z) > _INTEGRAL_RADIUS_LIMIT + 1e-12:
        raise ValueError(f"integral form requires |z| <= {_INTEGRAL_RADIUS_LIMIT}, got |z| = {abs(z):.4f}")
    return z


def apply_integral_form(op: CesaroOperator, f: PowerSeries, z: complex) -> complex:
    """Quadrature evaluation of integral f(tz) (1 - tz)^(-alpha) dmu(t)."""
    z = _check_radius(z)
    t, w = op._quadrature
    tz = t * z
    kernel = (1.0 - tz) ** (-op.alpha)
    return complex(np.sum(w * f.eval(tz) * kernel))


def derivative_integral_form(op: CesaroOperator, f: PowerSeries, z: complex) -> complex:
    """Quadrature evaluation of (C f)'(z) via its two-term integral representation:

    integral [ t f'(tz) / (1-tz)^alpha + alpha t f(tz) / (1-tz)^(alpha+1) ] dmu(t).
    """
    z = _check_radius(z)
    t, w = op._quadrature
    tz = t * z
    base = (1.0 - tz) ** (-op.alpha)
    fp_vals = f.derivative(1).eval(tz) if f.degree >= 1 else 0.0
    integrand = t * fp_vals * base + op.alpha * t * f.eval(tz) * base / (1.0 - tz)
    return complex(np.sum(w * integrand))


def second_derivative_integral_form(op: CesaroOperator, f: PowerSeries, z: complex) -> complex:
    """Quadrature evaluation of (C f)''(z) via its three-term representation:

    integral t^2 [ f''(tz) / (1-tz)^alpha + 2 alpha f'(tz) / (1-tz)^(alpha+1)
                   + alpha (alpha+1) f(tz) / (1-tz)^(alpha+2) ] dmu(t).
    """
    z = _check_radius(z)
    a = op.alpha
    t, w = op._quadrature
    tz = t * z
    base = (1.0 - tz) ** (-a)
    fpp_vals = f.derivative(2).eval(tz) if f.degree >= 2 else 0.0
    fp_vals = f.derivative(1).eval(tz) if f.degree >= 1 else 0.0
    integrand = t * t * (
        fpp_vals * base
        + 2.0 * a * fp_vals * base / (1.0 - tz)
        + a * (a + 1.0) * f.eval(tz) * base / (1.0 - tz) ** 2
    )
    return complex(np.sum(w * integrand))


def inner_sum(n: int, alpha: float) -> float:
    """S(n, alpha) = sum_{k=1}^n w_{n-k} / k, the operator's inner-sum profile.

    S(n, 1) is the harmonic number H_n, and in general S(n, alpha) grows like
    (n+1)^(alpha-1) log(n+2) up to an alpha-dependent constant.
    """
    if n < 1 or int(n) != n:
        raise ValueError(f"inner_sum requires integer n >= 1, got {n!r}")
    n = int(n)
    w = gamma_ratio_sequence(alpha, n - 1)
    k = np.arange(1, n + 1, dtype=float)
    return float(np.dot(w[::-1], 1.0 / k))


def inner_sum_profile(alpha: float, ns) -> np.ndarray:
    """inner_sum evaluated on an array of n values, sharing one weight table."""
    ns = np.asarray(ns, dtype=int)
    if ns.size == 0 or np.any(ns < 1):
        raise ValueError("inner_sum_profile requires n >= 1")
    w = gamma_ratio_sequence(alpha, int(ns.max()) - 1)
    inv = 1.0 / np.arange(1, int(ns.max()) + 1, dtype=float)
    return np.array([float(np.dot(w[n - 1 :: -1], inv[:n])) for n in ns])
