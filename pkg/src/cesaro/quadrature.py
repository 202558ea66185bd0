"""Graded-panel Gauss-Legendre rules for endpoint-concentrated integrands.

Every integral in this package lives on [0, 1) with its interesting behaviour
piled up at the right endpoint: densities like (1-t)^(s-1) are singular there
and the factor t^n concentrates there as n grows.  Substituting u = 1 - t and
covering [u_lo, u_hi] with geometrically shrinking panels keeps a fixed Gauss
rule accurate panel by panel no matter how hard the integrand concentrates:
on a panel [a, 2a] the profile exp(-n u) either varies by a bounded factor or
is negligibly small relative to the total.
"""

from functools import lru_cache

import numpy as np

__all__ = ["gauss_rule", "panel_rule", "graded_rule"]


@lru_cache(maxsize=None)
def gauss_rule(order: int):
    """Gauss-Legendre nodes and weights on [-1, 1] (cached; treat read-only)."""
    if order < 1:
        raise ValueError(f"gauss_rule requires order >= 1, got {order!r}")
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_rule(a: float, b: float, order: int):
    """Gauss-Legendre nodes and weights mapped to the interval [a, b]."""
    x, w = gauss_rule(order)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def graded_rule(u_lo: float, u_hi: float = 1.0, order: int = 20, ratio: float = 2.0):
    """Composite rule on [u_lo, u_hi] with panels shrinking geometrically to u_lo.

    Returns (nodes, weights) in descending node order.  Panel boundaries run
    u_hi, u_hi/ratio, u_hi/ratio^2, ... until the next boundary would undershoot
    u_lo, where the final panel is clipped to end exactly at u_lo.
    """
    if not (0.0 < u_lo < u_hi):
        raise ValueError(f"graded_rule requires 0 < u_lo < u_hi, got {u_lo!r}, {u_hi!r}")
    if ratio <= 1.0:
        raise ValueError(f"graded_rule requires ratio > 1, got {ratio!r}")
    nodes, weights = [], []
    hi = u_hi
    while True:
        lo = hi / ratio
        if lo <= u_lo * (1.0 + 1e-12):
            lo = u_lo
        x, w = panel_rule(lo, hi, order)
        nodes.append(x)
        weights.append(w)
        if lo == u_lo:
            break
        hi = lo
    return np.concatenate(nodes), np.concatenate(weights)
