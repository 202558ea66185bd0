"""Finite positive measures on [0, 1) and their power-moment sequences.

Four measure families are supported: finite atom lists, the beta-type density
c (1-t)^(s-1) dt, the same density with a logarithmic factor
c (1-t)^(s-1) log^gamma(e/(1-t)) dt, and an arbitrary density callback.
Moments mu_n = integral of t^n d mu(t) come from closed forms where available
and otherwise from a graded Gauss-Legendre rule in u = 1 - t whose lower
cutoff is chosen so the discarded sliver near t = 1 stays below
1e-14 * mu_0 uniformly in n.
"""

import math
import re

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Tuple, Union

import numpy as np

from .quadrature import graded_rule, panel_rule

__all__ = [
    "Atoms",
    "BetaDensity",
    "LogBetaDensity",
    "GenericDensity",
    "Measure",
    "LEBESGUE",
    "MomentSequence",
    "MomentValidation",
    "TailFit",
    "IntegrabilityError",
    "MeasureSpecError",
    "moments",
    "validate_moments",
    "tail_exponent_fit",
    "measure_quadrature",
    "dyadic_shell_integrals",
    "parse_measure",
    "format_measure",
    "measure_record",
]


class IntegrabilityError(ValueError):
    """Raised when a density is (or looks) non-integrable near t = 1."""


class MeasureSpecError(ValueError):
    """Measure text-format parse failure; carries the 1-based column."""

    def __init__(self, message: str, column: int = 1):
        super().__init__(f"{message} (column {column})")
        self.column = column


@dataclass(frozen=True)
class Atoms:
    """Finite sum of point masses sum_j w_j delta_{t_j} with t_j in [0, 1)."""

    points: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(t), float(w)) for t, w in self.points)
        if not pts:
            raise ValueError("Atoms needs at least one (location, weight) pair")
        for t, w in pts:
            if not (0.0 <= t < 1.0):
                raise ValueError(f"atom location must lie in [0, 1), got {t!r}")
            if not w > 0:
                raise ValueError(f"atom weight must be positive, got {w!r}")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class BetaDensity:
    """Density c (1-t)^(s-1) dt on [0, 1); c, s > 0.  s = 1 is Lebesgue measure."""

    c: float
    s: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"BetaDensity requires c > 0, got {self.c!r}")
        if not self.s > 0:
            raise ValueError(f"BetaDensity requires s > 0, got {self.s!r}")


@dataclass(frozen=True)
class LogBetaDensity:
    """Density c (1-t)^(s-1) log^gamma(e/(1-t)) dt on [0, 1); integer gamma >= 0."""

    c: float
    s: float
    gamma: int

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"LogBetaDensity requires c > 0, got {self.c!r}")
        if not self.s > 0:
            raise ValueError(f"LogBetaDensity requires s > 0, got {self.s!r}")
        if self.gamma < 0 or int(self.gamma) != self.gamma:
            raise ValueError(f"LogBetaDensity requires integer gamma >= 0, got {self.gamma!r}")
        object.__setattr__(self, "gamma", int(self.gamma))


@dataclass(frozen=True)
class GenericDensity:
    """Arbitrary nonnegative density callback rho(t); vectorized over ndarray t.

    The caller must declare integrability near t = 1; moments of a measure
    declared (or detected) non-integrable raise IntegrabilityError.
    """

    density: Callable
    integrable_near_one: bool = True


Measure = Union[Atoms, BetaDensity, LogBetaDensity, GenericDensity]

LEBESGUE = BetaDensity(1.0, 1.0)


@dataclass(frozen=True)
class MomentSequence:
    """Moments mu_n for n = 0..n_max together with the measure they came from."""

    moments: np.ndarray
    source: Measure

    def __post_init__(self):
        arr = np.array(self.moments, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("MomentSequence needs a non-empty 1-D array")
        arr.setflags(write=False)
        object.__setattr__(self, "moments", arr)

    @property
    def n_max(self) -> int:
        return self.moments.size - 1


# ---------------------------------------------------------------------------
# moment computation

# Discarded (1 - u_lo, 1) sliver, relative to mu_0; t^n <= 1 makes the bound
# uniform in n.
_TAIL_SHARE = 1e-14
_QUAD_ORDER = 20
_GENERIC_U_LO = 1e-13
_CHUNK = 1024


def _u_density(mu):
    """Density as a vectorized function of u = 1 - t (avoids 1 - t cancellation)."""
    if isinstance(mu, BetaDensity):
        return lambda u: mu.c * u ** (mu.s - 1.0)
    if isinstance(mu, LogBetaDensity):
        return lambda u: mu.c * u ** (mu.s - 1.0) * (1.0 - np.log(u)) ** mu.gamma
    if isinstance(mu, GenericDensity):
        return lambda u: np.asarray(mu.density(1.0 - u), dtype=float)
    raise TypeError(f"no density for {type(mu).__name__}")


def _beta_type_tail(c: float, s: float, gamma: int, eps: float) -> float:
    """Exact integral of c u^(s-1) (1 - ln u)^gamma over (0, eps]."""
    a = 1.0 - math.log(eps)
    total = sum(
        math.comb(gamma, j) * a ** (gamma - j) * math.factorial(j) / s ** (j + 1)
        for j in range(gamma + 1)
    )
    return c * eps**s * total


def _beta_type_u_lo(c: float, s: float, gamma: int) -> float:
    """Largest dyadic u_lo whose tail stays below _TAIL_SHARE * mu_0."""
    mass = _beta_type_tail(c, s, gamma, 1.0)  # this is exactly mu_0
    budget = _TAIL_SHARE * mass
    for k in range(4, 601):
        eps = 2.0 ** (-k)
        if _beta_type_tail(c, s, gamma, eps) <= budget:
            return eps
    raise RuntimeError("could not satisfy the moment tail budget")  # pragma: no cover


def _density_rule(mu):
    """(u nodes, weights * density) so that integral f(u) dmu ~ sum w f(u)."""
    if isinstance(mu, BetaDensity):
        u_lo = _beta_type_u_lo(mu.c, mu.s, 0)
    elif isinstance(mu, LogBetaDensity):
        u_lo = _beta_type_u_lo(mu.c, mu.s, mu.gamma)
    else:
        u_lo = _GENERIC_U_LO
    u, w = graded_rule(u_lo, 1.0, order=_QUAD_ORDER)
    dens = _u_density(mu)(u)
    if np.any(dens < 0):
        raise ValueError("density must be nonnegative on [0, 1)")
    return u, w * dens


def _generic_tail_stub(mu, u_lo: float):
    """Fitted power-law tail mass of a generic density on (0, u_lo].

    Returns (mass, decay_rate) where the moment-n contribution is
    mass * exp(-n * decay_rate).  Raises when the local exponent says the
    density is not integrable.
    """
    rho = _u_density(mu)
    probes = u_lo * np.array([1.0, 2.0, 4.0])
    vals = rho(probes)
    if np.any(vals < 0):
        raise ValueError("density must be nonnegative near t = 1")
    if vals[0] == 0.0:
        return 0.0, 0.0
    q = (math.log(vals[2]) - math.log(vals[0])) / math.log(4.0)
    if q <= -1.0 + 1e-9:
        raise IntegrabilityError(
            f"density behaves like (1-t)^({q:.3f}) near t = 1; not integrable"
        )
    return float(vals[0] * u_lo / (q + 1.0)), float(-math.log1p(-u_lo))


def _quadrature_moments(mu, n_max: int) -> np.ndarray:
    u, wdens = _density_rule(mu)
    log_t = np.log1p(-u)
    ns = np.arange(n_max + 1, dtype=float)
    out = np.empty(n_max + 1)
    for start in range(0, n_max + 1, _CHUNK):
        block = ns[start : start + _CHUNK]
        out[start : start + _CHUNK] = np.exp(np.outer(block, log_t)) @ wdens
    if isinstance(mu, GenericDensity):
        mass, rate = _generic_tail_stub(mu, _GENERIC_U_LO)
        if mass:
            out += mass * np.exp(-rate * ns)
    return out


def _atom_moments(mu: Atoms, n_max: int) -> np.ndarray:
    t = np.array([p[0] for p in mu.points])
    w = np.array([p[1] for p in mu.points])
    return (t[None, :] ** np.arange(n_max + 1)[:, None]) @ w


def _beta_closed_moments(mu: BetaDensity, n_max: int) -> np.ndarray:
    # mu_n = c * B(n+1, s), evaluated through the ratio recurrence
    # B(n+1, s) = B(n, s) * n / (n + s) seeded at B(1, s) = 1/s; this keeps
    # small-n moments exact (Lebesgue gives 1/(n+1) to the last bit) where
    # the log-gamma route would leave ~1e-15 noise on every entry.
    n = np.arange(1, n_max + 1, dtype=float)
    factors = np.concatenate([[1.0 / mu.s], n / (n + mu.s)])
    return mu.c * np.cumprod(factors)


def moments(mu: Measure, n_max: int, method: str = "auto") -> MomentSequence:
    """Moment sequence mu_n = integral t^n dmu(t), n = 0..n_max.

    method "auto" uses closed forms for Atoms and BetaDensity and graded
    quadrature otherwise; "quadrature" forces the quadrature path (used to
    cross-check the closed forms), "closed" demands a closed form.
    """
    if n_max < 0:
        raise ValueError(f"moments requires n_max >= 0, got {n_max!r}")
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown moments method {method!r}")
    if isinstance(mu, GenericDensity) and not mu.integrable_near_one:
        raise IntegrabilityError("density declared non-integrable near t = 1")
    if isinstance(mu, Atoms):
        vals = _atom_moments(mu, n_max)
    elif isinstance(mu, BetaDensity) and method != "quadrature":
        vals = _beta_closed_moments(mu, n_max)
    elif method == "closed":
        raise ValueError(f"no closed-form moments for {type(mu).__name__}")
    else:
        vals = _quadrature_moments(mu, n_max)
    return MomentSequence(vals, mu)


# ---------------------------------------------------------------------------
# moment diagnostics


@dataclass(frozen=True)
class MomentValidation:
    """Outcome of the finite-difference (complete monotonicity) check.

    Truthy when the sequence passes; `violation` holds the first failing
    (n, k) pair otherwise.
    """

    ok: bool
    violation: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_moments(mseq: MomentSequence, depth: int = 4, tol: float = 1e-12) -> MomentValidation:
    """Check (-1)^k Delta^k mu_n >= -tol for all k <= depth.

    A genuine Hausdorff moment sequence has all alternating finite differences
    nonnegative; depth is capped at 8 because higher differences amplify
    floating-point noise beyond usefulness.
    """
    if not (1 <= depth <= 8):
        raise ValueError(f"validate_moments depth must be in 1..8, got {depth!r}")
    cur = mseq.moments.copy()
    bad = np.nonzero(cur < -tol)[0]
    if bad.size:
        return MomentValidation(False, (int(bad[0]), 0))
    for k in range(1, depth + 1):
        if cur.size < 2:
            break
        cur = -np.diff(cur)  # (-1)^k Delta^k mu_n, built up one order at a time
        bad = np.nonzero(cur < -tol)[0]
        if bad.size:
            return MomentValidation(False, (int(bad[0]), k))
    return MomentValidation(True, None)


class TailFit(NamedTuple):
    s_hat: float
    r_squared: float


def tail_exponent_fit(mseq: MomentSequence) -> TailFit:
    """Least-squares slope of log mu_n against log n over n in [N/4, N].

    For polynomially decaying moments mu_n ~ n^(-s) this recovers s; geometric
    decay (atoms) shows up as a huge s_hat and a visibly non-linear fit.
    """
    n_max = mseq.n_max
    if n_max < (1 << 10):
        raise ValueError("tail_exponent_fit needs a sequence of degree >= 1024")
    ns = np.arange(n_max // 4, n_max + 1)
    vals = mseq.moments[ns]
    if np.any(vals <= 0.0):
        raise ValueError("degenerate fit: zero moment inside the fit window")
    x = np.log(ns.astype(float))
    y = np.log(vals)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return TailFit(float(-slope), r2)


# ---------------------------------------------------------------------------
# quadrature views used by the operator and the integral criterion


def measure_quadrature(mu: Measure):
    """Nodes t_i and weights w_i with integral phi dmu ~ sum_i w_i phi(t_i).

    Exact for Atoms; for densities the weights absorb the density values on
    the graded u-grid.  Intended for integrands phi that stay smooth and
    bounded on [0, 1] (the operator's integral forms with |z| <= 0.95).
    """
    if isinstance(mu, Atoms):
        t = np.array([p[0] for p in mu.points])
        w = np.array([p[1] for p in mu.points])
        return t, w
    if isinstance(mu, GenericDensity) and not mu.integrable_near_one:
        raise IntegrabilityError("density declared non-integrable near t = 1")
    u, wdens = _density_rule(mu)
    return 1.0 - u, wdens


def dyadic_shell_integrals(mu: Measure, fn_u: Callable, m_max: int) -> np.ndarray:
    """Integrals of fn_u(1 - t) dmu over the dyadic shells u in (2^-(k+1), 2^-k].

    Shell k = 0..m_max-1; their running sums give the cutoff integrals over
    t <= 1 - 2^-m.  fn_u must be vectorized over u.
    """
    if m_max < 1:
        raise ValueError(f"dyadic_shell_integrals requires m_max >= 1, got {m_max!r}")
    shells = np.zeros(m_max)
    if isinstance(mu, Atoms):
        for t, w in mu.points:
            u = 1.0 - t
            k = min(int(math.floor(-math.log2(u))), m_max) if u < 1.0 else 0
            if k < m_max:
                shells[k] += w * float(fn_u(np.array(u)))
        return shells
    if isinstance(mu, GenericDensity) and not mu.integrable_near_one:
        raise IntegrabilityError("density declared non-integrable near t = 1")
    rho = _u_density(mu)
    for k in range(m_max):
        u, w = panel_rule(2.0 ** (-(k + 1)), 2.0 ** (-k), order=24)
        shells[k] = float(np.sum(w * rho(u) * fn_u(u)))
    return shells


# ---------------------------------------------------------------------------
# text format: "atoms: (0.5,1.0)", "beta: c=1 s=2", "logbeta: c=1 s=2 g=1"

_ATOM_TOKEN = re.compile(r"\(\s*([^\s(),]+)\s*,\s*([^\s(),]+)\s*\)")
_KEYVAL_TOKEN = re.compile(r"\S+")


def _float_at(text: str, token: str, column: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise MeasureSpecError(f"expected a number, got {token!r}", column) from None


def parse_measure(text: str) -> Measure:
    """Parse the measure mini-format used by the CLI and the service.

    Families: "atoms: (t,w) (t,w) ...", "beta: c=<c> s=<s>",
    "logbeta: c=<c> s=<s> g=<gamma>".  c defaults to 1.  Raises
    MeasureSpecError with a 1-based column on malformed input.
    """
    head, sep, body = text.partition(":")
    family = head.strip().lower()
    if not sep:
        raise MeasureSpecError("expected 'family: parameters'", max(len(text), 1))
    offset = len(head) + 1  # column of the character after ':'
    if family == "atoms":
        points = []
        cursor = 0
        for m in _ATOM_TOKEN.finditer(body):
            gap = body[cursor : m.start()]
            if gap.strip():
                raise MeasureSpecError(
                    f"unexpected text {gap.strip()!r}", offset + cursor + len(gap) - len(gap.lstrip()) + 1
                )
            t = _float_at(text, m.group(1), offset + m.start(1) + 1)
            w = _float_at(text, m.group(2), offset + m.start(2) + 1)
            points.append((t, w))
            cursor = m.end()
        trailing = body[cursor:]
        if trailing.strip():
            raise MeasureSpecError(
                f"unexpected text {trailing.strip()!r}",
                offset + cursor + len(trailing) - len(trailing.lstrip()) + 1,
            )
        if not points:
            raise MeasureSpecError("atoms needs at least one (t,w) pair", offset + 1)
        try:
            return Atoms(tuple(points))
        except ValueError as exc:
            raise MeasureSpecError(str(exc), offset + 1) from None
    if family in ("beta", "logbeta"):
        params = {}
        for m in _KEYVAL_TOKEN.finditer(body):
            token = m.group(0)
            key, eq, val = token.partition("=")
            key = key.strip().lower()
            if not eq or key not in ("c", "s", "g"):
                raise MeasureSpecError(f"expected key=value with key c, s or g, got {token!r}", offset + m.start() + 1)
            if key == "g" and family == "beta":
                raise MeasureSpecError("'g' is only valid for logbeta", offset + m.start() + 1)
            if key in params:
                raise MeasureSpecError(f"duplicate key {key!r}", offset + m.start() + 1)
            params[key] = _float_at(text, val, offset + m.start() + len(key) + 2)
        if "s" not in params:
            raise MeasureSpecError(f"{family} requires s=<value>", offset + 1)
        c = params.get("c", 1.0)
        if family == "logbeta":
            if "g" not in params:
                raise MeasureSpecError("logbeta requires g=<integer>", offset + 1)
            if params["g"] != int(params["g"]):
                raise MeasureSpecError("g must be an integer", offset + 1)
        try:
            if family == "beta":
                return BetaDensity(c, params["s"])
            return LogBetaDensity(c, params["s"], int(params["g"]))
        except ValueError as exc:
            raise MeasureSpecError(str(exc), offset + 1) from None
    raise MeasureSpecError(f"unknown measure family {family!r}", 1)


def format_measure(mu: Measure) -> str:
    """Canonical text form of a measure (inverse of parse_measure)."""
    if isinstance(mu, Atoms):
        return "atoms: " + " ".join(f"({t:g},{w:g})" for t, w in mu.points)
    if isinstance(mu, BetaDensity):
        return f"beta: c={mu.c:g} s={mu.s:g}"
    if isinstance(mu, LogBetaDensity):
        return f"logbeta: c={mu.c:g} s={mu.s:g} g={mu.gamma}"
    raise ValueError(f"{type(mu).__name__} has no text form")


def measure_record(mu: Measure):
    """(family name, JSON-friendly parameter dict) for report serialization."""
    if isinstance(mu, Atoms):
        return "atoms", {"points": [[t, w] for t, w in mu.points]}
    if isinstance(mu, BetaDensity):
        return "beta", {"c": mu.c, "s": mu.s}
    if isinstance(mu, LogBetaDensity):
        return "logbeta", {"c": mu.c, "s": mu.s, "g": mu.gamma}
    return "generic", {"integrable_near_one": mu.integrable_near_one}
