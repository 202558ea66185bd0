"""Truncated power series on the unit disk: arithmetic and coefficient families."""

import csv

from dataclasses import dataclass

import numpy as np

from .specfun import gamma_ratio_sequence

__all__ = [
    "PowerSeries",
    "cauchy_product",
    "binomial_series",
    "log_series",
    "log_power_series",
    "monomial",
    "save_coefficients",
    "load_coefficients",
    "DEFAULT_DEGREE",
]

DEFAULT_DEGREE = 1 << 12


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor series sum_{n<=N} a_n z^n with complex coefficients.

    Coefficients are frozen at construction; all operations return new series.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("PowerSeries needs a non-empty 1-D coefficient array")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def eval(self, z):
        """Horner evaluation at points strictly inside the unit disk.

        Accepts a scalar or an ndarray.  Accuracy very close to the boundary
        (|z| > 0.999) is limited by the truncation itself, not the evaluation.
        """
        arr = np.asarray(z, dtype=np.complex128)
        if np.any(np.abs(arr) >= 1.0):
            raise ValueError("power series evaluation requires |z| < 1")
        vals = np.polynomial.polynomial.polyval(arr, self.coeffs)
        if arr.ndim == 0:
            return complex(vals)
        return vals

    def __call__(self, z):
        return self.eval(z)

    def derivative(self, order: int = 1) -> "PowerSeries":
        """Coefficient-wise derivative of order 1 or 2 (degree must allow it)."""
        if order not in (1, 2):
            raise ValueError(f"derivative order must be 1 or 2, got {order!r}")
        if self.degree < order:
            raise ValueError(f"derivative of order {order} needs degree >= {order}")
        c = self.coeffs
        for _ in range(order):
            c = c[1:] * np.arange(1, c.size)
        return PowerSeries(c)


def cauchy_product(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Coefficient convolution of f and g, truncated at min(deg f, deg g)."""
    n = min(f.degree, g.degree)
    return PowerSeries(np.convolve(f.coeffs, g.coeffs)[: n + 1])


def binomial_series(beta: float, n_max: int = DEFAULT_DEGREE) -> PowerSeries:
    """Truncation of (1 - z)^(-beta): coefficients Gamma(n+beta)/(Gamma(beta) n!)."""
    if not beta > 0:
        raise ValueError(f"binomial_series requires beta > 0, got {beta!r}")
    return PowerSeries(gamma_ratio_sequence(beta, n_max))


def log_series(n_max: int = DEFAULT_DEGREE) -> PowerSeries:
    """Truncation of log(1/(1-z)) = sum_{k>=1} z^k / k."""
    if n_max < 1:
        raise ValueError(f"log_series requires n_max >= 1, got {n_max!r}")
    c = np.zeros(n_max + 1)
    c[1:] = 1.0 / np.arange(1, n_max + 1)
    return PowerSeries(c)


def log_power_series(beta: float, gamma: int, n_max: int = DEFAULT_DEGREE) -> PowerSeries:
    """Truncation of (1 - z)^(-beta) log^gamma(2/(1-z)).

    beta >= 0 and integer gamma >= 0, with gamma >= 1 required when beta = 0
    (the beta = 0, gamma = 0 case is the constant 1 and not useful here).
    Coefficients grow like n^(beta-1) log^gamma(n+1) (and, for beta = 0 with
    gamma >= 1, like n^(-1) log^(gamma-1)(n+1)).
    """
    if beta < 0:
        raise ValueError(f"log_power_series requires beta >= 0, got {beta!r}")
    if gamma < 0 or int(gamma) != gamma:
        raise ValueError(f"log_power_series requires integer gamma >= 0, got {gamma!r}")
    gamma = int(gamma)
    if beta == 0 and gamma < 1:
        raise ValueError("log_power_series with beta = 0 requires gamma >= 1")
    # log(2/(1-z)) = log 2 + sum_{k>=1} z^k / k
    base = np.zeros(n_max + 1)
    base[0] = np.log(2.0)
    base[1:] = 1.0 / np.arange(1, n_max + 1)
    log_factor = PowerSeries(base)
    if beta > 0:
        out = binomial_series(beta, n_max)
    else:
        out = log_factor
        gamma -= 1
    for _ in range(gamma):
        out = cauchy_product(out, log_factor)
    return out


def monomial(k: int, n_max: int | None = None) -> PowerSeries:
    """The series z^k, optionally zero-padded out to degree n_max."""
    if k < 0:
        raise ValueError(f"monomial requires k >= 0, got {k!r}")
    n = k if n_max is None else n_max
    if n < k:
        raise ValueError("monomial padding degree must be >= k")
    c = np.zeros(n + 1)
    c[k] = 1.0
    return PowerSeries(c)


def save_coefficients(f: PowerSeries, path) -> None:
    """Write coefficients as CSV with header index,real,imag."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "real", "imag"])
        for n, c in enumerate(f.coeffs):
            writer.writerow([n, repr(float(c.real)), repr(float(c.imag))])


def load_coefficients(path) -> PowerSeries:
    """Read a coefficient CSV (index,real,imag) back into a PowerSeries."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:3]] != ["index", "real", "imag"]:
            raise ValueError(f"{path}: expected header 'index,real,imag'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                idx, re_part, im_part = int(row[0]), float(row[1]), float(row[2])
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad coefficient row {row!r}") from exc
            rows.append((idx, re_part, im_part))
    if not rows:
        raise ValueError(f"{path}: no coefficient rows")
    rows.sort()
    if [r[0] for r in rows] != list(range(len(rows))):
        raise ValueError(f"{path}: coefficient indices must be 0..N without gaps")
    return PowerSeries(np.array([complex(re, im) for _, re, im in rows]))
