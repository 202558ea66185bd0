"""Generalized Cesaro-like averaging operators on the unit disk.

Core pieces: power-moment sequences of measures on [0, 1), the averaging
operator in coefficient and integral form, function-space norm estimators
(Bloch, Besov, mean-Lipschitz), and the moment-summability criteria that
decide boundedness.  A FastAPI service (cesaro.service) and a thin CLI
(cesaro.cli) expose the same operations.
"""

from .measures import (
    Atoms,
    BetaDensity,
    GenericDensity,
    IntegrabilityError,
    LEBESGUE,
    LogBetaDensity,
    Measure,
    MeasureSpecError,
    MomentSequence,
    format_measure,
    moments,
    parse_measure,
    tail_exponent_fit,
    validate_moments,
)
from .operators import (
    CesaroOperator,
    apply_coefficient_form,
    apply_integral_form,
    derivative_integral_form,
    inner_sum,
    second_derivative_integral_form,
)
from .norms import (
    NormReport,
    besov1_norm,
    besov_norm,
    besov_pairing,
    bloch_norm,
    circle_kernel_integral,
    coefficient_besov_sum,
    dyadic_block_equivalence,
    integral_mean,
    mean_lipschitz_norm,
)
from .criteria import (
    CriterionReport,
    Verdict,
    boundedness_verdict,
    compactness_probe,
    criterion_integral_p1,
    criterion_sum,
    growth_probe,
    radial_majorant,
)
from .series import (
    PowerSeries,
    binomial_series,
    cauchy_product,
    log_power_series,
    log_series,
    monomial,
)
from .specfun import beta_fn, gamma_ratio, log_gamma
from .verify import run_suite, suite_names

__version__ = "0.1.0"

__all__ = [
    "Atoms",
    "BetaDensity",
    "CesaroOperator",
    "CriterionReport",
    "GenericDensity",
    "IntegrabilityError",
    "LEBESGUE",
    "LogBetaDensity",
    "Measure",
    "MeasureSpecError",
    "MomentSequence",
    "NormReport",
    "PowerSeries",
    "Verdict",
    "apply_coefficient_form",
    "apply_integral_form",
    "besov1_norm",
    "besov_norm",
    "besov_pairing",
    "beta_fn",
    "binomial_series",
    "bloch_norm",
    "boundedness_verdict",
    "cauchy_product",
    "circle_kernel_integral",
    "coefficient_besov_sum",
    "compactness_probe",
    "criterion_integral_p1",
    "criterion_sum",
    "derivative_integral_form",
    "dyadic_block_equivalence",
    "format_measure",
    "gamma_ratio",
    "growth_probe",
    "inner_sum",
    "integral_mean",
    "log_gamma",
    "log_power_series",
    "log_series",
    "mean_lipschitz_norm",
    "moments",
    "monomial",
    "parse_measure",
    "radial_majorant",
    "run_suite",
    "second_derivative_integral_form",
    "suite_names",
    "tail_exponent_fit",
    "validate_moments",
]
