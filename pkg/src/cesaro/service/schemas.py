"""Pydantic request/response models for the service endpoints."""

from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..series import PowerSeries


class SeriesPayload(BaseModel):
    """Power-series coefficients as parallel real/imag lists (imag optional)."""

    real: List[float]
    imag: Optional[List[float]] = None

    def to_power_series(self) -> PowerSeries:
        re = np.asarray(self.real, dtype=float)
        if self.imag is None:
            return PowerSeries(re)
        im = np.asarray(self.imag, dtype=float)
        if im.size != re.size:
            raise ValueError("real and imag parts must have equal length")
        return PowerSeries(re + 1j * im)

    @classmethod
    def from_power_series(cls, f: PowerSeries) -> "SeriesPayload":
        return cls(real=[float(x) for x in f.coeffs.real],
                   imag=[float(x) for x in f.coeffs.imag])


class HealthResponse(BaseModel):
    status: str
    version: str
    max_degree: int


class MomentsRequest(BaseModel):
    measure: str
    n: int = Field(ge=0)
    depth: int = Field(default=4, ge=1, le=8)


class MomentsResponse(BaseModel):
    family: str
    params: dict
    n: int
    moments: List[float]
    validated: bool
    first_violation: Optional[Tuple[int, int]] = None


class ApplyRequest(BaseModel):
    measure: str
    alpha: float = Field(gt=0)
    series: SeriesPayload


class ApplyResponse(BaseModel):
    degree: int
    series: SeriesPayload


class NormKind(str, Enum):
    BLOCH = "bloch"
    BESOV = "besov"
    BESOV1 = "besov1"
    MEAN_LIPSCHITZ = "mean-lipschitz"


class NormRequest(BaseModel):
    norm: NormKind
    series: SeriesPayload
    p: Optional[float] = None
    s: Optional[float] = None


class NormResponse(BaseModel):
    norm: NormKind
    value: float
    radial_points: int
    angular_points: int
    richardson_delta: float


class CriterionRequest(BaseModel):
    measure: str
    alpha: float = Field(gt=0)
    p: float = Field(ge=1)
    n: int = Field(default=1 << 14, ge=1 << 10)


class CriterionRecord(BaseModel):
    """The JSON report schema for a criterion run."""

    family: str
    params: dict
    alpha: float
    p: float
    partial_sums: List[float]
    tail_slope: Optional[float]
    verdict: str
    analytic_verdict: Optional[str]


class IntegralCriterionRecord(BaseModel):
    alpha: float
    cutoff_exponents: List[int]
    values: List[float]
    tail_slope: Optional[float]
    verdict: str


class TheoremRequest(BaseModel):
    measure: str
    alpha: float = Field(gt=0)
    p: float = Field(ge=1)
    n: int = Field(default=1 << 14, ge=1 << 10)
    degrees: List[int] = Field(default=[256, 512, 1024, 2048, 4096])


class GrowthPoint(BaseModel):
    degree: int
    ratio: float


class CompactnessPoint(BaseModel):
    k: int
    norm: float


class TheoremResponse(BaseModel):
    criterion: CriterionRecord
    integral_criterion: Optional[IntegralCriterionRecord] = None
    growth: List[GrowthPoint]
    growth_window: float
    compactness: Optional[List[CompactnessPoint]] = None
    hypothesis_warning: Optional[str] = None


class VerifyRequest(BaseModel):
    lemma: str


class VerifyCase(BaseModel):
    label: str
    passed: bool
    detail: Dict[str, float]


class VerifyResponse(BaseModel):
    lemma: str
    passed: bool
    cases: List[VerifyCase]
