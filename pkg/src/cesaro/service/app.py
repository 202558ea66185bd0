"""FastAPI service wrapping the core package.

Start with `cesaro serve` or `uvicorn cesaro.service.app:app`.  The CLI talks
to this app in-process by default, so every CLI code path exercises the same
request/response models a remote client would use.
"""

import math
import warnings

from fastapi import FastAPI, HTTPException

from .. import config, criteria, measures, norms, verify
from ..criteria import boundedness_verdict, compactness_probe, growth_probe, report_record
from ..operators import CesaroOperator, apply_coefficient_form
from .schemas import (
    ApplyRequest,
    ApplyResponse,
    CompactnessPoint,
    CriterionRecord,
    CriterionRequest,
    GrowthPoint,
    HealthResponse,
    IntegralCriterionRecord,
    MomentsRequest,
    MomentsResponse,
    NormKind,
    NormRequest,
    NormResponse,
    SeriesPayload,
    TheoremRequest,
    TheoremResponse,
    VerifyCase,
    VerifyRequest,
    VerifyResponse,
)

_VERSION = "0.1.0"


def _cap_degree(n: int) -> None:
    cap = config.max_degree()
    if n > cap:
        raise HTTPException(
            status_code=422,
            detail=f"degree {n} exceeds the configured cap {cap} "
                   f"(override with {config.MAX_DEGREE_ENV})",
        )


def _parse_measure(text: str):
    try:
        return measures.parse_measure(text)
    except measures.MeasureSpecError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def create_app() -> FastAPI:
    app = FastAPI(title="cesaro", version=_VERSION)

    @app.exception_handler(ValueError)
    async def _value_error(request, exc):  # noqa: ANN001 - fastapi signature
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=_VERSION, max_degree=config.max_degree())

    @app.post("/moments", response_model=MomentsResponse)
    def compute_moments(req: MomentsRequest) -> MomentsResponse:
        _cap_degree(req.n)
        mu = _parse_measure(req.measure)
        mseq = measures.moments(mu, req.n)
        validation = measures.validate_moments(mseq, depth=req.depth)
        family, params = measures.measure_record(mu)
        return MomentsResponse(
            family=family,
            params=params,
            n=req.n,
            moments=[float(v) for v in mseq.moments],
            validated=validation.ok,
            first_violation=validation.violation,
        )

    @app.post("/apply", response_model=ApplyResponse)
    def apply_operator(req: ApplyRequest) -> ApplyResponse:
        f = req.series.to_power_series()
        _cap_degree(f.degree)
        mu = _parse_measure(req.measure)
        op = CesaroOperator.build(mu, req.alpha, f.degree)
        image = apply_coefficient_form(op, f)
        return ApplyResponse(degree=image.degree, series=SeriesPayload.from_power_series(image))

    @app.post("/norm", response_model=NormResponse)
    def compute_norm(req: NormRequest) -> NormResponse:
        f = req.series.to_power_series()
        _cap_degree(f.degree)
        if req.norm is NormKind.BLOCH:
            report = norms.bloch_norm(f)
        elif req.norm is NormKind.BESOV:
            if req.p is None:
                raise HTTPException(status_code=422, detail="besov norm requires p")
            report = norms.besov_norm(f, req.p)
        elif req.norm is NormKind.BESOV1:
            report = norms.besov1_norm(f)
        else:
            if req.s is None:
                raise HTTPException(status_code=422, detail="mean-lipschitz norm requires s")
            report = norms.mean_lipschitz_norm(f, req.s)
        return NormResponse(
            norm=req.norm,
            value=report.value,
            radial_points=report.radial_points,
            angular_points=report.angular_points,
            richardson_delta=report.richardson_delta if math.isfinite(report.richardson_delta) else 0.0,
        )

    @app.post("/criterion", response_model=CriterionRecord)
    def run_criterion(req: CriterionRequest) -> CriterionRecord:
        _cap_degree(req.n)
        mu = _parse_measure(req.measure)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", criteria.HypothesisWarning)
            report = boundedness_verdict(mu, req.alpha, req.p, n_max=req.n)
        return CriterionRecord(**report_record(report, mu))

    @app.post("/theorem", response_model=TheoremResponse)
    def run_theorem(req: TheoremRequest) -> TheoremResponse:
        _cap_degree(req.n)
        _cap_degree(max(req.degrees))
        mu = _parse_measure(req.measure)
        hypothesis = None
        bound = max(1.0, 1.0 / req.alpha)
        if req.p < bound - 1e-12:
            hypothesis = (f"criterion calibrated for p >= max(1, 1/alpha) = {bound:g}; "
                          f"got p = {req.p:g}")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", criteria.HypothesisWarning)
            report = boundedness_verdict(mu, req.alpha, req.p, n_max=req.n)
            integral = None
            if abs(req.p - 1.0) <= 1e-12:
                irep = criteria.criterion_integral_p1(mu, req.alpha)
                integral = IntegralCriterionRecord(
                    alpha=irep.alpha,
                    cutoff_exponents=irep.cutoff_exponents,
                    values=[float(v) for v in irep.values],
                    tail_slope=float(irep.tail_slope) if math.isfinite(irep.tail_slope) else None,
                    verdict=irep.verdict.value,
                )
            growth = growth_probe(mu, req.alpha, req.p, req.degrees)
            ratios = [r for _, r in growth]
            window = (max(ratios) / min(ratios)) if min(ratios) > 0 else math.inf
            compact = None
            if report.verdict is criteria.Verdict.CONVERGES:
                compact = [
                    CompactnessPoint(k=k, norm=v)
                    for k, v in compactness_probe(mu, req.alpha, req.p)
                ]
        return TheoremResponse(
            criterion=CriterionRecord(**report_record(report, mu)),
            integral_criterion=integral,
            growth=[GrowthPoint(degree=d, ratio=r) for d, r in growth],
            growth_window=window,
            compactness=compact,
            hypothesis_warning=hypothesis,
        )

    @app.post("/verify", response_model=VerifyResponse)
    def run_verification(req: VerifyRequest) -> VerifyResponse:
        try:
            result = verify.run_suite(req.lemma)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        return VerifyResponse(
            lemma=result.suite,
            passed=result.passed,
            cases=[
                VerifyCase(label=c.label, passed=c.passed,
                           detail={k: float(v) for k, v in c.detail.items()})
                for c in result.cases
            ],
        )

    return app


app = create_app()
