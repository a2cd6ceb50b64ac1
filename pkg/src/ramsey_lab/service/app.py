"""HTTP service exposing the laboratory over JSON.

Thin by design: every route validates with pydantic, calls one core
function, and reshapes the result.  Domain errors (ValueError) map to
HTTP 400.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..analytic import ThresholdParams, threshold_summary
from ..arrows import decide_arrow
from ..graphs import random_halving, sample_gnp
from ..harness import (
    SweepConfig,
    _compose_event,
    density_property_check,
    run_sweep,
    verify_halving_statistical,
)
from ..rng import RngStream
from ..witness import contains_book, contains_kmn
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="ramsey-lab",
        version=__version__,
        description=(
            "Random-graph laboratory: G(N,p) sampling, random halvings, "
            "pattern containment, arrow queries, threshold formulas, and "
            "Monte Carlo sweeps."
        ),
    )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/graphs/sample", response_model=schemas.SampleResponse)
    def sample(req: schemas.SampleRequest) -> schemas.SampleResponse:
        g = sample_gnp(req.vertex_count, req.p, RngStream(req.seed))
        return schemas.SampleResponse(
            graph=schemas.GraphPayload.from_graph(g), edge_count=g.edge_count
        )

    @app.post("/graphs/halve", response_model=schemas.HalveResponse)
    def halve(req: schemas.HalveRequest) -> schemas.HalveResponse:
        split = random_halving(req.graph.to_graph(), RngStream(req.seed))
        return schemas.HalveResponse(
            red=schemas.GraphPayload.from_graph(split.red),
            blue=schemas.GraphPayload.from_graph(split.blue),
        )

    @app.post("/containment/check", response_model=schemas.ContainmentResponse)
    def containment(req: schemas.ContainmentRequest) -> schemas.ContainmentResponse:
        check = contains_kmn if req.pattern == "kmn" else contains_book
        witness = check(req.graph.to_graph(), req.m, req.n)
        if witness is None:
            return schemas.ContainmentResponse(found=False)
        return schemas.ContainmentResponse(
            found=True,
            witness=schemas.WitnessPayload(
                core=list(witness.core), leaves=list(witness.leaves)
            ),
        )

    @app.post("/arrow/decide", response_model=schemas.ArrowResponse)
    def arrow(req: schemas.ArrowRequest) -> schemas.ArrowResponse:
        report = decide_arrow(
            req.graph.to_graph(),
            mode=req.mode,
            pattern_kind=req.pattern,
            m=req.m,
            n=req.n,
            trials=req.trials,
            rng=RngStream(req.seed),
        )
        return schemas.ArrowResponse(
            verdict=report.verdict,
            tier=report.tier,
            exact=report.exact,
            red_edges=report.split.red.edge_count if report.split else None,
            blue_edges=report.split.blue.edge_count if report.split else None,
        )

    @app.post("/thresholds", response_model=schemas.ThresholdsResponse)
    def thresholds(req: schemas.ThresholdsRequest) -> schemas.ThresholdsResponse:
        params = ThresholdParams(m=req.m, c=req.c, n=req.n, omega=req.omega, M=req.M)
        return schemas.ThresholdsResponse(**threshold_summary(params))

    @app.post("/sweeps/run", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
        event = _compose_event(
            req.event, req.pattern, req.rule, req.m, req.n, req.refute_trials
        )
        config = SweepConfig(
            c=req.c,
            m=req.m,
            n=req.n,
            event=event,
            p_grid=tuple(req.p_grid),
            trials=req.trials,
            seed=req.seed,
        )
        result = run_sweep(config, workers=req.workers)
        return schemas.SweepResponse(
            N=config.N,
            rows=[schemas.SweepRowModel(**asdict(r)) for r in result.rows],
            csv=result.to_csv(),
        )

    @app.post("/halving/verify", response_model=schemas.VerifyHalvingResponse)
    def verify_halving(req: schemas.VerifyHalvingRequest) -> schemas.VerifyHalvingResponse:
        report = verify_halving_statistical(
            req.vertex_count,
            req.p,
            req.samples,
            RngStream(req.seed),
            red_bias=req.red_bias,
        )
        return schemas.VerifyHalvingResponse(**asdict(report))

    @app.post("/density/check", response_model=schemas.DensityResponse)
    def density(req: schemas.DensityRequest) -> schemas.DensityResponse:
        report = density_property_check(
            req.graph.to_graph(),
            req.p,
            [(pair.x, pair.y) for pair in req.pairs],
        )
        return schemas.DensityResponse(
            threshold=report.threshold,
            rows=[schemas.PairDensityModel(**asdict(r)) for r in report.rows],
            all_pass=report.all_pass,
        )

    return app


app = create_app()
