"""FastAPI application exposing the computations over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    InconsistentModel,
    MulseriesError,
    TheoremViolation,
)
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="mulseries",
        version=__version__,
        description=(
            "Jumping numbers, multiplier ideals and their Poincare series "
            "for simple complete ideals at smooth surface points."
        ),
    )

    @app.exception_handler(MulseriesError)
    async def _domain_error(request: Request, exc: MulseriesError) -> JSONResponse:
        # Broken internal invariants are server errors; bad input is not.
        status = 500 if isinstance(exc, (TheoremViolation, InconsistentModel)) else 400
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    # Handlers are CPU bound and synchronous; plain functions let the
    # framework run them on its worker pool instead of the event loop.

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/info", response_model=schemas.InfoResponse)
    def info(request: schemas.InfoRequest) -> schemas.InfoResponse:
        return handlers.info(request)

    @app.post("/jumps", response_model=schemas.JumpsResponse)
    def jumps(request: schemas.JumpsRequest) -> schemas.JumpsResponse:
        return handlers.jumps(request)

    @app.post("/ideal", response_model=schemas.IdealResponse)
    def ideal(request: schemas.IdealRequest) -> schemas.IdealResponse:
        return handlers.ideal(request)

    @app.post("/series", response_model=schemas.SeriesResponse)
    def series(request: schemas.SeriesRequest) -> schemas.SeriesResponse:
        return handlers.series(request)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(request: schemas.VerifyRequest) -> schemas.VerifyResponse:
        return handlers.verify(request)

    return app


app = create_app()
