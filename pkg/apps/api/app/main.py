from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from apps.api.app.api import catalog, characters, health, identities
from apps.api.app.api import (
    metrics as metrics_api,
)
from apps.api.app.middleware import RequestContextMiddleware
from apps.api.app.observability.http_metrics_middleware import HttpMetricsMiddleware
from packages.kleinian.errors import KleinianError
from packages.kleinian.logging import configure_logging
from packages.kleinian.settings import settings

configure_logging("api", settings.log_level, force=True)


def _validate_api_key_settings() -> None:
    if settings.require_api_key and not settings.api_key.strip():
        raise RuntimeError(
            "REQUIRE_API_KEY=true but API_KEY is missing or blank. "
            "Set API_KEY to start the API."
        )


@asynccontextmanager
async def lifespan(_: FastAPI) -> AsyncIterator[None]:
    _validate_api_key_settings()
    yield


async def kleinian_error_handler(_: Request, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"detail": {"error": type(exc).__name__, "message": str(exc)}},
    )


def create_app() -> FastAPI:
    app = FastAPI(title="Kleinian Trace Inequalities", lifespan=lifespan)

    app.add_middleware(
        CORSMiddleware,
        allow_origins=settings.cors_origins_list(),
        allow_credentials=False,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    app.add_middleware(RequestContextMiddleware)
    if settings.metrics_enabled:
        app.add_middleware(HttpMetricsMiddleware)

    app.add_exception_handler(KleinianError, kleinian_error_handler)

    app.include_router(health.router)
    app.include_router(characters.router)
    app.include_router(catalog.router)
    app.include_router(identities.router)

    if settings.metrics_enabled:
        app.include_router(metrics_api.build_metrics_router(settings.metrics_path))
    return app


app = create_app()
