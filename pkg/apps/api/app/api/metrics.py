from __future__ import annotations

from fastapi import APIRouter, Depends, Response
from prometheus_client import CONTENT_TYPE_LATEST, generate_latest

from apps.api.app.security import require_api_key
from packages.kleinian.observability.metrics import get_registry


def build_metrics_router(path: str) -> APIRouter:
    """Prometheus exposition of the kleinian registry, mounted only when metrics are enabled."""
    router = APIRouter(dependencies=[Depends(require_api_key)])

    def exposition() -> Response:
        return Response(content=generate_latest(get_registry()), media_type=CONTENT_TYPE_LATEST)

    router.add_api_route(path, exposition, methods=["GET"], include_in_schema=False)
    return router
