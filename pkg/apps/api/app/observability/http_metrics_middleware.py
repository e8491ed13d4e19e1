from __future__ import annotations

import time
from collections.abc import Awaitable, Callable

from fastapi import Request
from starlette.middleware.base import BaseHTTPMiddleware
from starlette.responses import Response
from starlette.routing import Match

from packages.kleinian.observability.metrics import record_http_request

UNMATCHED_PATH = "unmatched"


def route_template(request: Request) -> str:
    """Route template such as /catalog/{name}; unknown paths share one label."""
    route = request.scope.get("route")
    if route is not None and hasattr(route, "path"):
        return str(route.path)
    for candidate in request.app.router.routes:
        match, _ = candidate.matches(request.scope)
        if match is Match.FULL and hasattr(candidate, "path"):
            return str(candidate.path)
    return UNMATCHED_PATH


class HttpMetricsMiddleware(BaseHTTPMiddleware):
    async def dispatch(
        self, request: Request, call_next: Callable[[Request], Awaitable[Response]]
    ) -> Response:
        start = time.perf_counter()
        status_code = 500
        try:
            response = await call_next(request)
            status_code = response.status_code
            return response
        finally:
            record_http_request(
                request.method, route_template(request), status_code, time.perf_counter() - start
            )
