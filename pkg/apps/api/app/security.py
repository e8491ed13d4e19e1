from __future__ import annotations

import logging
import secrets

from fastapi import Header, HTTPException, Request

from packages.kleinian.settings import settings

logger = logging.getLogger(__name__)


def require_api_key(
    request: Request, x_api_key: str | None = Header(default=None, alias="X-API-Key")
) -> None:
    """Reject the request unless X-API-Key matches API_KEY; no key configured means open."""
    expected = settings.api_key.strip()
    if not expected:
        return
    if x_api_key and secrets.compare_digest(x_api_key.encode(), expected.encode()):
        return
    logger.warning(
        "api_key_rejected",
        extra={"path": request.url.path, "key_present": x_api_key is not None},
    )
    raise HTTPException(status_code=401, detail="Invalid API key")
