from __future__ import annotations

from fastapi import APIRouter, Depends, Query

from apps.api.app.security import require_api_key
from packages.kleinian.oracle import run_identity_suite
from packages.kleinian.schemas import IdentityCheckPayload, build_identity_report
from packages.kleinian.sympoly import verify_printed_identities

router = APIRouter(dependencies=[Depends(require_api_key)])


@router.get("/identities", response_model=list[IdentityCheckPayload])
def identities(
    oracle: bool = Query(False, description="Also run the random matrix oracle suite."),
    samples: int = Query(10, ge=1, le=1000),
    depth: int = Query(8, ge=1, le=16),
) -> list[IdentityCheckPayload]:
    printed = verify_printed_identities()
    oracle_checks = run_identity_suite(samples=samples, depth=depth) if oracle else []
    return build_identity_report(printed, oracle_checks)
