from __future__ import annotations

import logging

from fastapi import APIRouter, Depends

from apps.api.app.security import require_api_key
from packages.kleinian.inequalities import battery
from packages.kleinian.oracle import realize
from packages.kleinian.recursions import subgroup_character
from packages.kleinian.schemas import (
    BatteryPayload,
    CharacterPayload,
    CheckRequest,
    RealizationPayload,
    RealizeRequest,
    SubgroupRequest,
)

router = APIRouter(dependencies=[Depends(require_api_key)])
logger = logging.getLogger(__name__)


@router.post("/characters/check", response_model=BatteryPayload)
def check_character(payload: CheckRequest) -> BatteryPayload:
    result = battery(
        payload.character.to_character(),
        depth=payload.depth,
        assumptions=payload.assumptions(),
    )
    return BatteryPayload.from_result(result)


@router.post("/characters/realize", response_model=RealizationPayload)
def realize_character(payload: RealizeRequest) -> RealizationPayload:
    return RealizationPayload.from_realization(realize(payload.character.to_character()))


@router.post("/characters/subgroup", response_model=CharacterPayload)
def derived_subgroup(payload: SubgroupRequest) -> CharacterPayload:
    char = subgroup_character(payload.character.to_character(), payload.family, payload.n)
    logger.info("subgroup_character", extra={"family": payload.family.value, "n": payload.n})
    return CharacterPayload.from_character(char)
