from __future__ import annotations

from fastapi import APIRouter, Depends, HTTPException

from apps.api.app.security import require_api_key
from packages.kleinian.catalog import catalog_entries, lookup
from packages.kleinian.schemas import CatalogEntryPayload, CatalogPayload

router = APIRouter(dependencies=[Depends(require_api_key)])


@router.get("/catalog", response_model=CatalogPayload)
def list_catalog() -> CatalogPayload:
    return CatalogPayload(
        entries=[CatalogEntryPayload.from_entry(entry) for entry in catalog_entries()]
    )


@router.get("/catalog/{name}", response_model=CatalogEntryPayload)
def get_catalog_entry(name: str) -> CatalogEntryPayload:
    try:
        entry = lookup(name)
    except KeyError as exc:
        raise HTTPException(status_code=404, detail="Catalog entry not found") from exc
    return CatalogEntryPayload.from_entry(entry)
