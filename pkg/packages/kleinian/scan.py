"""Battery scans over a rectangle of gamma values at a fixed beta slice.

Rows run from the largest imaginary part down so that PGM output reads like the
complex plane. Rows are scanned independently and merged in row order, so the
output does not depend on the number of workers.
"""

from __future__ import annotations

import csv
import logging
import time
from collections.abc import Iterable
from dataclasses import dataclass
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from typing import BinaryIO, TextIO

import numpy as np

from packages.kleinian.characters import PrincipalCharacter
from packages.kleinian.errors import InvalidScanSpec
from packages.kleinian.inequalities import Verdict, battery, report_names
from packages.kleinian.observability.metrics import record_scan_points
from packages.kleinian.settings import detect_scan_workers

logger = logging.getLogger(__name__)

VERDICT_CODES: dict[Verdict, int] = {
    Verdict.PASSES_ALL: 0,
    Verdict.VIOLATES_UNCONDITIONAL: 2,
    Verdict.VIOLATES_CONDITIONAL: 3,
    Verdict.DEGENERATE: 4,
}
PIXEL_NONE = 0
PIXEL_MAX_INDEX = 254
PIXEL_DEGENERATE = 255
CSV_HEADER = ("re", "im", "verdict_code", "first_violated_name")


@dataclass(frozen=True)
class ScanSpec:
    beta: complex
    gamma_min: complex
    gamma_max: complex
    nx: int
    ny: int
    depth: int = 8

    def __post_init__(self) -> None:
        if self.nx < 2 or self.ny < 2:
            raise InvalidScanSpec(f"resolution must be at least 2x2, got {self.nx}x{self.ny}")
        if self.depth < 1:
            raise InvalidScanSpec("scan depth must be >= 1")
        lo, hi = complex(self.gamma_min), complex(self.gamma_max)
        if not (lo.real < hi.real and lo.imag < hi.imag):
            raise InvalidScanSpec(f"degenerate gamma rectangle [{lo}, {hi}]")

    def real_axis(self) -> np.ndarray:
        return np.linspace(complex(self.gamma_min).real, complex(self.gamma_max).real, self.nx)

    def imag_axis(self) -> np.ndarray:
        return np.linspace(complex(self.gamma_max).imag, complex(self.gamma_min).imag, self.ny)


@dataclass(frozen=True)
class ScanPoint:
    gamma: complex
    verdict: Verdict
    first_violation: str | None

    @property
    def code(self) -> int:
        return VERDICT_CODES[self.verdict]


@dataclass(frozen=True)
class ScanResult:
    spec: ScanSpec
    rows: list[list[ScanPoint]]

    def points(self) -> Iterable[ScanPoint]:
        for row in self.rows:
            yield from row


def scan_row(spec: ScanSpec, row: int) -> list[ScanPoint]:
    imag = float(spec.imag_axis()[row])
    points = []
    for real in spec.real_axis():
        gamma = complex(float(real), imag)
        result = battery(PrincipalCharacter(gamma, spec.beta, -4), depth=spec.depth)
        points.append(ScanPoint(gamma, result.verdict, result.first_violation()))
    return points


def run_scan(spec: ScanSpec, workers: int | None = None) -> ScanResult:
    workers = detect_scan_workers() if workers is None else max(workers, 1)
    started = time.perf_counter()
    task = partial(scan_row, spec)
    if workers == 1:
        rows = [task(row) for row in range(spec.ny)]
    else:
        with Pool(processes=workers) as pool:
            rows = pool.map(task, range(spec.ny))
    result = ScanResult(spec, rows)

    counts: dict[Verdict, int] = {}
    for point in result.points():
        counts[point.verdict] = counts.get(point.verdict, 0) + 1
    for verdict, count in counts.items():
        record_scan_points(verdict.value, count)
    logger.info(
        "scan_complete",
        extra={
            "points": spec.nx * spec.ny,
            "workers": workers,
            "duration_ms": round((time.perf_counter() - started) * 1000, 2),
        },
    )
    return result


def pixel_value(point: ScanPoint, names: list[str]) -> int:
    if point.verdict is Verdict.DEGENERATE:
        return PIXEL_DEGENERATE
    if point.first_violation is None:
        return PIXEL_NONE
    return min(1 + names.index(point.first_violation), PIXEL_MAX_INDEX)


def write_csv(result: ScanResult, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for point in result.points():
        writer.writerow(
            [
                repr(point.gamma.real),
                repr(point.gamma.imag),
                point.code,
                point.first_violation or "",
            ]
        )


def write_pgm(result: ScanResult, stream: BinaryIO) -> None:
    names = report_names(result.spec.depth)
    stream.write(f"P5 {result.spec.nx} {result.spec.ny} 255\n".encode("ascii"))
    for row in result.rows:
        stream.write(bytes(pixel_value(point, names) for point in row))


def write_scan(result: ScanResult, path: Path, fmt: str) -> None:
    if fmt == "csv":
        with path.open("w", encoding="utf-8", newline="") as handle:
            write_csv(result, handle)
    elif fmt == "pgm":
        with path.open("wb") as handle:
            write_pgm(result, handle)
    else:
        raise InvalidScanSpec(f"unknown scan format: {fmt}")
