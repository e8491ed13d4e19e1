from __future__ import annotations

import io
from pathlib import Path

import pytest

from packages.kleinian.errors import InvalidScanSpec
from packages.kleinian.inequalities import Verdict, report_names
from packages.kleinian.scan import (
    CSV_HEADER,
    PIXEL_DEGENERATE,
    PIXEL_NONE,
    ScanPoint,
    ScanSpec,
    pixel_value,
    run_scan,
    write_csv,
    write_scan,
)

SPEC = ScanSpec(beta=-3, gamma_min=complex(-1, -1), gamma_max=complex(2, 1), nx=6, ny=5, depth=4)


def _csv(workers: int) -> str:
    buffer = io.StringIO(newline="")
    write_csv(run_scan(SPEC, workers=workers), buffer)
    return buffer.getvalue()


def test_invalid_specs_rejected() -> None:
    with pytest.raises(InvalidScanSpec):
        ScanSpec(beta=-3, gamma_min=0, gamma_max=complex(1, 1), nx=1, ny=4)
    with pytest.raises(InvalidScanSpec):
        ScanSpec(beta=-3, gamma_min=complex(1, -1), gamma_max=complex(1, 1), nx=4, ny=4)
    with pytest.raises(InvalidScanSpec):
        ScanSpec(beta=-3, gamma_min=-1 - 1j, gamma_max=1 + 1j, nx=4, ny=4, depth=0)


def test_rows_run_from_top_of_rectangle() -> None:
    result = run_scan(SPEC, workers=1)

    assert len(result.rows) == SPEC.ny
    assert all(len(row) == SPEC.nx for row in result.rows)
    assert result.rows[0][0].gamma == complex(-1, 1)
    assert result.rows[-1][-1].gamma == complex(2, -1)


def test_csv_layout() -> None:
    lines = _csv(workers=1).split("\r\n")

    assert lines[0] == ",".join(CSV_HEADER)
    assert len([line for line in lines if line]) == 1 + SPEC.nx * SPEC.ny
    assert lines[1].startswith("-1.0,1.0,")


def test_output_independent_of_workers() -> None:
    serial = _csv(workers=1)

    assert _csv(workers=1) == serial
    assert _csv(workers=2) == serial


def test_pixel_values() -> None:
    names = report_names(4)

    assert pixel_value(ScanPoint(0j, Verdict.DEGENERATE, "degenerate"), names) == PIXEL_DEGENERATE
    assert pixel_value(ScanPoint(1j, Verdict.PASSES_ALL, None), names) == PIXEL_NONE
    point = ScanPoint(1j, Verdict.VIOLATES_UNCONDITIONAL, "jorgensen")
    assert pixel_value(point, names) == 1


def test_write_pgm(tmp_path: Path) -> None:
    path = tmp_path / "scan.pgm"

    write_scan(run_scan(SPEC, workers=1), path, "pgm")

    data = path.read_bytes()
    header = f"P5 {SPEC.nx} {SPEC.ny} 255\n".encode("ascii")
    assert data.startswith(header)
    assert len(data) == len(header) + SPEC.nx * SPEC.ny


def test_write_csv_file(tmp_path: Path) -> None:
    path = tmp_path / "scan.csv"

    write_scan(run_scan(SPEC, workers=1), path, "csv")

    assert path.read_bytes().decode("utf-8") == _csv(workers=1)


def test_unknown_format(tmp_path: Path) -> None:
    with pytest.raises(InvalidScanSpec):
        write_scan(run_scan(SPEC, workers=1), tmp_path / "scan.bin", "png")


def test_small_grid_near_origin_violates_jorgensen() -> None:
    spec = ScanSpec(beta=0, gamma_min=complex(-0.1, -0.1), gamma_max=complex(0.1, 0.1), nx=2, ny=2)

    points = list(run_scan(spec, workers=1).points())

    assert len(points) == 4
    assert all(point.first_violation == "jorgensen" for point in points)
    assert all(point.code == 2 for point in points)
