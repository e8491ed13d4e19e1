from __future__ import annotations

import argparse
import cmath
import io
import json
import math
import subprocess
import sys
import time
from datetime import datetime, timezone

UTC = timezone.utc
from pathlib import Path
from typing import Any

import numpy as np

sys.path.append(str(Path(__file__).resolve().parents[2]))

from packages.kleinian.catalog import (  # noqa: E402
    catalog_entries,
    verify_expectations,
    verify_sharpness,
)
from packages.kleinian.chebyshev import cheb_recursive  # noqa: E402
from packages.kleinian.inequalities import (  # noqa: E402
    GOLDEN_BOUND,
    SQRT2_BOUND,
    TWO_BOUND,
    solve_threshold_golden,
    solve_threshold_sqrt2,
    solve_threshold_two,
)
from packages.kleinian.logging import configure_logging  # noqa: E402
from packages.kleinian.oracle import run_identity_suite  # noqa: E402
from packages.kleinian.scan import ScanSpec, run_scan, write_csv  # noqa: E402
from packages.kleinian.sympoly import verify_printed_identities  # noqa: E402

OUT_DIR = Path(__file__).resolve().parent / "out"
THRESHOLDS_PATH = Path(__file__).resolve().parent / "thresholds.json"
ORACLE_SAMPLES = 100
ORACLE_DEPTH = 8
ORACLE_SEED = 20240
CHEBYSHEV_SAMPLES = 200
CHEBYSHEV_MAX_DEGREE = 32
SCAN_RESOLUTION = 64

ACCEPTANCE_GATE_DEFINITIONS = (
    ("printed_identity_failures_max", "printed_identity_failures", "<="),
    ("printed_identity_seconds_max", "printed_identity_seconds", "<="),
    ("oracle_max_error_max", "oracle_max_error", "<="),
    ("oracle_seconds_max", "oracle_seconds", "<="),
    ("chebyshev_max_error_max", "chebyshev_max_error", "<="),
    ("sharpness_failures_max", "sharpness_failures", "<="),
    ("expectation_mismatches_max", "expectation_mismatches", "<="),
    ("threshold_two_error_max", "threshold_two_error", "<="),
    ("threshold_golden_error_max", "threshold_golden_error", "<="),
    ("threshold_sqrt2_error_max", "threshold_sqrt2_error", "<="),
    ("scan_mismatches_max", "scan_mismatches", "<="),
    ("scan_seconds_max", "scan_seconds", "<="),
)


def load_thresholds(path: Path, section: str) -> dict[str, Any]:
    payload = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(payload, dict):
        raise ValueError("Thresholds file must be a JSON object")
    thresholds = payload.get(section)
    if not isinstance(thresholds, dict):
        raise ValueError(f"Missing thresholds section: {section}")
    return thresholds


def evaluate_quality_gates(
    metrics: dict[str, Any],
    thresholds: dict[str, Any],
    definitions: tuple[tuple[str, str, str], ...],
) -> dict[str, dict[str, Any]]:
    results: dict[str, dict[str, Any]] = {}
    for gate_name, metric_key, operator in definitions:
        if gate_name not in thresholds:
            raise ValueError(f"Missing threshold: {gate_name}")
        threshold_value = thresholds[gate_name]
        actual_value = metrics.get(metric_key)
        passed = False
        if actual_value is not None:
            try:
                actual_numeric = float(actual_value)
                threshold_numeric = float(threshold_value)
            except (TypeError, ValueError):
                passed = False
            else:
                if operator == "<=":
                    passed = actual_numeric <= threshold_numeric
                elif operator == ">=":
                    passed = actual_numeric >= threshold_numeric
                else:
                    raise ValueError(f"Unsupported operator: {operator}")

        results[gate_name] = {
            "passed": passed,
            "expected": f"{operator} {threshold_value}",
            "actual": actual_value,
        }
    return results


def get_git_commit() -> str | None:
    repo_root = Path(__file__).resolve().parents[2]
    try:
        output = subprocess.check_output(
            ["git", "rev-parse", "HEAD"],
            cwd=repo_root,
            text=True,
            stderr=subprocess.DEVNULL,
        )
    except (OSError, subprocess.CalledProcessError):
        return None
    return output.strip() or None


def measure_identities(metrics: dict[str, Any]) -> list[str]:
    start = time.perf_counter()
    printed = verify_printed_identities()
    metrics["printed_identity_seconds"] = round(time.perf_counter() - start, 4)
    failures = [check.identity for check in printed if not check.passed]
    metrics["printed_identity_failures"] = len(failures)
    metrics["printed_identity_count"] = len(printed)

    start = time.perf_counter()
    oracle = run_identity_suite(samples=ORACLE_SAMPLES, depth=ORACLE_DEPTH, seed=ORACLE_SEED)
    metrics["oracle_seconds"] = round(time.perf_counter() - start, 4)
    metrics["oracle_max_error"] = max(check.max_error for check in oracle)
    failures.extend(f"{check.family.value}_n{check.n}" for check in oracle if not check.passed)
    return failures


def measure_chebyshev(metrics: dict[str, Any], seed: int) -> None:
    rng = np.random.default_rng(seed)
    radii = 2.0 * np.sqrt(rng.uniform(0.0, 1.0, CHEBYSHEV_SAMPLES))
    angles = rng.uniform(0.0, 2 * math.pi, CHEBYSHEV_SAMPLES)
    worst = 0.0
    for radius, angle in zip(radii, angles, strict=True):
        z = complex(cmath.rect(float(radius), float(angle)))
        for n in range(CHEBYSHEV_MAX_DEGREE + 1):
            expected = cmath.cosh(n * z)
            error = abs(cheb_recursive(n, cmath.cosh(z)) - expected) / max(1.0, abs(expected))
            worst = max(worst, error)
    metrics["chebyshev_max_error"] = worst


def measure_catalog(metrics: dict[str, Any]) -> list[str]:
    failures = []
    for entry in catalog_entries():
        for check in verify_sharpness(entry):
            if not check.sharp:
                failures.append(f"{check.entry}:{check.inequality}")
    metrics["sharpness_failures"] = len(failures)
    mismatches = [check.entry for check in verify_expectations() if not check.matches]
    metrics["expectation_mismatches"] = len(mismatches)
    return failures + mismatches


def measure_thresholds(metrics: dict[str, Any]) -> None:
    metrics["threshold_two_error"] = abs(solve_threshold_two() - TWO_BOUND)
    metrics["threshold_golden_error"] = abs(solve_threshold_golden() - GOLDEN_BOUND)
    metrics["threshold_sqrt2_error"] = abs(solve_threshold_sqrt2() - SQRT2_BOUND)


def _scan_csv(spec: ScanSpec, workers: int) -> str:
    buffer = io.StringIO(newline="")
    write_csv(run_scan(spec, workers=workers), buffer)
    return buffer.getvalue()


def measure_scan(metrics: dict[str, Any], workers: int) -> None:
    spec = ScanSpec(
        beta=-3,
        gamma_min=complex(-1, -1),
        gamma_max=complex(2, 1),
        nx=SCAN_RESOLUTION,
        ny=SCAN_RESOLUTION,
        depth=8,
    )
    start = time.perf_counter()
    first = _scan_csv(spec, workers=1)
    metrics["scan_seconds"] = round(time.perf_counter() - start, 4)
    runs = [_scan_csv(spec, workers=1), _scan_csv(spec, workers=workers)]
    metrics["scan_mismatches"] = sum(1 for run in runs if run != first)


def main() -> None:
    parser = argparse.ArgumentParser(description="Run the desk-scale acceptance suite.")
    parser.add_argument("--thresholds", type=Path, default=THRESHOLDS_PATH)
    parser.add_argument("--seed", type=int, default=ORACLE_SEED)
    parser.add_argument("--workers", type=int, default=8)
    parser.add_argument("--skip-scan", action="store_true")
    args = parser.parse_args()

    configure_logging("acceptance", "WARNING")
    thresholds = load_thresholds(args.thresholds, "acceptance")
    definitions = ACCEPTANCE_GATE_DEFINITIONS
    if args.skip_scan:
        definitions = tuple(gate for gate in definitions if not gate[0].startswith("scan_"))

    metrics: dict[str, Any] = {}
    failures = measure_identities(metrics)
    measure_chebyshev(metrics, args.seed)
    failures.extend(measure_catalog(metrics))
    measure_thresholds(metrics)
    if not args.skip_scan:
        measure_scan(metrics, args.workers)

    gates = evaluate_quality_gates(metrics, thresholds, definitions)
    gate_failures = [name for name, gate in gates.items() if not gate["passed"]]

    output_payload = {
        "generated_at": datetime.now(UTC).isoformat(),
        "git_commit": get_git_commit(),
        "metrics": metrics,
        "quality_gates": gates,
        "failures": failures,
    }
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    json_path = OUT_DIR / "acceptance_results.json"
    json_path.write_text(json.dumps(output_payload, indent=2), encoding="utf-8")

    passed_gates = len(gates) - len(gate_failures)
    print(f"Acceptance complete: {passed_gates}/{len(gates)} gates passed")
    print(f"Results: {json_path}")
    if gate_failures:
        print("Quality gate failures: " + ", ".join(gate_failures))
        raise SystemExit(1)


if __name__ == "__main__":
    main()
