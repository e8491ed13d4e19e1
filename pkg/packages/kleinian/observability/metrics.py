from __future__ import annotations

from prometheus_client import CollectorRegistry, Counter, Histogram

_REGISTRY = CollectorRegistry()

_HTTP_REQUESTS_TOTAL = Counter(
    "http_requests_total",
    "Total HTTP requests.",
    ["method", "path", "status"],
    registry=_REGISTRY,
)
_HTTP_REQUEST_DURATION_SECONDS = Histogram(
    "http_request_duration_seconds",
    "HTTP request duration in seconds.",
    ["method", "path"],
    registry=_REGISTRY,
)
_BATTERY_RUNS_TOTAL = Counter(
    "battery_runs_total",
    "Total inequality battery runs by verdict.",
    ["verdict"],
    registry=_REGISTRY,
)
_INEQUALITY_FAILURES_TOTAL = Counter(
    "inequality_failures_total",
    "Total failed (non-excused) inequality reports.",
    ["name", "applicability"],
    registry=_REGISTRY,
)
_IDENTITY_CHECKS_TOTAL = Counter(
    "identity_checks_total",
    "Total identity checks by suite and status.",
    ["suite", "status"],
    registry=_REGISTRY,
)
_SCAN_POINTS_TOTAL = Counter(
    "scan_points_total",
    "Total scanned parameter points by verdict.",
    ["verdict"],
    registry=_REGISTRY,
)
_REALIZATION_RESIDUAL = Histogram(
    "realization_residual",
    "Residual of recomputed characters after matrix realization.",
    buckets=(1e-15, 1e-13, 1e-12, 1e-11, 1e-10, 1e-9, 1e-6),
    registry=_REGISTRY,
)


def get_registry() -> CollectorRegistry:
    return _REGISTRY


def _normalize_label(value: str | None, default: str = "unknown") -> str:
    if value is None:
        return default
    cleaned = str(value).strip()
    return cleaned or default


def _family_label(name: str) -> str:
    # an_family_n3 -> an_family, keeps label cardinality bounded by depth-free names
    head, sep, tail = name.rpartition("_n")
    if sep and tail.isdigit():
        return head
    return name


def record_http_request(method: str, path: str, status: int, duration: float) -> None:
    method_label = _normalize_label(method, "UNKNOWN")
    path_label = _normalize_label(path, "unknown")
    status_label = _normalize_label(str(status), "unknown")
    _HTTP_REQUESTS_TOTAL.labels(method_label, path_label, status_label).inc()
    _HTTP_REQUEST_DURATION_SECONDS.labels(method_label, path_label).observe(duration)


def record_battery_run(verdict: str) -> None:
    _BATTERY_RUNS_TOTAL.labels(_normalize_label(verdict)).inc()


def record_inequality_failure(name: str, applicability: str) -> None:
    _INEQUALITY_FAILURES_TOTAL.labels(
        _normalize_label(_family_label(name)), _normalize_label(applicability)
    ).inc()


def record_identity_check(suite: str, passed: bool) -> None:
    _IDENTITY_CHECKS_TOTAL.labels(_normalize_label(suite), "pass" if passed else "fail").inc()


def record_scan_points(verdict: str, count: int = 1) -> None:
    if count <= 0:
        return
    _SCAN_POINTS_TOTAL.labels(_normalize_label(verdict)).inc(count)


def record_realization_residual(residual: float) -> None:
    _REALIZATION_RESIDUAL.observe(residual)
