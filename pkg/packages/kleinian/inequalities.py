"""Necessary conditions for a principal character to belong to a Kleinian group.

Every check produces an InequalityReport whose lhs must be >= bound. The battery
composes all of them and aggregates the failures into a Verdict; a failure only
counts against the character when no exception descriptor can still rescue it.
"""

from __future__ import annotations

import logging
import sys
import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from enum import Enum

from scipy.optimize import bisect

from packages.kleinian.characters import (
    TOL_ORDER_TWO,
    PrincipalCharacter,
    elliptic_order,
    small_order_exceptions,
)
from packages.kleinian.chebyshev import cheb_recursive
from packages.kleinian.errors import NonFiniteValue, NotParabolicFG, ParabolicFG
from packages.kleinian.observability.metrics import (
    record_battery_run,
    record_inequality_failure,
)
from packages.kleinian.recursions import a_seq, power_is_identity
from packages.kleinian.settings import settings

logger = logging.getLogger(__name__)

TOL_INEQ = 1e-12
TOL_SHARP = 1e-9
TOL_EXCUSE = 1e-9
TOL_PARABOLIC_FG = 1e-9
TOL_PARABOLIC_FG_STRICT = 1e-12
SOLVER_XTOL = 1e-12
OVERFLOW_VALUE = sys.float_info.max

SQRT2 = math.sqrt(2)
SQRT5 = math.sqrt(5)
GAMMA_F2_BOUND = 2 - 2 * math.cos(math.pi / 7)
TWO_BOUND = (SQRT5 - 1) / 2
GOLDEN_BOUND = (3 - SQRT5) / 2
# Printed to six digits; solve_threshold_sqrt2 reproduces it.
SQRT2_BOUND = 0.117875

ORDER_TWO_F = "beta(f) = -4 (f has order two)"


class Applicability(str, Enum):
    UNCONDITIONAL = "Unconditional"
    REQUIRES_ORDER2_G = "RequiresOrder2G"
    REQUIRES_F_NOT_ORDER2 = "RequiresFNotOrder2"
    EXTREMAL_ONLY = "ExtremalOnly"


class Verdict(str, Enum):
    PASSES_ALL = "PassesAll"
    VIOLATES_UNCONDITIONAL = "ViolatesUnconditional"
    VIOLATES_CONDITIONAL = "ViolatesConditional"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    bound: float
    satisfied: bool
    margin: float
    exceptions: tuple[str, ...]
    applicability: Applicability
    excused: bool = False
    sharp: bool = False
    overflow: bool = False

    @property
    def counts_as_failure(self) -> bool:
        return (
            not self.satisfied
            and not self.excused
            and self.applicability is not Applicability.EXTREMAL_ONLY
        )

    @property
    def unconditional_failure(self) -> bool:
        return self.counts_as_failure and not self.exceptions


def make_report(
    name: str,
    lhs: float,
    bound: float,
    applicability: Applicability,
    exceptions: tuple[str, ...] = (),
    excused: bool = False,
) -> InequalityReport:
    if not (math.isfinite(lhs) and math.isfinite(bound)):
        return _overflow_report(name, lhs, bound, applicability, exceptions, excused)
    margin = lhs - bound
    return InequalityReport(
        name=name,
        lhs=lhs,
        bound=bound,
        satisfied=margin >= -TOL_INEQ,
        margin=margin,
        exceptions=exceptions,
        applicability=applicability,
        excused=excused,
        sharp=abs(margin) <= TOL_SHARP,
    )


def _overflow_report(
    name: str,
    lhs: float,
    bound: float,
    applicability: Applicability,
    exceptions: tuple[str, ...],
    excused: bool,
) -> InequalityReport:
    # every lhs is a sum of moduli: past double range it exceeds any finite bound
    logger.debug("inequality_overflow", extra={"inequality": name})
    lhs = lhs if math.isfinite(lhs) else OVERFLOW_VALUE
    satisfied = math.isfinite(bound)
    bound = bound if satisfied else OVERFLOW_VALUE
    return InequalityReport(
        name=name,
        lhs=lhs,
        bound=bound,
        satisfied=satisfied,
        margin=lhs - bound,
        exceptions=exceptions,
        applicability=applicability,
        excused=excused,
        overflow=True,
    )


def _modulus(z: complex) -> float:
    try:
        return abs(z)
    except OverflowError:
        return math.inf


def _seq(u: complex, v: complex, n: int) -> complex:
    try:
        return a_seq(u, v, n)
    except NonFiniteValue:
        return complex(math.inf, 0.0)


def _f_order_two(char: PrincipalCharacter) -> bool:
    return _modulus(char.beta_f + 4) <= TOL_ORDER_TWO


def _torsion_exception(beta: complex, n: int, label: str = "beta") -> str | None:
    witness = power_is_identity(beta, n)
    if witness is None:
        return None
    return f"{label} = -4 sin^2({witness} pi / {n})"


def _degenerate_exception(char: PrincipalCharacter) -> tuple[str, ...]:
    return ("gamma = 0 (f and g share a fixed point)",) if char.degenerate else ()


def jorgensen(char: PrincipalCharacter) -> InequalityReport:
    lhs = _modulus(char.gamma) + _modulus(char.beta_f)
    return make_report("jorgensen", lhs, 1.0, Applicability.UNCONDITIONAL)


def _lem15_reports(
    gamma: complex,
    beta: complex,
    names: tuple[str, str],
    exceptions: tuple[str, ...],
    excused: bool,
) -> tuple[InequalityReport, InequalityReport]:
    first = _modulus(gamma - beta - 4) + _modulus(gamma)
    second = _modulus(gamma + 4) + _modulus(beta - gamma)
    applicability = Applicability.REQUIRES_F_NOT_ORDER2
    return (
        make_report(names[0], first, 1.0, applicability, exceptions, excused),
        make_report(names[1], second, 1.0, applicability, exceptions, excused),
    )


def lem15_pair(char: PrincipalCharacter) -> tuple[InequalityReport, InequalityReport]:
    exceptions = _degenerate_exception(char)
    excused = bool(exceptions)
    if _f_order_two(char):
        exceptions += (ORDER_TWO_F,)
        excused = True
    names = ("lem15_first", "lem15_second")
    return _lem15_reports(char.gamma, char.beta_f, names, exceptions, excused)


def an_family(char: PrincipalCharacter, n: int) -> InequalityReport:
    if n < 1:
        raise ValueError("family index must be >= 1")
    gamma_n = _seq(char.beta_f, char.gamma, n)
    beta_n = _seq(char.beta_f, char.beta_f, n)
    torsion = _torsion_exception(char.beta_f, n)
    return make_report(
        f"an_family_n{n}",
        _modulus(gamma_n) + _modulus(beta_n),
        1.0,
        Applicability.UNCONDITIONAL,
        (torsion,) if torsion else (),
        excused=torsion is not None,
    )


def an_lem15_family(
    char: PrincipalCharacter, n: int
) -> tuple[InequalityReport, InequalityReport]:
    if n < 1:
        raise ValueError("family index must be >= 1")
    gamma_n = _seq(char.beta_f, char.gamma, n)
    beta_n = _seq(char.beta_f, char.beta_f, n)
    exceptions = _degenerate_exception(char)
    excused = bool(exceptions)
    torsion = _torsion_exception(char.beta_f, n)
    if torsion:
        exceptions += (torsion,)
        excused = True
    if _modulus(beta_n + 4) <= TOL_EXCUSE:
        exceptions += (f"beta(f^{n}) = -4 (f^{n} has order two)",)
        excused = True
    names = (f"an_lem15_first_n{n}", f"an_lem15_second_n{n}")
    return _lem15_reports(gamma_n, beta_n, names, exceptions, excused)


def fg_family(char: PrincipalCharacter, n: int) -> InequalityReport:
    """|a_n(u, gamma)| + |a_n(u, gamma - beta - 2)| >= 1 with u = beta(fg) = gamma - beta - 4."""
    if n < 1:
        raise ValueError("family index must be >= 1")
    u = char.gamma - char.beta_f - 4
    lhs = _modulus(_seq(u, char.gamma, n)) + _modulus(
        _seq(u, char.gamma - char.beta_f - 2, n)
    )
    torsion = _torsion_exception(u, n, label="beta(gf)")
    return make_report(
        f"fg_family_n{n}",
        lhs,
        1.0,
        Applicability.REQUIRES_ORDER2_G,
        (torsion,) if torsion else (),
        excused=torsion is not None,
    )


def gamma_f2_bound(char: PrincipalCharacter) -> InequalityReport:
    gamma, beta = char.gamma, char.beta_f
    gamma_f2 = gamma * (beta + 4)
    exceptions: tuple[str, ...] = ()
    if _f_order_two(char):
        exceptions += (ORDER_TWO_F,)
    # gamma(fg, gf) coincides with beta(fg): the equal-trace bound does not apply
    if _modulus(gamma_f2 - (gamma - beta - 4)) <= TOL_EXCUSE:
        exceptions += ("gamma(fg, gf) = beta(fg)",)
    return make_report(
        "gamma_f2",
        _modulus(gamma_f2),
        GAMMA_F2_BOUND,
        Applicability.REQUIRES_F_NOT_ORDER2,
        exceptions,
        excused=bool(exceptions),
    )


def cheb_min_bound(
    char: PrincipalCharacter, n: int
) -> tuple[InequalityReport, InequalityReport]:
    """Extremality diagnostic 2|T_k((gamma - beta - 2)/2) - 1| >= |gamma - beta - 4|.

    Evaluated for k = n + 1 and k = n; a failure only shows the character is not a
    minimizer of |gamma| + |beta - beta_0|.
    """
    if n < 1:
        raise ValueError("family index must be >= 1")
    beta_fg = char.gamma - char.beta_f - 4
    if _modulus(beta_fg) <= TOL_PARABOLIC_FG_STRICT:
        raise ParabolicFG("gamma = beta + 4: fg is parabolic")
    z = (char.gamma - char.beta_f - 2) / 2
    reports = [
        make_report(
            f"cheb_min_T{k}_n{n}",
            2 * _modulus(cheb_recursive(k, z) - 1),
            _modulus(beta_fg),
            Applicability.EXTREMAL_ONLY,
        )
        for k in (n + 1, n)
    ]
    return reports[0], reports[1]


def parabolic_case(char: PrincipalCharacter) -> InequalityReport:
    if _modulus(char.gamma - char.beta_f - 4) > TOL_PARABOLIC_FG:
        raise NotParabolicFG("parabolic case needs gamma = beta + 4")
    lhs = _modulus(char.gamma)
    return make_report("parabolic_fg", lhs, 1.0, Applicability.REQUIRES_ORDER2_G)


def beta_shift_bounds(char: PrincipalCharacter) -> list[InequalityReport]:
    gamma_abs = _modulus(char.gamma)
    shift_1 = _modulus(char.beta_f + 1)
    beta = char.beta_f
    rows: list[tuple[str, float, float]] = [
        ("beta_plus_1_sq", gamma_abs + shift_1 * shift_1, 1.0),
        ("beta_plus_1", gamma_abs + shift_1, 1.0),
        ("beta_plus_2", gamma_abs + _modulus(beta + 2), TWO_BOUND),
        ("golden_plus", gamma_abs + _modulus(beta + (3 + SQRT5) / 2), GOLDEN_BOUND),
        ("golden_minus", gamma_abs + _modulus(beta + (3 - SQRT5) / 2), GOLDEN_BOUND),
        ("beta_plus_2_sqrt2", gamma_abs + _modulus(beta + 2 + SQRT2), SQRT2_BOUND),
    ]
    return [
        make_report(name, lhs, bound, Applicability.REQUIRES_ORDER2_G)
        for name, lhs, bound in rows
    ]


def solve_bisect(
    fn: Callable[[float], float], lo: float, hi: float, xtol: float = SOLVER_XTOL
) -> float:
    return float(bisect(fn, lo, hi, xtol=xtol))


def solve_threshold_sqrt2() -> float:
    def excess(y: float) -> float:
        return y**2 * (y + SQRT2) ** 2 * (y + 2 * SQRT2) ** 2 * (y + 2 + SQRT2) - 1

    return solve_bisect(excess, 0.0, 1.0)


def solve_threshold_two() -> float:
    return solve_bisect(lambda x: x * x * (x + 2) - 1, 0.0, 1.0)


def solve_threshold_golden() -> float:
    return solve_bisect(lambda s: s * s + SQRT5 * s - 1, 0.0, 1.0)


@dataclass(frozen=True)
class Assumptions:
    """Caller knowledge that narrows the small-order exceptions.

    f_order_known with f_order None asserts f is not of small finite order.
    """

    f_order: int | None = None
    f_order_known: bool = False
    g_order2: bool = False


@dataclass(frozen=True)
class BatteryResult:
    character: PrincipalCharacter
    verdict: Verdict
    depth: int
    reports: tuple[InequalityReport, ...] = ()
    violations: tuple[str, ...] = ()
    shadow_exceptions: tuple[str, ...] = field(default_factory=tuple)

    def first_violation(self) -> str | None:
        if self.verdict is Verdict.DEGENERATE:
            return "degenerate"
        return self.violations[0] if self.violations else None

    def report(self, name: str) -> InequalityReport:
        for item in self.reports:
            if item.name == name:
                return item
        raise KeyError(name)


def report_names(depth: int) -> list[str]:
    names = [
        "jorgensen",
        "lem15_first",
        "lem15_second",
        "gamma_f2",
        "beta_plus_1_sq",
        "beta_plus_1",
        "beta_plus_2",
        "golden_plus",
        "golden_minus",
        "beta_plus_2_sqrt2",
        "parabolic_fg",
    ]
    names += [f"an_family_n{n}" for n in range(1, depth + 1)]
    for n in range(1, depth + 1):
        names += [f"an_lem15_first_n{n}", f"an_lem15_second_n{n}"]
    names += [f"fg_family_n{n}" for n in range(1, depth + 1)]
    return names


def shadow_exceptions(char: PrincipalCharacter, assumptions: Assumptions) -> tuple[str, ...]:
    """Small-order exceptions left open by reducing (gamma, beta, beta_g) to (gamma, beta, -4)."""
    if char.g_order_two or assumptions.g_order2:
        return ()
    if assumptions.f_order_known:
        return small_order_exceptions(assumptions.f_order)
    return small_order_exceptions(elliptic_order(char.beta_f))


def _with_shadow(report: InequalityReport, shadow: tuple[str, ...]) -> InequalityReport:
    if not shadow or report.applicability in (
        Applicability.UNCONDITIONAL,
        Applicability.EXTREMAL_ONLY,
    ):
        return report
    return replace(report, exceptions=report.exceptions + shadow)


def battery(
    char: PrincipalCharacter,
    depth: int | None = None,
    assumptions: Assumptions | None = None,
) -> BatteryResult:
    depth = settings.family_depth if depth is None else depth
    if depth < 1:
        raise ValueError("battery depth must be >= 1")
    assumptions = assumptions or Assumptions()

    if char.degenerate:
        record_battery_run(Verdict.DEGENERATE.value)
        logger.info("battery_complete", extra={"verdict": Verdict.DEGENERATE.value})
        return BatteryResult(char, Verdict.DEGENERATE, depth)

    shadow = shadow_exceptions(char, assumptions)
    reports: list[InequalityReport] = [jorgensen(char), *lem15_pair(char), gamma_f2_bound(char)]
    reports += beta_shift_bounds(char)
    if _modulus(char.gamma - char.beta_f - 4) <= TOL_PARABOLIC_FG:
        reports.append(parabolic_case(char))
    reports += [an_family(char, n) for n in range(1, depth + 1)]
    for n in range(1, depth + 1):
        reports += an_lem15_family(char, n)
    reports += [fg_family(char, n) for n in range(1, depth + 1)]
    reports = [_with_shadow(report, shadow) for report in reports]

    failures = [report for report in reports if report.counts_as_failure]
    if any(report.unconditional_failure for report in failures):
        verdict = Verdict.VIOLATES_UNCONDITIONAL
    elif failures:
        verdict = Verdict.VIOLATES_CONDITIONAL
    else:
        verdict = Verdict.PASSES_ALL

    for report in failures:
        record_inequality_failure(report.name, report.applicability.value)
    record_battery_run(verdict.value)
    logger.info(
        "battery_complete",
        extra={
            "verdict": verdict.value,
            "depth": depth,
            "failures": len(failures),
            "shadow_exceptions": len(shadow),
        },
    )
    return BatteryResult(
        character=char,
        verdict=verdict,
        depth=depth,
        reports=tuple(reports),
        violations=tuple(report.name for report in failures),
        shadow_exceptions=shadow,
    )
