from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packages.kleinian.characters import (
    SMALL_ORDER_EXCEPTIONS,
    PrincipalCharacter,
    character_involutions,
)
from packages.kleinian.errors import NotParabolicFG, ParabolicFG
from packages.kleinian.inequalities import (
    GAMMA_F2_BOUND,
    GOLDEN_BOUND,
    OVERFLOW_VALUE,
    SQRT2_BOUND,
    TWO_BOUND,
    Applicability,
    Assumptions,
    Verdict,
    an_family,
    an_lem15_family,
    battery,
    cheb_min_bound,
    gamma_f2_bound,
    jorgensen,
    lem15_pair,
    make_report,
    parabolic_case,
    report_names,
    shadow_exceptions,
    solve_threshold_golden,
    solve_threshold_sqrt2,
    solve_threshold_two,
)
from packages.kleinian.recursions import beta_power

SQRT5 = math.sqrt(5)
FIG8 = PrincipalCharacter(complex(0.5, math.sqrt(3) / 2), 0, 0)


def test_report_tolerances() -> None:
    inside = make_report("x", 1.0 - 1e-13, 1.0, Applicability.UNCONDITIONAL)
    outside = make_report("x", 1.0 - 1e-11, 1.0, Applicability.UNCONDITIONAL)

    assert inside.satisfied
    assert inside.sharp
    assert not outside.satisfied
    assert outside.unconditional_failure


def test_extremal_reports_never_count() -> None:
    report = make_report("x", 0.0, 1.0, Applicability.EXTREMAL_ONLY)

    assert not report.satisfied
    assert not report.counts_as_failure


def test_jorgensen_sharp_on_figure_eight() -> None:
    report = jorgensen(FIG8)

    assert report.sharp
    assert report.satisfied
    assert abs(report.margin) <= 1e-9


def test_negative_control_violates_unconditionally() -> None:
    result = battery(PrincipalCharacter(0.5, 0.2, 0.1), depth=4)

    assert result.verdict is Verdict.VIOLATES_UNCONDITIONAL
    assert result.first_violation() == "jorgensen"
    assert not result.report("jorgensen").satisfied


def test_figure_eight_passes() -> None:
    result = battery(FIG8, depth=8)

    assert result.verdict is Verdict.PASSES_ALL
    assert result.violations == ()
    assert result.first_violation() is None


def test_a5_arithmetic_on_lem15_first() -> None:
    char = PrincipalCharacter((SQRT5 - 3) / 2, -(5 + SQRT5) / 2, -4)

    first, _ = lem15_pair(char)

    assert first.lhs == pytest.approx(1.5 * (3 - SQRT5), abs=1e-6)
    assert first.satisfied


def test_lem15_excused_when_f_has_order_two() -> None:
    first, second = lem15_pair(PrincipalCharacter(0.1, -4, -4))

    assert first.excused and second.excused
    assert not first.counts_as_failure


def test_gamma_f2_constant_and_order_two_exception() -> None:
    assert GAMMA_F2_BOUND == pytest.approx(0.1980622642, abs=1e-10)

    report = gamma_f2_bound(PrincipalCharacter(0.05, -4, -4))

    assert report.excused
    assert not report.counts_as_failure


def test_an_family_torsion_is_excused() -> None:
    report = an_family(PrincipalCharacter(0.3, -3, -4), 3)

    assert report.name == "an_family_n3"
    assert report.excused
    assert report.exceptions == ("beta = -4 sin^2(1 pi / 3)",)


def test_cheb_min_bound_names_and_parabolic_guard() -> None:
    upper, lower = cheb_min_bound(PrincipalCharacter(1 + 1j, -1, -4), 3)

    assert upper.name == "cheb_min_T4_n3"
    assert lower.name == "cheb_min_T3_n3"
    assert upper.applicability is Applicability.EXTREMAL_ONLY
    with pytest.raises(ParabolicFG):
        cheb_min_bound(PrincipalCharacter(2, -2, -4), 1)


def test_parabolic_case() -> None:
    report = parabolic_case(PrincipalCharacter(2, -2, -4))

    assert report.name == "parabolic_fg"
    assert report.satisfied
    with pytest.raises(NotParabolicFG):
        parabolic_case(PrincipalCharacter(1, -2, -4))


def test_threshold_solvers() -> None:
    assert abs(solve_threshold_two() - TWO_BOUND) <= 1e-9
    assert abs(solve_threshold_golden() - GOLDEN_BOUND) <= 1e-9
    assert abs(solve_threshold_sqrt2() - SQRT2_BOUND) <= 5e-7
    assert TWO_BOUND == pytest.approx(0.618034, abs=1e-6)
    assert GOLDEN_BOUND == pytest.approx(0.381966, abs=1e-6)


def test_degenerate_battery() -> None:
    result = battery(PrincipalCharacter(0, 1, -4))

    assert result.verdict is Verdict.DEGENERATE
    assert result.reports == ()
    assert result.first_violation() == "degenerate"


def test_depth_must_be_positive() -> None:
    with pytest.raises(ValueError):
        battery(FIG8, depth=0)


def test_report_names_cover_battery_output() -> None:
    result = battery(PrincipalCharacter(1 + 2j, 0.5j, -4), depth=3)

    assert len(report_names(3)) == 11 + 3 + 6 + 3
    assert {report.name for report in result.reports} <= set(report_names(3))
    with pytest.raises(KeyError):
        result.report("missing")


def test_shadow_exceptions_follow_assumptions() -> None:
    char = PrincipalCharacter(2, -3, 1)

    assert shadow_exceptions(char, Assumptions()) == (SMALL_ORDER_EXCEPTIONS[3],)
    assert shadow_exceptions(char, Assumptions(g_order2=True)) == ()
    assert shadow_exceptions(char, Assumptions(f_order_known=True)) == ()
    assert shadow_exceptions(char, Assumptions(f_order=5, f_order_known=True)) == (
        SMALL_ORDER_EXCEPTIONS[5],
    )


def test_shadow_attached_to_conditional_reports_only() -> None:
    result = battery(PrincipalCharacter(2, -3, 1), depth=2)

    assert result.shadow_exceptions == (SMALL_ORDER_EXCEPTIONS[3],)
    assert SMALL_ORDER_EXCEPTIONS[3] in result.report("lem15_first").exceptions
    assert SMALL_ORDER_EXCEPTIONS[3] not in result.report("jorgensen").exceptions


BOUNDED = st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False)


def test_overflowing_family_terms_stay_finite_and_satisfied() -> None:
    result = battery(PrincipalCharacter(1e80, 1e80, -4), depth=8)

    assert result.verdict is Verdict.PASSES_ALL
    assert all(math.isfinite(r.lhs) and math.isfinite(r.margin) for r in result.reports)
    report = result.report("an_family_n8")
    assert report.overflow
    assert report.satisfied
    assert report.lhs == OVERFLOW_VALUE
    assert not result.report("jorgensen").overflow


@pytest.mark.parametrize("lhs", [math.inf, math.nan])
def test_non_finite_lhs_is_clamped(lhs: float) -> None:
    report = make_report("x", lhs, 1.0, Applicability.UNCONDITIONAL)

    assert report.overflow
    assert report.satisfied
    assert report.lhs == OVERFLOW_VALUE
    assert math.isfinite(report.margin)


def test_non_finite_bound_is_not_satisfied() -> None:
    report = make_report("x", 2.0, math.inf, Applicability.UNCONDITIONAL)

    assert report.overflow
    assert not report.satisfied
    assert report.counts_as_failure


@given(gamma=BOUNDED, beta=BOUNDED)
def test_first_family_terms_reduce_to_base_inequalities(gamma: complex, beta: complex) -> None:
    char = PrincipalCharacter(gamma, beta, -4)

    assert an_family(char, 1).lhs == jorgensen(char).lhs
    family = an_lem15_family(char, 1)
    base = lem15_pair(char)
    assert [r.lhs for r in family] == [r.lhs for r in base]


@settings(max_examples=50, deadline=None)
@given(gamma=BOUNDED, beta=BOUNDED, depth=st.integers(min_value=1, max_value=5))
def test_violations_only_grow_with_depth(gamma: complex, beta: complex, depth: int) -> None:
    char = PrincipalCharacter(gamma, beta, -4)

    shallow = battery(char, depth=depth)
    deep = battery(char, depth=depth + 1)

    assert set(shallow.violations) <= set(deep.violations)


@pytest.mark.parametrize("q", range(2, 9))
def test_torsion_exceptions_only_where_the_power_collapses(q: int) -> None:
    for p in range(1, q):
        beta = -4 * math.sin(p * math.pi / q) ** 2
        char = PrincipalCharacter(complex(0.3, 0.2), beta, -4)
        excused = []
        for n in range(1, 9):
            report = an_family(char, n)
            if any(e.startswith("beta = -4 sin^2") for e in report.exceptions):
                assert abs(beta_power(beta, n)) <= 1e-8
                excused.append(n)
        assert q in excused


@given(gamma=BOUNDED, beta=BOUNDED)
def test_involution_characters_match_lem15(gamma: complex, beta: complex) -> None:
    char = PrincipalCharacter(gamma, beta, -4)

    first, second = lem15_pair(char)
    involutions = character_involutions(char)

    assert jorgensen(involutions[0]).lhs == pytest.approx(first.lhs)
    assert jorgensen(involutions[1]).lhs == pytest.approx(second.lhs)
