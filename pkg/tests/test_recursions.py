from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from packages.kleinian.characters import PrincipalCharacter
from packages.kleinian.errors import EllipticCollapse, InapplicableFamily
from packages.kleinian.recursions import (
    SeqParams,
    SubgroupFamily,
    a_seq,
    a_seq_terms,
    alpha_closed,
    alpha_n,
    beta_commutator_power,
    beta_power,
    gamma_closed,
    gamma_commutator_power,
    gamma_power,
    lambda_direct,
    lambda_n,
    power_is_identity,
    subgroup_character,
    torsion_witness,
)

GAMMA = complex(0.7, 1.3)
BETA = complex(-1.2, 0.9)


def test_sequence_initial_terms() -> None:
    assert a_seq_terms(2, 3, 3) == [0, 3, 18, 75]
    assert a_seq(BETA, GAMMA, 0) == 0
    assert a_seq(BETA, GAMMA, 1) == GAMMA
    assert SeqParams(BETA, GAMMA).terms(4)[-1] == a_seq(BETA, GAMMA, 4)


def test_beta_power_matches_trace_squares() -> None:
    # beta(f^2) = (beta + 2)^2 - 4
    assert abs(beta_power(BETA, 2) - ((BETA + 2) ** 2 - 4)) < 1e-12
    assert beta_power(BETA, 1) == pytest.approx(BETA)


def test_beta_power_is_sequence_with_seed_beta() -> None:
    for n in range(1, 12):
        expected = a_seq(BETA, BETA, n)
        assert abs(beta_power(BETA, n) - expected) < 1e-8 * max(1, abs(expected))


def test_gamma_power_parabolic_limit() -> None:
    assert gamma_power(GAMMA, 0, 5) == pytest.approx(25 * GAMMA)


def test_closed_forms_agree_with_recursion() -> None:
    for n in range(1, 10):
        recursive = gamma_power(GAMMA, BETA, n)
        assert abs(gamma_closed(GAMMA, BETA, n) - recursive) <= 1e-9 * max(1, abs(recursive))
        alpha = alpha_n(GAMMA, BETA, n)
        assert abs(alpha_closed(GAMMA, BETA, n) - alpha) <= 1e-9 * max(1, abs(alpha))


def test_lambda_closed_form_agrees_with_direct() -> None:
    for n in range(1, 9):
        direct = lambda_direct(GAMMA, BETA, n)
        assert abs(lambda_n(GAMMA, BETA, n) - direct) <= 1e-8 * max(1, abs(direct))
    assert lambda_n(GAMMA, 0, 3) == pytest.approx(lambda_direct(GAMMA, 0, 3))


def test_commutator_power_first_term() -> None:
    assert gamma_commutator_power(GAMMA, BETA, 1) == GAMMA * (GAMMA - BETA)
    assert beta_commutator_power(GAMMA, 1) == pytest.approx(GAMMA * (GAMMA + 4))


def test_torsion_witness_and_identity_power() -> None:
    beta = -4 * math.sin(math.pi / 5) ** 2

    assert torsion_witness(beta, 5) == 1
    assert power_is_identity(beta, 5) == 1
    assert power_is_identity(beta, 4) is None
    assert power_is_identity(BETA, 6) is None


def test_subgroup_character_power_of_f() -> None:
    char = PrincipalCharacter(GAMMA, BETA, -2)

    result = subgroup_character(char, SubgroupFamily.POWER_OF_F, 3)

    assert result.gamma == gamma_power(GAMMA, BETA, 3)
    assert result.beta_f == beta_power(BETA, 3)
    assert result.beta_g == -2


def test_subgroup_character_conjugate_power() -> None:
    result = subgroup_character(
        PrincipalCharacter(GAMMA, BETA, -2), SubgroupFamily.CONJUGATE_POWER, 2
    )

    assert result.beta_f == result.beta_g
    assert result.gamma == lambda_direct(GAMMA, BETA, 2)


def test_product_power_needs_involution() -> None:
    with pytest.raises(InapplicableFamily):
        subgroup_character(PrincipalCharacter(GAMMA, BETA, -2), SubgroupFamily.PRODUCT_POWER, 2)


def test_subgroup_rejects_degenerate_and_bad_index() -> None:
    with pytest.raises(InapplicableFamily):
        subgroup_character(PrincipalCharacter(0, BETA, -4), SubgroupFamily.POWER_OF_F, 2)
    with pytest.raises(InapplicableFamily):
        subgroup_character(PrincipalCharacter(GAMMA, BETA, -4), SubgroupFamily.POWER_OF_F, 0)


def test_elliptic_collapse_raised() -> None:
    with pytest.raises(EllipticCollapse):
        subgroup_character(PrincipalCharacter(GAMMA, -3, -4), SubgroupFamily.POWER_OF_F, 3)


BOUNDED = st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False)


@given(gamma=BOUNDED, beta=BOUNDED, n=st.integers(min_value=1, max_value=8))
def test_gamma_power_scales_with_beta_power(gamma: complex, beta: complex, n: int) -> None:
    # gamma(f^n, g) * beta = gamma * beta(f^n)
    lhs = gamma_power(gamma, beta, n) * beta
    rhs = gamma * beta_power(beta, n)
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs), abs(rhs))
