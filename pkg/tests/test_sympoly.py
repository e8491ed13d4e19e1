from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packages.kleinian.errors import DegreeCap
from packages.kleinian.recursions import SubgroupFamily, a_seq, lambda_direct
from packages.kleinian.sympoly import (
    B,
    G,
    ONE,
    ZERO,
    BivarPoly,
    PrintedIdentity,
    RawSeq,
    beta_power_poly,
    gen_sequence_poly,
    poly_eval,
    poly_substitute_beta,
    printed_identities,
    verify_printed_identities,
)

small_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-20, 20),
    max_size=6,
).map(BivarPoly)


def test_zero_coefficients_are_dropped() -> None:
    p = BivarPoly({(1, 0): 0, (0, 1): 3})

    assert p.terms == {(0, 1): 3}
    assert (G - G).is_zero()
    assert ZERO == 0
    assert ONE == 1


def test_render_is_canonical() -> None:
    assert (G * (B + 4)).render() == "gamma*beta + 4*gamma"
    assert (G**2 - 3 * B + 1).render() == "gamma^2 - 3*beta + 1"
    assert ZERO.render() == "0"


def test_negative_exponent_rejected() -> None:
    with pytest.raises(ValueError):
        BivarPoly({(-1, 0): 1})


def test_exact_integer_evaluation() -> None:
    p = (G - B - 4) ** 3

    assert poly_eval(p, 7, 2) == 1
    assert isinstance(poly_eval(p, 7, 2), int)


def test_substitute_beta() -> None:
    p = G * B**2 + B

    assert poly_substitute_beta(p, G + 1) == G * (G + 1) ** 2 + G + 1


def test_power_of_f_sequence_matches_numeric_recursion() -> None:
    gamma, beta = complex(0.3, 1.1), complex(-2.2, 0.4)
    for n in range(1, 8):
        symbolic = poly_eval(gen_sequence_poly(SubgroupFamily.POWER_OF_F, n), gamma, beta)
        numeric = a_seq(beta, gamma, n)
        assert abs(symbolic - numeric) <= 1e-9 * max(1, abs(numeric))


def test_conjugate_power_is_lambda() -> None:
    gamma, beta = complex(0.3, 1.1), complex(-2.2, 0.4)
    symbolic = poly_eval(gen_sequence_poly(SubgroupFamily.CONJUGATE_POWER, 3), gamma, beta)
    numeric = lambda_direct(gamma, beta, 3)

    assert abs(symbolic - numeric) <= 1e-9 * max(1, abs(numeric))


def test_raw_sequence_and_degree_cap() -> None:
    assert gen_sequence_poly(RawSeq(B, G), 2) == G * (B + 4)
    with pytest.raises(DegreeCap):
        gen_sequence_poly(SubgroupFamily.POWER_OF_F, 33)


def test_beta_power_poly_low_degrees() -> None:
    assert beta_power_poly(1) == B
    assert beta_power_poly(2) == B**2 + 4 * B


def test_printed_identities_all_pass() -> None:
    checks = verify_printed_identities()

    assert len(checks) == len(printed_identities())
    assert [check.identity for check in checks if not check.passed] == []
    names = {check.identity for check in checks}
    assert {"chebyshev_T8", "gamma_f6_g", "gamma_seq_10", "gamma_f_commutator5"} <= names


def test_perturbed_identity_is_reported() -> None:
    original = next(item for item in printed_identities() if item.name == "gamma_f3_g")
    perturbed = PrintedIdentity(original.name, original.printed + G, original.generated)

    [check] = verify_printed_identities([perturbed])

    assert not check.passed
    assert check.status == "fail"
    assert "-gamma" in check.detail


@settings(max_examples=50, deadline=None)
@given(p=small_polys, q=small_polys, r=small_polys)
def test_ring_laws(p: BivarPoly, q: BivarPoly, r: BivarPoly) -> None:
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@settings(max_examples=50, deadline=None)
@given(p=small_polys, gamma=st.integers(-5, 5), beta=st.integers(-5, 5))
def test_evaluation_is_a_ring_homomorphism(p: BivarPoly, gamma: int, beta: int) -> None:
    q = p * (G + B)

    assert poly_eval(q, gamma, beta) == poly_eval(p, gamma, beta) * (gamma + beta)
