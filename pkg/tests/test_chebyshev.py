from __future__ import annotations

import cmath

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from packages.kleinian.chebyshev import (
    CHEB_DEGREE_CAP,
    cheb_closed,
    cheb_coeffs,
    cheb_recursive,
    dickson_coeffs,
)
from packages.kleinian.errors import DegreeCap


def test_low_degree_values() -> None:
    assert cheb_recursive(0, 0.3) == 1
    assert cheb_recursive(1, 0.3) == 0.3
    assert abs(cheb_recursive(2, 0.3) - (2 * 0.09 - 1)) < 1e-15


def test_coefficients_match_known_rows() -> None:
    assert cheb_coeffs(4).coeffs == (1, 0, -8, 0, 8)
    assert cheb_coeffs(5).coeffs == (0, 5, 0, -20, 0, 16)


def test_coefficients_evaluate_like_recursion() -> None:
    z = complex(0.4, -1.1)
    for n in range(12):
        assert abs(cheb_coeffs(n).evaluate(z) - cheb_recursive(n, z)) < 1e-9


def test_degree_cap() -> None:
    with pytest.raises(DegreeCap):
        cheb_coeffs(CHEB_DEGREE_CAP + 1)


def test_negative_degree_rejected() -> None:
    with pytest.raises(ValueError):
        cheb_recursive(-1, 0.5)


def test_dickson_coefficients() -> None:
    # 2 T_3(w/2) = w^3 - 3w
    assert dickson_coeffs(3) == (0, -3, 0, 1)
    assert dickson_coeffs(0) == (2,)


def test_closed_form_agrees_away_from_unit_circle() -> None:
    z = complex(2.5, 0.7)
    for n in range(10):
        expected = cheb_recursive(n, z)
        assert abs(cheb_closed(n, z) - expected) <= 1e-9 * max(1.0, abs(expected))


@settings(max_examples=200, deadline=None)
@given(
    radius=st.floats(min_value=0.0, max_value=2.0),
    angle=st.floats(min_value=-3.14159, max_value=3.14159),
    n=st.integers(min_value=0, max_value=32),
)
def test_chebyshev_of_cosh(radius: float, angle: float, n: int) -> None:
    z = cmath.rect(radius, angle)
    expected = cmath.cosh(n * z)

    error = abs(cheb_recursive(n, cmath.cosh(z)) - expected)

    assert error <= 1e-9 * max(1.0, abs(expected))


@settings(max_examples=200, deadline=None)
@given(
    re=st.floats(min_value=-1.0, max_value=1.0),
    im=st.floats(min_value=-3.14159, max_value=3.14159),
    m=st.integers(min_value=0, max_value=32),
    n=st.integers(min_value=0, max_value=32),
)
def test_chebyshev_composition(re: float, im: float, m: int, n: int) -> None:
    assume(m * n <= 32)
    z = cmath.cosh(complex(re, im))
    expected = cheb_recursive(m * n, z)

    error = abs(cheb_recursive(m, cheb_recursive(n, z)) - expected)

    assert error <= 1e-8 * max(1.0, abs(expected))


@settings(max_examples=200, deadline=None)
@given(
    radius=st.floats(min_value=1.5, max_value=3.0),
    angle=st.floats(min_value=-3.14159, max_value=3.14159),
    n=st.integers(min_value=0, max_value=32),
)
def test_closed_form_agrees_off_the_unit_disc(radius: float, angle: float, n: int) -> None:
    z = cmath.rect(radius, angle)
    expected = cheb_recursive(n, z)

    assert abs(cheb_closed(n, z) - expected) <= 1e-9 * max(1.0, abs(expected))
