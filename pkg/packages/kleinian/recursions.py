"""Trace-polynomial sequences for powers, conjugates, products and commutators.

Every sequence here is an instance of

    a_0 = 0, a_1 = v, a_{n+1} = (2 + u) a_n - a_{n-1} + 2 v

for a suitable (u, v): u is the beta parameter of the element being powered and v the
first term. The integer-step recursion is the default path; closed forms exist for
cross-checking only.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum

from packages.kleinian.characters import PrincipalCharacter
from packages.kleinian.chebyshev import cheb_recursive
from packages.kleinian.errors import EllipticCollapse, InapplicableFamily
from packages.kleinian.mobius import ensure_finite

logger = logging.getLogger(__name__)

TOL_PARAB = 1e-10
TOL_COLLAPSE = 1e-9


class SubgroupFamily(str, Enum):
    POWER_OF_F = "PowerOfF"
    CONJUGATE_POWER = "ConjugatePower"
    PRODUCT_POWER = "ProductPower"
    COMMUTATOR_POWER = "CommutatorPower"


@dataclass(frozen=True)
class SeqParams:
    u: complex
    v: complex

    def term(self, n: int) -> complex:
        return a_seq(self.u, self.v, n)

    def terms(self, n: int) -> list[complex]:
        return a_seq_terms(self.u, self.v, n)


def a_seq_terms(u: complex, v: complex, n: int) -> list[complex]:
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    terms: list[complex] = [0]
    if n == 0:
        return terms
    terms.append(v)
    coefficient = 2 + u
    for _ in range(n - 1):
        terms.append(coefficient * terms[-1] - terms[-2] + 2 * v)
    return terms


def a_seq(u: complex, v: complex, n: int) -> complex:
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    if n == 0:
        return 0
    prev: complex = 0
    cur: complex = v
    coefficient = 2 + u
    for _ in range(n - 1):
        prev, cur = cur, coefficient * cur - prev + 2 * v
    return ensure_finite(cur, f"a_{n}")


def beta_power(beta: complex, n: int) -> complex:
    return 2 * cheb_recursive(n, 1 + beta / 2) - 2


def gamma_power(gamma: complex, beta: complex, n: int) -> complex:
    """gamma(f^n, g) = gamma * beta(f^n) / beta, with the n^2 * gamma limit at beta = 0.

    Both cases are the (beta, gamma) sequence, so no branch is needed.
    """
    return a_seq(beta, gamma, n)


def alpha_n(gamma: complex, beta: complex, n: int) -> complex:
    return gamma_power(gamma, beta, n) - beta_power(beta, n)


def lambda_direct(gamma: complex, beta: complex, n: int) -> complex:
    gamma_n = gamma_power(gamma, beta, n)
    return gamma_n * (gamma_n - beta_power(beta, n))


def lambda_n(gamma: complex, beta: complex, n: int) -> complex:
    """gamma(f^n, g f^n g^-1) through its closed form.

    Falls back to gamma_n (gamma_n - beta_n) when beta is parabolic-small.
    """
    if n < 1:
        raise ValueError("lambda_n is defined for n >= 1")
    if abs(beta) <= TOL_PARAB:
        return lambda_direct(gamma, beta, n)
    root = cmath.sqrt(beta) * cmath.sqrt(4 + beta)
    bracket = -(2 ** (n + 1)) + (2 + beta - root) ** n + (2 + beta + root) ** n
    lambda_1 = gamma * (gamma - beta)
    return lambda_1 * bracket * bracket / (4**n * beta * beta)


def closed_form_seq(seed: complex, beta: complex, n: int) -> complex:
    if abs(beta) <= TOL_PARAB:
        return n * n * seed
    root = cmath.sqrt(beta) * cmath.sqrt(4 + beta)
    x_minus = 2 + beta - root
    x_plus = 2 + beta + root
    return -(2.0**-n) * (2 ** (n + 1) - x_minus**n - x_plus**n) * seed / beta


def gamma_closed(gamma: complex, beta: complex, n: int) -> complex:
    return closed_form_seq(gamma, beta, n)


def alpha_closed(gamma: complex, beta: complex, n: int) -> complex:
    return closed_form_seq(gamma - beta, beta, n)


def gamma_fg_power(gamma: complex, beta: complex, n: int) -> complex:
    return a_seq(gamma - beta - 4, gamma, n)


def beta_fg_power(gamma: complex, beta: complex, n: int) -> complex:
    return beta_power(gamma - beta - 4, n)


def gamma_commutator_power(gamma: complex, beta: complex, n: int) -> complex:
    return a_seq(gamma * (gamma + 4), gamma * (gamma - beta), n)


def beta_commutator_power(gamma: complex, n: int) -> complex:
    return beta_power(gamma * (gamma + 4), n)


def torsion_witness(beta: complex, n: int, tol: float = TOL_COLLAPSE) -> int | None:
    for p in range(1, n):
        if abs(beta + 4 * math.sin(p * math.pi / n) ** 2) <= tol:
            return p
    return None


def power_is_identity(beta: complex, n: int) -> int | None:
    try:
        collapsed = abs(beta_power(beta, n)) <= TOL_COLLAPSE
    except OverflowError:
        return None
    if not collapsed:
        return None
    return torsion_witness(beta, n)


def _check_collapse(beta: complex, n: int, family: SubgroupFamily) -> None:
    witness = power_is_identity(beta, n)
    if witness is None:
        return
    logger.info(
        "elliptic_collapse",
        extra={"family": family.value, "n": n, "beta": beta, "p": witness},
    )
    raise EllipticCollapse(
        f"{family.value}: power {n} is the identity (beta = -4 sin^2({witness} pi / {n}))"
    )


def subgroup_character(
    char: PrincipalCharacter, family: SubgroupFamily, n: int
) -> PrincipalCharacter:
    if n < 1:
        raise InapplicableFamily(f"{family.value} needs n >= 1, got {n}")
    if char.degenerate:
        raise InapplicableFamily("gamma = 0: f and g share a fixed point")
    gamma, beta, beta_g = char.as_tuple()

    if family is SubgroupFamily.POWER_OF_F:
        _check_collapse(beta, n, family)
        return PrincipalCharacter(gamma_power(gamma, beta, n), beta_power(beta, n), beta_g)

    if family is SubgroupFamily.CONJUGATE_POWER:
        _check_collapse(beta, n, family)
        beta_n = beta_power(beta, n)
        return PrincipalCharacter(lambda_direct(gamma, beta, n), beta_n, beta_n)

    if family is SubgroupFamily.PRODUCT_POWER:
        if not char.g_order_two:
            raise InapplicableFamily("ProductPower needs g of order two (beta_g = -4)")
        _check_collapse(gamma - beta - 4, n, family)
        return PrincipalCharacter(
            gamma_fg_power(gamma, beta, n), beta_fg_power(gamma, beta, n), beta
        )

    _check_collapse(gamma * (gamma + 4), n, family)
    return PrincipalCharacter(
        gamma_commutator_power(gamma, beta, n), beta_commutator_power(gamma, n), beta
    )
