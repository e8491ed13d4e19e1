"""First-kind Chebyshev polynomials T_n.

The three-term recursion is the evaluation path used everywhere else; the closed
form is kept for cross-checks because it loses precision near |z| = 1.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from packages.kleinian.errors import DegreeCap

CHEB_DEGREE_CAP = 64


@dataclass(frozen=True)
class ChebCoeffs:
    n: int
    coeffs: tuple[int, ...]

    def evaluate(self, z: complex) -> complex:
        result: complex = 0
        for coeff in reversed(self.coeffs):
            result = result * z + coeff
        return result


def cheb_recursive(n: int, z: complex) -> complex:
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    if n == 0:
        return 1
    prev, cur = 1, z
    for _ in range(n - 1):
        prev, cur = cur, 2 * z * cur - prev
    return cur


def cheb_closed(n: int, z: complex) -> complex:
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    root = cmath.sqrt(z * z - 1)
    return 0.5 * ((z - root) ** n + (z + root) ** n)


def cheb_coeffs(n: int) -> ChebCoeffs:
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    if n > CHEB_DEGREE_CAP:
        raise DegreeCap(f"degree {n} exceeds cap {CHEB_DEGREE_CAP}")
    prev: list[int] = [1]
    if n == 0:
        return ChebCoeffs(0, tuple(prev))
    cur: list[int] = [0, 1]
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for power, coeff in enumerate(prev):
            nxt[power] -= coeff
        prev, cur = cur, nxt
    return ChebCoeffs(n, tuple(cur))


def dickson_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of 2*T_n(w/2) in powers of w.

    2*T_n(1 + beta/2) - 2 is beta(f^n); substituting w = 2 + beta keeps the
    computation inside the integers.
    """
    base = cheb_coeffs(n)
    scaled: list[int] = []
    for power, coeff in enumerate(base.coeffs):
        numerator = 2 * coeff
        if power == 0:
            scaled.append(numerator)
            continue
        divisor = 1 << power
        quotient, remainder = divmod(numerator, divisor)
        if remainder:
            raise ArithmeticError(f"T_{n} coefficient of z^{power} not divisible by 2^{power - 1}")
        scaled.append(quotient)
    return tuple(scaled)
