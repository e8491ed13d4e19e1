"""Exact polynomial arithmetic in (gamma, beta) with integer coefficients.

The printed trace-polynomial factorizations are stored here in factored form and
compared, after expansion, against the same recursions `recursions` runs numerically.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from typing import Literal, TypeVar, Union

from packages.kleinian.chebyshev import cheb_coeffs, dickson_coeffs
from packages.kleinian.errors import DegreeCap
from packages.kleinian.observability.metrics import record_identity_check
from packages.kleinian.recursions import SubgroupFamily

logger = logging.getLogger(__name__)

SEQ_DEGREE_CAP = 32

Exponent = tuple[int, int]
PolyLike = Union["BivarPoly", int]
Number = TypeVar("Number", int, float, complex)


class BivarPoly:
    """Polynomial sum c_ij gamma^i beta^j with no zero coefficient stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None) -> None:
        clean: dict[Exponent, int] = {}
        for (i, j), coeff in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            if coeff:
                clean[(int(i), int(j))] = int(coeff)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def const(cls, value: int) -> BivarPoly:
        return cls({(0, 0): value})

    @classmethod
    def gamma(cls) -> BivarPoly:
        return cls({(1, 0): 1})

    @classmethod
    def beta(cls) -> BivarPoly:
        return cls({(0, 1): 1})

    @classmethod
    def univariate(cls, coeffs: Mapping[int, int]) -> BivarPoly:
        return cls({(0, power): coeff for power, coeff in coeffs.items()})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((i + j for i, j in self._terms), default=0)

    def __add__(self, other: PolyLike) -> BivarPoly:
        return poly_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other: PolyLike) -> BivarPoly:
        return poly_sub(self, _coerce(other))

    def __rsub__(self, other: PolyLike) -> BivarPoly:
        return poly_sub(_coerce(other), self)

    def __mul__(self, other: PolyLike) -> BivarPoly:
        if isinstance(other, int):
            return poly_scale(self, other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> BivarPoly:
        return poly_neg(self)

    def __pow__(self, exponent: int) -> BivarPoly:
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = BivarPoly.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = poly_mul(result, base)
            exponent >>= 1
            if exponent:
                base = poly_mul(base, base)
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"BivarPoly({self.render()!r})"

    def scale(self, factor: int) -> BivarPoly:
        return poly_scale(self, factor)

    def render(self, names: tuple[str, str] = ("gamma", "beta")) -> str:
        """Canonical text form: descending total degree, then descending gamma power."""
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), key=lambda item: (-sum(item[0]), -item[0][0]))
        pieces: list[str] = []
        for index, ((i, j), coeff) in enumerate(ordered):
            monomial = "*".join(
                _power(name, exp) for name, exp in zip(names, (i, j), strict=True) if exp
            )
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if index == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)


def _power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def _coerce(value: PolyLike) -> BivarPoly:
    if isinstance(value, BivarPoly):
        return value
    if isinstance(value, int):
        return BivarPoly.const(value)
    raise TypeError(f"cannot combine BivarPoly with {type(value).__name__}")


ZERO = BivarPoly()
ONE = BivarPoly.const(1)
G = BivarPoly.gamma()
B = BivarPoly.beta()


def poly_add(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    terms = p.terms
    for key, coeff in q.terms.items():
        terms[key] = terms.get(key, 0) + coeff
    return BivarPoly(terms)


def poly_neg(p: BivarPoly) -> BivarPoly:
    return BivarPoly({key: -coeff for key, coeff in p.terms.items()})


def poly_sub(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    return poly_add(p, poly_neg(q))


def poly_scale(p: BivarPoly, factor: int) -> BivarPoly:
    return BivarPoly({key: factor * coeff for key, coeff in p.terms.items()})


def poly_mul(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    terms: dict[Exponent, int] = {}
    q_terms = q.terms
    for (i1, j1), c1 in p.terms.items():
        for (i2, j2), c2 in q_terms.items():
            key = (i1 + i2, j1 + j2)
            terms[key] = terms.get(key, 0) + c1 * c2
    return BivarPoly(terms)


def poly_eval(p: BivarPoly, gamma: Number, beta: Number) -> Number:
    """Horner in gamma over beta-polynomial coefficients.

    Integer inputs stay integers, so this doubles as an exact evaluator.
    """
    by_gamma: dict[int, dict[int, int]] = {}
    for (i, j), coeff in p.terms.items():
        by_gamma.setdefault(i, {})[j] = coeff
    if not by_gamma:
        return gamma * 0
    result = gamma * 0
    for i in range(max(by_gamma), -1, -1):
        row = by_gamma.get(i, {})
        inner = beta * 0
        for j in range(max(row, default=0), -1, -1):
            inner = inner * beta + row.get(j, 0)
        result = result * gamma + inner
    return result


def poly_substitute_beta(p: BivarPoly, replacement: BivarPoly) -> BivarPoly:
    powers: list[BivarPoly] = [ONE]
    result = ZERO
    for (i, j), coeff in p.terms.items():
        while len(powers) <= j:
            powers.append(poly_mul(powers[-1], replacement))
        result = poly_add(result, poly_scale(poly_mul(G**i, powers[j]), coeff))
    return result


@dataclass(frozen=True)
class RawSeq:
    u: BivarPoly
    v: BivarPoly


def poly_a_seq(seq: RawSeq, n: int) -> list[BivarPoly]:
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    terms = [ZERO]
    if n == 0:
        return terms
    terms.append(seq.v)
    coefficient = seq.u + 2
    shift = poly_scale(seq.v, 2)
    for _ in range(n - 1):
        terms.append(poly_add(poly_sub(poly_mul(coefficient, terms[-1]), terms[-2]), shift))
    return terms


FAMILY_SEQS: dict[SubgroupFamily, RawSeq] = {
    SubgroupFamily.POWER_OF_F: RawSeq(B, G),
    SubgroupFamily.PRODUCT_POWER: RawSeq(G - B - 4, G),
    SubgroupFamily.COMMUTATOR_POWER: RawSeq(G * (G + 4), G * (G - B)),
}


def gen_sequence_poly(family: SubgroupFamily | RawSeq, n: int) -> BivarPoly:
    """gamma-sequence polynomial of a subgroup family, or of an explicit (u, v) pair.

    ConjugatePower returns lambda_n = gamma_n (gamma_n - beta_n).
    """
    if n > SEQ_DEGREE_CAP:
        raise DegreeCap(f"sequence index {n} exceeds cap {SEQ_DEGREE_CAP}")
    if isinstance(family, RawSeq):
        return poly_a_seq(family, n)[-1]
    if family is SubgroupFamily.CONJUGATE_POWER:
        gamma_n = poly_a_seq(FAMILY_SEQS[SubgroupFamily.POWER_OF_F], n)[-1]
        beta_n = poly_a_seq(RawSeq(B, B), n)[-1]
        return gamma_n * (gamma_n - beta_n)
    return poly_a_seq(FAMILY_SEQS[family], n)[-1]


def beta_power_poly(n: int) -> BivarPoly:
    w = B + 2
    result = ZERO
    for power, coeff in enumerate(dickson_coeffs(n)):
        result = result + coeff * w**power
    return result - 2


# Printed factorizations. Chebyshev rows are {power of z: coefficient}.
CHEBYSHEV_TABLE: dict[int, dict[int, int]] = {
    0: {0: 1},
    1: {1: 1},
    2: {2: 2, 0: -1},
    3: {3: 4, 1: -3},
    4: {4: 8, 2: -8, 0: 1},
    5: {5: 16, 3: -20, 1: 5},
    6: {6: 32, 4: -48, 2: 18, 0: -1},
    7: {7: 64, 5: -112, 3: 56, 1: -7},
    8: {8: 128, 6: -256, 4: 160, 2: -32, 0: 1},
}


def _gamma_power_table() -> dict[int, BivarPoly]:
    return {
        1: G,
        2: G * (B + 4),
        3: G * (B + 3) ** 2,
        4: G * (B + 4) * (B + 2) ** 2,
        5: G * (B**2 + 5 * B + 5) ** 2,
        6: G * (B + 4) * (B + 3) ** 2 * (B + 1) ** 2,
    }


def _gamma_list_table() -> dict[int, BivarPoly]:
    x = G - B
    quad_5 = 1 + 3 * B + B**2 - 3 * G - 2 * B * G + G**2
    quad_8 = 2 + 4 * B + B**2 - 4 * G - 2 * B * G + G**2
    quad_10 = 5 + 5 * B + B**2 - 5 * G - 2 * B * G + G**2
    cubic_7 = (
        -1 - 6 * B - 5 * B**2 - B**3 + 6 * G + 10 * B * G + 3 * B**2 * G
        - 5 * G**2 - 3 * B * G**2 + G**3
    )
    cubic_9 = (
        -1 - 9 * B - 6 * B**2 - B**3 + 9 * G + 12 * B * G + 3 * B**2 * G
        - 6 * G**2 - 3 * B * G**2 + G**3
    )
    return {
        0: ZERO,
        1: G,
        2: G * x,
        3: G * (x - 1) ** 2,
        4: G * x * (x - 2) ** 2,
        5: G * quad_5**2,
        6: G * x * (x - 1) ** 2 * (x - 3) ** 2,
        7: G * cubic_7**2,
        8: G * x * (x - 2) ** 2 * quad_8**2,
        9: G * (x - 1) ** 2 * cubic_9**2,
        10: G * x * quad_10**2 * quad_5**2,
    }


def _commutator_table() -> dict[int, BivarPoly]:
    lead = G * (G - B)
    return {
        1: lead,
        2: lead * (G + 2) ** 2,
        3: lead * (G + 1) ** 2 * (G + 3) ** 2,
        4: lead * (G + 2) ** 2 * (G**2 + 4 * G + 2) ** 2,
        5: lead * (G**2 + 3 * G + 1) ** 2 * (G**2 + 5 * G + 5) ** 2,
    }


@dataclass(frozen=True)
class PrintedIdentity:
    name: str
    printed: BivarPoly
    generated: Callable[[], BivarPoly]


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    status: Literal["pass", "fail"]
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def printed_identities() -> list[PrintedIdentity]:
    identities: list[PrintedIdentity] = []
    for n, row in CHEBYSHEV_TABLE.items():
        identities.append(
            PrintedIdentity(
                f"chebyshev_T{n}",
                BivarPoly.univariate(row),
                lambda n=n: BivarPoly.univariate(dict(enumerate(cheb_coeffs(n).coeffs))),
            )
        )
    for n, printed in _gamma_power_table().items():
        identities.append(
            PrintedIdentity(
                f"gamma_f{n}_g",
                printed,
                lambda n=n: gen_sequence_poly(SubgroupFamily.POWER_OF_F, n),
            )
        )
    for n, printed in _gamma_list_table().items():
        identities.append(
            PrintedIdentity(
                f"gamma_seq_{n}",
                printed,
                lambda n=n: gen_sequence_poly(SubgroupFamily.PRODUCT_POWER, n),
            )
        )
    for n, printed in _commutator_table().items():
        identities.append(
            PrintedIdentity(
                f"gamma_f_commutator{n}",
                printed,
                lambda n=n: gen_sequence_poly(SubgroupFamily.COMMUTATOR_POWER, n),
            )
        )
    for n in range(9):
        identities.append(
            PrintedIdentity(
                f"beta_power_chebyshev_{n}",
                beta_power_poly(n),
                lambda n=n: gen_sequence_poly(RawSeq(B, B), n),
            )
        )
    return identities


def verify_printed_identities(
    identities: Iterable[PrintedIdentity] | None = None,
) -> list[IdentityCheck]:
    checks: list[IdentityCheck] = []
    for identity in identities if identities is not None else printed_identities():
        generated = identity.generated()
        passed = generated == identity.printed
        record_identity_check("printed", passed)
        if passed:
            checks.append(IdentityCheck(identity.name, "pass"))
            continue
        difference = (generated - identity.printed).render()
        logger.warning(
            "identity_check_failed",
            extra={"identity": identity.name, "difference": difference},
        )
        checks.append(IdentityCheck(identity.name, "fail", f"generated - printed = {difference}"))
    return checks
