"""Brute-force cross-checks: realize a character as matrices and multiply words out.

f is upper-triangular [[s, 1], [0, 1/s]] and g lower-triangular [[a, 0], [c, 1/a]];
expanding the commutator gives tr[f, g] - 2 = c^2 + p c with p = (s - 1/s)(a - 1/a),
so c solves a quadratic and realization needs no iteration.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from packages.kleinian.characters import PrincipalCharacter, character_from_matrices
from packages.kleinian.errors import DegenerateCharacter
from packages.kleinian.mobius import IDENTITY, Matrix2, beta_of, mat_inverse, mat_mul
from packages.kleinian.observability.metrics import (
    record_identity_check,
    record_realization_residual,
)
from packages.kleinian.recursions import SubgroupFamily, subgroup_character
from packages.kleinian.settings import settings

logger = logging.getLogger(__name__)

TOL_RESIDUAL = 1e-9
TOL_IDENTITY = 1e-8
MODULUS_RANGE = (0.1, 4.0)

LETTERS = frozenset("FGfg")


@dataclass(frozen=True)
class Realization:
    f: Matrix2
    g: Matrix2
    source: PrincipalCharacter
    residual: float


@dataclass(frozen=True)
class Word:
    """Group word over F, G and their inverses, written f, g."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        bad = [letter for letter in self.letters if letter not in LETTERS]
        if bad:
            raise ValueError(f"unknown word letters: {''.join(bad)!r}")

    @classmethod
    def parse(cls, text: str) -> Word:
        return cls(tuple(text.strip()))

    def __str__(self) -> str:
        return "".join(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def inverse(self) -> Word:
        return Word(tuple(letter.swapcase() for letter in reversed(self.letters)))


F = Word(("F",))
G = Word(("G",))


def _half_trace_root(beta: complex) -> complex:
    # x with x + 1/x = sqrt(beta + 4) and x - 1/x = sqrt(beta)
    return (cmath.sqrt(beta + 4) + cmath.sqrt(beta)) / 2


def realize(char: PrincipalCharacter, larger_root: bool = True) -> Realization:
    """Upper/lower triangular pair with the given character.

    The two roots of the c-quadratic give conjugate pairs; the larger one is the
    stable choice near p^2 = -4 gamma.
    """
    if char.degenerate:
        raise DegenerateCharacter("gamma = 0 has no irreducible realization")
    gamma, beta_f, beta_g = char.as_tuple()
    s = _half_trace_root(beta_f)
    a = _half_trace_root(beta_g)
    p = (s - 1 / s) * (a - 1 / a)
    disc = cmath.sqrt(p * p + 4 * gamma)
    roots = sorted(((-p + disc) / 2, (-p - disc) / 2), key=abs)
    c = roots[1] if larger_root else roots[0]

    f = Matrix2(s, 1, 0, 1 / s)
    g = Matrix2(a, 0, c, 1 / a)
    recomputed = character_from_matrices(f, g)
    residual = max(
        abs(x - y) for x, y in zip(recomputed.as_tuple(), char.as_tuple(), strict=True)
    )
    record_realization_residual(residual)
    if residual > TOL_RESIDUAL:
        logger.warning(
            "realization_residual_high",
            extra={"character": list(char.as_tuple()), "residual": residual},
        )
    return Realization(f=f, g=g, source=char, residual=residual)


def word_eval(r: Realization, w: Word) -> Matrix2:
    # inverse letters come from the generators, never from a drifted product
    table = {"F": r.f, "G": r.g, "f": mat_inverse(r.f), "g": mat_inverse(r.g)}
    result = IDENTITY
    for letter in w.letters:
        result = mat_mul(result, table[letter])
    return result


def bracket_word(x: Word, y: Word) -> Word:
    """x y x^-1 y^-1 spelled out letter by letter."""
    return x * y * x.inverse() * y.inverse()


def family_words(family: SubgroupFamily, n: int) -> tuple[Word, Word]:
    """Generator pair whose principal character the family predicts."""
    if family is SubgroupFamily.POWER_OF_F:
        return F**n, G
    if family is SubgroupFamily.CONJUGATE_POWER:
        return F**n, G * F**n * G.inverse()
    if family is SubgroupFamily.PRODUCT_POWER:
        return (G * F) ** n, F
    commutator_gf = G * F * G.inverse() * F.inverse()
    return F, commutator_gf**n


def _relative_error(predicted: complex, actual: complex) -> float:
    return abs(predicted - actual) / max(1.0, abs(actual))


def check_identity(
    char: PrincipalCharacter,
    family: SubgroupFamily,
    n: int,
    realization: Realization | None = None,
) -> float:
    """Max relative error between the recursion prediction and the multiplied-out words.

    Long products drift off det = 1, so the commutator is evaluated as a word
    instead of inverting x and y.
    """
    predicted = subgroup_character(char, family, n)
    realization = realization or realize(char)
    first, second = family_words(family, n)
    actual_gamma = word_eval(realization, bracket_word(first, second)).trace - 2
    # the commutator power is the second generator here; compare its beta
    powered = second if family is SubgroupFamily.COMMUTATOR_POWER else first
    actual_beta = beta_of(word_eval(realization, powered))
    return max(
        _relative_error(predicted.gamma, actual_gamma),
        _relative_error(predicted.beta_f, actual_beta),
    )


@dataclass(frozen=True)
class OracleCheck:
    family: SubgroupFamily
    n: int
    max_error: float
    samples: int
    passed: bool


def random_characters(
    samples: int, seed: int, modulus_range: tuple[float, float] = MODULUS_RANGE
) -> list[PrincipalCharacter]:
    rng = np.random.default_rng(seed)
    lo, hi = modulus_range
    moduli = rng.uniform(lo, hi, size=(samples, 3))
    angles = rng.uniform(0.0, 2 * math.pi, size=(samples, 3))
    values = moduli * np.exp(1j * angles)
    return [PrincipalCharacter(complex(g), complex(b), complex(bg)) for g, b, bg in values]


def run_identity_suite(
    samples: int | None = None,
    depth: int | None = None,
    seed: int | None = None,
    families: Iterable[SubgroupFamily] = tuple(SubgroupFamily),
    tolerance: float = TOL_IDENTITY,
) -> list[OracleCheck]:
    samples = settings.oracle_samples if samples is None else samples
    depth = settings.family_depth if depth is None else depth
    seed = settings.oracle_seed if seed is None else seed
    characters = random_characters(samples, seed)

    checks: list[OracleCheck] = []
    for family in families:
        if family is SubgroupFamily.PRODUCT_POWER:
            suite = [PrincipalCharacter(c.gamma, c.beta_f, -4) for c in characters]
        else:
            suite = characters
        realizations = [realize(char) for char in suite]
        for n in range(1, depth + 1):
            worst = 0.0
            for char, realization in zip(suite, realizations, strict=True):
                worst = max(worst, check_identity(char, family, n, realization))
            passed = worst <= tolerance
            record_identity_check("oracle", passed)
            if not passed:
                logger.warning(
                    "identity_check_failed",
                    extra={"family": family.value, "n": n, "max_error": worst},
                )
            checks.append(OracleCheck(family, n, worst, len(characters), passed))
    return checks
