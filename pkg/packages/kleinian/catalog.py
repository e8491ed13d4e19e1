"""Named groups whose characters saturate (or probe) the inequality battery."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

from packages.kleinian.characters import PrincipalCharacter
from packages.kleinian.inequalities import TOL_SHARP, Verdict, battery
from packages.kleinian.oracle import Realization, realize

logger = logging.getLogger(__name__)

SQRT5 = math.sqrt(5)


@dataclass(frozen=True)
class Formula:
    text: str
    value: complex


class EntryRole(str, Enum):
    GROUP = "group"
    # equality data for a bound, not claimed to be a discrete non-elementary group
    BOUND_WITNESS = "bound_witness"


@dataclass(frozen=True)
class KnownGroup:
    name: str
    gamma: Formula
    beta_f: Formula
    beta_g: Formula
    sharp_for: tuple[str, ...]
    provenance: str
    expected_verdict: Verdict | None
    role: EntryRole = EntryRole.GROUP
    realization: Realization | None = None

    @property
    def character(self) -> PrincipalCharacter:
        return PrincipalCharacter(self.gamma.value, self.beta_f.value, self.beta_g.value)


@dataclass(frozen=True)
class SharpnessCheck:
    entry: str
    inequality: str
    margin: float
    sharp: bool


@dataclass(frozen=True)
class ExpectationCheck:
    entry: str
    expected: Verdict
    actual: Verdict

    @property
    def matches(self) -> bool:
        return self.expected is self.actual


MINUS_FOUR = Formula("-4", -4)
GOLDEN_PROVENANCE = (
    "stated data of the Z2-extension of the (10,10,5) triangle group; as written it fails "
    "Jorgensen-type checks, so it only witnesses equality in the golden bound"
)


def _raw_entries() -> list[KnownGroup]:
    a5_beta = Formula("-(5+sqrt5)/2", -(5 + SQRT5) / 2)
    return [
        KnownGroup(
            name="fig8",
            gamma=Formula("(1+i*sqrt3)/2", complex(0.5, math.sqrt(3) / 2)),
            beta_f=Formula("0", 0),
            beta_g=Formula("0", 0),
            sharp_for=("jorgensen",),
            provenance="figure-eight knot complement group; equality in Jorgensen's inequality",
            expected_verdict=Verdict.PASSES_ALL,
        ),
        KnownGroup(
            name="237a",
            gamma=Formula(
                "4(cos^2(2pi/7)-sin^2(pi/7))",
                4 * (math.cos(2 * math.pi / 7) ** 2 - math.sin(math.pi / 7) ** 2),
            ),
            beta_f=Formula("-3", -3),
            beta_g=MINUS_FOUR,
            sharp_for=("lem15_first",),
            provenance="(2,3,7) hyperbolic triangle group; values cited from an external census",
            expected_verdict=Verdict.PASSES_ALL,
        ),
        KnownGroup(
            name="237b",
            gamma=Formula("-4", -4),
            beta_f=Formula("-3", -3),
            beta_g=MINUS_FOUR,
            sharp_for=("lem15_second",),
            provenance="(2,3,7) hyperbolic triangle group; values cited from an external census",
            expected_verdict=Verdict.PASSES_ALL,
        ),
        KnownGroup(
            name="245",
            gamma=Formula("(sqrt5-1)/2", (SQRT5 - 1) / 2),
            beta_f=Formula("-2", -2),
            beta_g=MINUS_FOUR,
            sharp_for=("beta_plus_2",),
            provenance="(2,4,5) hyperbolic triangle group",
            expected_verdict=Verdict.PASSES_ALL,
        ),
        KnownGroup(
            name="g623",
            gamma=Formula("-1", -1),
            beta_f=Formula("-1", -1),
            beta_g=MINUS_FOUR,
            sharp_for=("beta_plus_1", "beta_plus_1_sq"),
            provenance="generalized triangle group Gamma(6,2;3)",
            expected_verdict=Verdict.PASSES_ALL,
        ),
        KnownGroup(
            name="golden_plus",
            gamma=Formula("(sqrt5-3)/2", (SQRT5 - 3) / 2),
            beta_f=Formula("-(3+sqrt5)/2", -(3 + SQRT5) / 2),
            beta_g=MINUS_FOUR,
            sharp_for=("golden_plus",),
            provenance=GOLDEN_PROVENANCE,
            expected_verdict=None,
            role=EntryRole.BOUND_WITNESS,
        ),
        KnownGroup(
            name="golden_minus",
            gamma=Formula("(sqrt5-3)/2", (SQRT5 - 3) / 2),
            beta_f=Formula("-(3-sqrt5)/2", -(3 - SQRT5) / 2),
            beta_g=MINUS_FOUR,
            sharp_for=("golden_minus",),
            provenance=GOLDEN_PROVENANCE,
            expected_verdict=None,
            role=EntryRole.BOUND_WITNESS,
        ),
        KnownGroup(
            name="a5_a",
            gamma=Formula("2cos(pi/5)-2", 2 * math.cos(math.pi / 5) - 2),
            beta_f=a5_beta,
            beta_g=a5_beta,
            sharp_for=(),
            provenance="finite group A5; elementary exception to the order-two reduction",
            expected_verdict=Verdict.VIOLATES_CONDITIONAL,
        ),
        KnownGroup(
            name="a5_b",
            gamma=Formula("2cos(2pi/5)-2", 2 * math.cos(2 * math.pi / 5) - 2),
            beta_f=a5_beta,
            beta_g=a5_beta,
            sharp_for=(),
            provenance="finite group A5; elementary exception to the order-two reduction",
            expected_verdict=Verdict.VIOLATES_CONDITIONAL,
        ),
    ]


@lru_cache(maxsize=1)
def catalog_entries() -> tuple[KnownGroup, ...]:
    entries = []
    for entry in _raw_entries():
        char = entry.character
        realization = None if char.degenerate else realize(char)
        entries.append(replace(entry, realization=realization))
    return tuple(entries)


def lookup(name: str) -> KnownGroup:
    for entry in catalog_entries():
        if entry.name == name:
            return entry
    raise KeyError(f"unknown catalog entry: {name}")


def verify_sharpness(entry: KnownGroup) -> list[SharpnessCheck]:
    result = battery(entry.character)
    checks = []
    for name in entry.sharp_for:
        report = result.report(name)
        checks.append(
            SharpnessCheck(entry.name, name, report.margin, abs(report.margin) <= TOL_SHARP)
        )
        if abs(report.margin) > TOL_SHARP:
            logger.warning(
                "sharpness_check_failed",
                extra={"entry": entry.name, "inequality": name, "margin": report.margin},
            )
    return checks


def group_entries() -> list[KnownGroup]:
    return [entry for entry in catalog_entries() if entry.role is EntryRole.GROUP]


def verify_expectations() -> list[ExpectationCheck]:
    return [
        ExpectationCheck(entry.name, entry.expected_verdict, battery(entry.character).verdict)
        for entry in group_entries()
        if entry.expected_verdict is not None
    ]

