from __future__ import annotations

import re
from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, Field, PlainSerializer, TypeAdapter

from packages.kleinian.catalog import KnownGroup
from packages.kleinian.characters import PrincipalCharacter, classify_character
from packages.kleinian.errors import ComplexLiteralError
from packages.kleinian.inequalities import Assumptions, BatteryResult, InequalityReport
from packages.kleinian.oracle import OracleCheck, Realization
from packages.kleinian.recursions import SubgroupFamily
from packages.kleinian.sympoly import IdentityCheck

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"^[+-]?{_NUM}$")
_IMAG_RE = re.compile(rf"^([+-]?)({_NUM})?i$")
_BOTH_RE = re.compile(rf"^([+-]?{_NUM})([+-])({_NUM})?i$")


def parse_complex(text: str) -> complex:
    """Parse "re", "imi" or "re+imi" (e.g. "-3", "2i", "0.5+0.8660254i")."""
    cleaned = text.strip().replace("−", "-").replace(" ", "")
    if _REAL_RE.match(cleaned):
        return complex(float(cleaned), 0.0)
    match = _IMAG_RE.match(cleaned)
    if match:
        sign, digits = match.groups()
        value = float(digits) if digits else 1.0
        return complex(0.0, -value if sign == "-" else value)
    match = _BOTH_RE.match(cleaned)
    if match:
        real, sign, digits = match.groups()
        value = float(digits) if digits else 1.0
        return complex(float(real), -value if sign == "-" else value)
    raise ComplexLiteralError(f"not a complex literal: {text!r}")


def _coerce_complex(value: Any) -> Any:
    if isinstance(value, str):
        return parse_complex(value)
    if isinstance(value, list | tuple) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, int | float):
        return complex(value)
    return value


ComplexValue = Annotated[
    complex,
    BeforeValidator(_coerce_complex),
    PlainSerializer(lambda z: [z.real, z.imag], return_type=list[float]),
]


class CharacterPayload(BaseModel):
    gamma: ComplexValue
    beta_f: ComplexValue
    beta_g: ComplexValue

    @classmethod
    def from_character(cls, char: PrincipalCharacter) -> CharacterPayload:
        return cls(gamma=char.gamma, beta_f=char.beta_f, beta_g=char.beta_g)

    def to_character(self) -> PrincipalCharacter:
        return PrincipalCharacter(self.gamma, self.beta_f, self.beta_g)


class InequalityReportPayload(BaseModel):
    name: str
    lhs: float
    bound: float
    margin: float
    satisfied: bool
    exceptions: list[str]
    applicability: str
    excused: bool
    sharp: bool
    overflow: bool = False

    @classmethod
    def from_report(cls, report: InequalityReport) -> InequalityReportPayload:
        return cls(
            name=report.name,
            lhs=report.lhs,
            bound=report.bound,
            margin=report.margin,
            satisfied=report.satisfied,
            exceptions=list(report.exceptions),
            applicability=report.applicability.value,
            excused=report.excused,
            sharp=report.sharp,
            overflow=report.overflow,
        )


class BatteryPayload(BaseModel):
    verdict: str
    character: CharacterPayload
    f_class: str
    depth: int
    violations: list[str]
    shadow_exceptions: list[str]
    reports: list[InequalityReportPayload]

    @classmethod
    def from_result(cls, result: BatteryResult) -> BatteryPayload:
        return cls(
            verdict=result.verdict.value,
            character=CharacterPayload.from_character(result.character),
            f_class=classify_character(result.character).value,
            depth=result.depth,
            violations=list(result.violations),
            shadow_exceptions=list(result.shadow_exceptions),
            reports=[InequalityReportPayload.from_report(item) for item in result.reports],
        )


class CheckRequest(BaseModel):
    character: CharacterPayload
    depth: int | None = Field(None, ge=1, le=64)
    assume_f_order: int | Literal["none"] | None = None
    assume_g_order2: bool = False

    def assumptions(self) -> Assumptions:
        return build_assumptions(self.assume_f_order, self.assume_g_order2)


def build_assumptions(f_order: int | str | None, g_order2: bool) -> Assumptions:
    if f_order is None:
        return Assumptions(g_order2=g_order2)
    if f_order == "none":
        return Assumptions(f_order=None, f_order_known=True, g_order2=g_order2)
    order = int(f_order)
    if order < 2:
        raise ValueError("assumed order of f must be >= 2")
    return Assumptions(f_order=order, f_order_known=True, g_order2=g_order2)


class SubgroupRequest(BaseModel):
    family: SubgroupFamily
    n: int = Field(..., ge=1, le=64)
    character: CharacterPayload


class RealizeRequest(BaseModel):
    character: CharacterPayload


class RealizationPayload(BaseModel):
    f: list[list[ComplexValue]]
    g: list[list[ComplexValue]]
    character: CharacterPayload
    residual: float

    @classmethod
    def from_realization(cls, realization: Realization) -> RealizationPayload:
        return cls(
            f=realization.f.as_rows(),
            g=realization.g.as_rows(),
            character=CharacterPayload.from_character(realization.source),
            residual=realization.residual,
        )


class IdentityCheckPayload(BaseModel):
    identity: str
    status: Literal["pass", "fail"]
    detail: str = ""

    @classmethod
    def from_check(cls, check: IdentityCheck) -> IdentityCheckPayload:
        return cls(
            identity=check.identity,
            status="pass" if check.passed else "fail",
            detail=check.detail,
        )

    @classmethod
    def from_oracle(cls, check: OracleCheck) -> IdentityCheckPayload:
        return cls(
            identity=f"oracle_{check.family.value}_n{check.n}",
            status="pass" if check.passed else "fail",
            detail=f"max relative error {check.max_error:.3e} over {check.samples} characters",
        )


IDENTITY_REPORT_ADAPTER = TypeAdapter(list[IdentityCheckPayload])


class FormulaPayload(BaseModel):
    gamma: str
    beta_f: str
    beta_g: str


class CatalogEntryPayload(BaseModel):
    name: str
    formulas: FormulaPayload
    character: CharacterPayload
    sharp_for: list[str]
    provenance: str
    role: str
    expected_verdict: str | None = None
    residual: float | None = None

    @classmethod
    def from_entry(cls, entry: KnownGroup) -> CatalogEntryPayload:
        return cls(
            name=entry.name,
            formulas=FormulaPayload(
                gamma=entry.gamma.text, beta_f=entry.beta_f.text, beta_g=entry.beta_g.text
            ),
            character=CharacterPayload.from_character(entry.character),
            sharp_for=list(entry.sharp_for),
            provenance=entry.provenance,
            role=entry.role.value,
            expected_verdict=entry.expected_verdict.value if entry.expected_verdict else None,
            residual=entry.realization.residual if entry.realization else None,
        )


class CatalogPayload(BaseModel):
    entries: list[CatalogEntryPayload]


def build_identity_report(
    printed: list[IdentityCheck], oracle: list[OracleCheck] | None = None
) -> list[IdentityCheckPayload]:
    report = [IdentityCheckPayload.from_check(check) for check in printed]
    report += [IdentityCheckPayload.from_oracle(check) for check in oracle or []]
    return report


def identity_failures(report: list[IdentityCheckPayload]) -> list[str]:
    return [item.identity for item in report if item.status == "fail"]
