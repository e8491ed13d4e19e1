from __future__ import annotations

import pytest

from packages.kleinian.errors import ComplexLiteralError
from packages.kleinian.inequalities import Assumptions
from packages.kleinian.schemas import (
    IDENTITY_REPORT_ADAPTER,
    CharacterPayload,
    build_assumptions,
    build_identity_report,
    identity_failures,
    parse_complex,
)
from packages.kleinian.sympoly import IdentityCheck


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("-3", complex(-3, 0)),
        ("2i", complex(0, 2)),
        ("-i", complex(0, -1)),
        ("0.5+0.8660254i", complex(0.5, 0.8660254)),
        ("1e-3-2.5i", complex(0.001, -2.5)),
        ("−1", complex(-1, 0)),
        (" 1 + i ", complex(1, 1)),
    ],
)
def test_parse_complex(text: str, expected: complex) -> None:
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1+", "1+2j", "i2"])
def test_parse_complex_rejects(text: str) -> None:
    with pytest.raises(ComplexLiteralError):
        parse_complex(text)


def test_character_payload_accepts_several_shapes() -> None:
    payload = CharacterPayload.model_validate({"gamma": "1+2i", "beta_f": [0.5, -1], "beta_g": -4})

    assert payload.to_character().as_tuple() == (complex(1, 2), complex(0.5, -1), complex(-4, 0))
    assert payload.model_dump()["gamma"] == [1.0, 2.0]


def test_build_assumptions() -> None:
    assert build_assumptions(None, False) == Assumptions()
    assert build_assumptions("none", True) == Assumptions(f_order_known=True, g_order2=True)
    assert build_assumptions(5, False) == Assumptions(f_order=5, f_order_known=True)
    with pytest.raises(ValueError):
        build_assumptions(1, False)


def test_identity_report_collects_failures() -> None:
    report = build_identity_report(
        [IdentityCheck("chebyshev_T2", "pass"), IdentityCheck("gamma_f2_g", "fail", "x")]
    )

    assert [item.status for item in report] == ["pass", "fail"]
    assert identity_failures(report) == ["gamma_f2_g"]
    assert IDENTITY_REPORT_ADAPTER.dump_python(report)[1] == {
        "identity": "gamma_f2_g",
        "status": "fail",
        "detail": "x",
    }
