from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from packages.kleinian.errors import NotOrderTwo
from packages.kleinian.mobius import (
    ElementClass,
    Matrix2,
    beta_of,
    classify_beta,
    ensure_finite,
    gamma_of,
    mat_mul,
)

TOL_DEGENERATE = 1e-12
TOL_ORDER_TWO = 1e-9
TOL_ELLIPTIC = 1e-9
SMALL_ORDER_MAX = 6

# Small-order escape hatches for the (gamma, beta, -4) reduction, keyed by the order of f.
SMALL_ORDER_EXCEPTIONS: dict[int, str] = {
    2: "f has order 2 and <f,phi> is the Klein 4-group",
    3: "f has order 3 and <f,phi> is one of A4 or S4",
    4: "f has order 4 and <f,phi> is S4",
    5: "f has order 5 and <f,phi> is A5",
    6: "f has order 6 and <f,phi> is the (2,3,6) Euclidean triangle group",
}


@dataclass(frozen=True)
class PrincipalCharacter:
    gamma: complex
    beta_f: complex
    beta_g: complex

    def __post_init__(self) -> None:
        for name in ("gamma", "beta_f", "beta_g"):
            object.__setattr__(self, name, ensure_finite(getattr(self, name), name))

    @property
    def degenerate(self) -> bool:
        return abs(self.gamma) < TOL_DEGENERATE

    @property
    def g_order_two(self) -> bool:
        return abs(self.beta_g + 4) <= TOL_ORDER_TWO

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.gamma, self.beta_f, self.beta_g)


@dataclass(frozen=True)
class GeometricData:
    """Translation length / holonomy pairs for f and g plus the axis data.

    tau = 0 with theta != 0 is an elliptic, tau > 0 a loxodromic.
    """

    tau_f: float
    theta_f: float
    tau_g: float
    theta_g: float
    delta: float = 0.0
    theta: float = 0.0


@dataclass(frozen=True)
class Order2Shadow:
    first: PrincipalCharacter
    second: PrincipalCharacter
    f_order: int | None = None
    exceptions: tuple[str, ...] = field(default_factory=tuple)

    def pair(self) -> tuple[PrincipalCharacter, PrincipalCharacter]:
        return (self.first, self.second)


def character_from_matrices(f: Matrix2, g: Matrix2) -> PrincipalCharacter:
    return PrincipalCharacter(gamma_of(f, g), beta_of(f), beta_of(g))


def fricke_gamma(tr_f: complex, tr_g: complex, tr_fg: complex) -> complex:
    beta_f = tr_f * tr_f - 4
    beta_g = tr_g * tr_g - 4
    beta_fg = tr_fg * tr_fg - 4
    return beta_f + beta_g + beta_fg - tr_f * tr_g * tr_fg + 8


def fricke_from_matrices(f: Matrix2, g: Matrix2) -> complex:
    return fricke_gamma(f.trace, g.trace, mat_mul(f, g).trace)


def _require_order_two(char: PrincipalCharacter) -> None:
    if not char.g_order_two:
        raise NotOrderTwo(f"beta_g = {char.beta_g!r} is not -4; g is not of order two")


def beta_fg_order2(char: PrincipalCharacter) -> complex:
    _require_order_two(char)
    return char.gamma - char.beta_f - 4


def elliptic_order(
    beta: complex, max_order: int = SMALL_ORDER_MAX, tol: float = TOL_ELLIPTIC
) -> int | None:
    """Order p of an elliptic with parameter beta, if p <= max_order.

    beta(f) = -4 sin^2(k pi / p) with gcd(k, p) = 1 for a primitive rotation of order p.
    """
    beta = complex(beta)
    if abs(beta.imag) > tol:
        return None
    for order in range(2, max_order + 1):
        for k in range(1, order // 2 + 1):
            if math.gcd(k, order) != 1:
                continue
            target = -4 * math.sin(k * math.pi / order) ** 2
            if abs(beta.real - target) <= tol:
                return order
    return None


def small_order_exceptions(f_order: int | None) -> tuple[str, ...]:
    if f_order is None or f_order not in SMALL_ORDER_EXCEPTIONS:
        return ()
    return (SMALL_ORDER_EXCEPTIONS[f_order],)


def order2_shadow(char: PrincipalCharacter, f_order: int | None = None) -> Order2Shadow:
    """The two order-two companions (gamma, beta, -4) and (beta - gamma, beta, -4).

    When the order of f is not supplied it is read off beta numerically.
    """
    order = f_order if f_order is not None else elliptic_order(char.beta_f)
    return Order2Shadow(
        first=PrincipalCharacter(char.gamma, char.beta_f, -4),
        second=PrincipalCharacter(char.beta_f - char.gamma, char.beta_f, -4),
        f_order=order,
        exceptions=small_order_exceptions(order),
    )


def character_involutions(
    char: PrincipalCharacter,
) -> tuple[PrincipalCharacter, PrincipalCharacter]:
    _require_order_two(char)
    gamma, beta = char.gamma, char.beta_f
    return (
        PrincipalCharacter(gamma, gamma - beta - 4, -4),
        PrincipalCharacter(beta - gamma, -gamma - 4, -4),
    )


def classify_character(char: PrincipalCharacter) -> ElementClass:
    return classify_beta(char.beta_f)


def _beta_from_length(tau: float, theta: float) -> complex:
    return 4 * cmath.sinh(complex(tau, theta) / 2) ** 2


def geometric_to_params(geo: GeometricData) -> PrincipalCharacter:
    beta_f = _beta_from_length(geo.tau_f, geo.theta_f)
    beta_g = _beta_from_length(geo.tau_g, geo.theta_g)
    gamma = beta_f * beta_g / 4 * cmath.sinh(complex(geo.delta, geo.theta)) ** 2
    return PrincipalCharacter(gamma, beta_f, beta_g)


def params_to_geometric(beta: complex) -> complex:
    """Complex length tau + i*theta with beta = 4 sinh^2((tau + i*theta) / 2).

    Normalized to Re >= 0 and Im in (-pi, pi].
    """
    length = 2 * cmath.asinh(cmath.sqrt(complex(beta)) / 2)
    if length.real < 0 or (length.real == 0 and length.imag < 0):
        length = -length
    theta = math.remainder(length.imag, 2 * math.pi)
    if theta <= -math.pi:
        theta += 2 * math.pi
    tau = abs(length.real)
    return complex(tau, theta)
