"""Unimodular 2x2 complex matrices acting as Mobius transformations.

Only beta = tr^2 - 4 and gamma = tr[f, g] - 2 leave this module as canonical
quantities: both are invariant under the PSL sign flip M -> -M, raw traces are not.
"""

from __future__ import annotations

from collections.abc import Sequence
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from packages.kleinian.errors import NonFiniteValue, NonUnimodular, SingularMatrix

TOL_CLASS = 1e-9
TOL_DET = 1e-10
TOL_UNIMODULAR = 1e-9
TOL_SINGULAR = 1e-14


class ElementClass(str, Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


def ensure_finite(value: complex, label: str = "value") -> complex:
    z = complex(value)
    if not np.isfinite(z):
        raise NonFiniteValue(f"{label} is not finite: {z!r}")
    return z


def _frozen(values: ArrayLike) -> NDArray[np.complex128]:
    array = np.array(values, dtype=np.complex128)
    if array.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {array.shape}")
    if not np.isfinite(array).all():
        raise NonFiniteValue(f"matrix entries are not finite: {array.tolist()!r}")
    array.flags.writeable = False
    return array


class Matrix2:
    """Read-only 2x2 complex matrix; entries are exposed as a, b, c, d."""

    __slots__ = ("array",)

    array: NDArray[np.complex128]

    def __init__(self, a: complex, b: complex, c: complex, d: complex) -> None:
        self.array = _frozen([[a, b], [c, d]])

    @classmethod
    def from_array(cls, values: ArrayLike) -> Matrix2:
        matrix = cls.__new__(cls)
        matrix.array = _frozen(values)
        return matrix

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> Matrix2:
        return cls.from_array(rows)

    def as_rows(self) -> list[list[complex]]:
        return [[complex(x) for x in row] for row in self.array]

    @property
    def a(self) -> complex:
        return complex(self.array[0, 0])

    @property
    def b(self) -> complex:
        return complex(self.array[0, 1])

    @property
    def c(self) -> complex:
        return complex(self.array[1, 0])

    @property
    def d(self) -> complex:
        return complex(self.array[1, 1])

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.array))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.array))

    def __neg__(self) -> Matrix2:
        return Matrix2.from_array(-self.array)

    def __matmul__(self, other: Matrix2) -> Matrix2:
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix2):
            return NotImplemented
        return bool(np.array_equal(self.array, other.array))

    def __hash__(self) -> int:
        return hash(self.array.tobytes())

    def __repr__(self) -> str:
        return f"Matrix2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


IDENTITY = Matrix2(1, 0, 0, 1)


def mat_mul(x: Matrix2, y: Matrix2) -> Matrix2:
    return Matrix2.from_array(x.array @ y.array)


def mat_inverse(x: Matrix2) -> Matrix2:
    det = x.det
    if abs(det - 1) > TOL_UNIMODULAR:
        raise NonUnimodular(f"determinant {det!r} differs from 1")
    m = x.array
    return Matrix2.from_array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def commutator(f: Matrix2, g: Matrix2) -> Matrix2:
    return Matrix2.from_array(
        f.array @ g.array @ mat_inverse(f).array @ mat_inverse(g).array
    )


def mat_power(x: Matrix2, n: int) -> Matrix2:
    # matrix_power squares and multiplies, so beta = 0 needs no special case
    if n < 0:
        raise ValueError("mat_power expects a nonnegative exponent")
    return Matrix2.from_array(np.linalg.matrix_power(x.array, n))


def normalize_det(x: Matrix2) -> Matrix2:
    det = x.det
    if abs(det) < TOL_SINGULAR:
        raise SingularMatrix(f"determinant {det!r} is numerically zero")
    normalized = Matrix2.from_array(x.array / np.sqrt(det))
    if abs(normalized.det - 1) > TOL_DET:
        raise NonUnimodular(f"determinant {normalized.det!r} still differs from 1")
    return normalized


def beta_of(x: Matrix2) -> complex:
    trace = x.trace
    return trace * trace - 4


def gamma_of(f: Matrix2, g: Matrix2) -> complex:
    return commutator(f, g).trace - 2


def is_identity(x: Matrix2, tol: float = TOL_CLASS) -> bool:
    """True when x equals +I or -I entrywise within tol."""
    eye = np.eye(2)
    return any(bool(np.all(np.abs(x.array - sign * eye) <= tol)) for sign in (1, -1))


def classify_beta(beta: complex, tol: float = TOL_CLASS) -> ElementClass:
    if abs(beta) <= tol:
        return ElementClass.PARABOLIC
    if abs(beta.imag) <= tol and -4 - tol <= beta.real < 0:
        return ElementClass.ELLIPTIC
    return ElementClass.LOXODROMIC


def classify(x: Matrix2) -> ElementClass:
    if is_identity(x):
        return ElementClass.IDENTITY
    return classify_beta(beta_of(x))
