"""Exceptions raised by the kleinian library.

Everything derives from :class:`KleinianError` so callers (CLI, HTTP API) can map
the whole family onto exit codes or status codes in one place.
"""

from __future__ import annotations


class KleinianError(ValueError):
    pass


class NonFiniteValue(KleinianError):
    pass


class NonUnimodular(KleinianError):
    pass


class SingularMatrix(KleinianError):
    pass


class DegreeCap(KleinianError):
    pass


class NotOrderTwo(KleinianError):
    pass


class InapplicableFamily(KleinianError):
    pass


class EllipticCollapse(KleinianError):
    pass


class DegenerateCharacter(KleinianError):
    pass


class ParabolicFG(KleinianError):
    pass


class NotParabolicFG(KleinianError):
    pass


class ComplexLiteralError(KleinianError):
    pass


class InvalidScanSpec(KleinianError):
    pass
