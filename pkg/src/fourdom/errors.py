"""Exception types shared across the package."""

from __future__ import annotations


class FourdomError(Exception):
    """Base class for all package errors."""


class NotSymmetric(FourdomError):
    """Gram matrix is not symmetric."""


class NotUnimodular(FourdomError):
    """Gram matrix determinant is not +1 or -1."""


class Degenerate(FourdomError):
    """Bilinear form over GF(2) is singular."""


class NotHermitian(FourdomError):
    """Matrix is not fixed by conjugate transposition."""


class NotUnimodularAfterAugmentation(FourdomError):
    """Setting t = 1 produced a non-unimodular integer matrix."""


class RankMismatch(FourdomError):
    """Matrix dimensions do not agree."""


class RankTooLarge(FourdomError):
    """Input exceeds the exhaustive-search rank cap."""


class InvalidDescriptor(FourdomError):
    """Manifold descriptor violates a consistency rule."""

    def __init__(self, violations: list[str]):
        super().__init__("invalid descriptor: " + ", ".join(violations))
        self.violations = violations


class UnsupportedPi1Combination(FourdomError):
    """Connected sum of two descriptors with non-trivial fundamental group."""


class Pi1Mismatch(FourdomError):
    """Operation requires both descriptors to share the fundamental group."""


class BoundTooLarge(FourdomError):
    """Enumeration bound exceeds the definite-classification cap."""


class Z2ExtrapolationRequired(FourdomError):
    """Explicit GF(2) form for even order > 2 needs the extrapolation flag."""


class ParseError(FourdomError):
    """Malformed JSON or unknown built-in name."""
