"""Map a signed monic cubic onto one of the thirteen species and back.

The classification is purely by the signs of (A, B, C): each of the thirteen
species owns one sign pattern, the all-positive patterns admit no positive
root, ``x^3 = c^3`` falls outside the thirteen constructions, and a vanishing
constant term drops the problem below a genuine cubic case.  Zero detection is
exact on purpose: snapping a coefficient like 1e-15 to zero would silently
move the equation into a different species and change the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Tuple

from .core import CubicEquation, Number, Species, SpeciesInstance


class ClassificationError(ValueError):
    """Base for every 'this cubic has no species' outcome."""


class ExcludedAllPositiveError(ClassificationError):
    """All terms sit on one side: a positive magnitude equated to zero."""


class PureCubeError(ClassificationError):
    """x^3 = c^3 is solved by mean proportionals, not by the thirteen conics."""


class DegenerateError(ClassificationError):
    """The equation reduces below a genuine three-term cubic case."""


class DomainError(ValueError):
    """A construction parameter violated its positivity constraint."""


@dataclass(frozen=True)
class SignPattern:
    """Signs of (A, B, C), each in {-1, 0, +1}, derived exactly."""

    sA: int
    sB: int
    sC: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.sA, self.sB, self.sC)


def _sign(v: Number) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def sign_pattern(eq: CubicEquation) -> SignPattern:
    return SignPattern(_sign(eq.A), _sign(eq.B), _sign(eq.C))


# (sA, sB, sC) -> species.  Everything not listed here is an error pattern.
PATTERN_TO_SPECIES: Dict[Tuple[int, int, int], Species] = {
    (0, 1, -1): Species.S1,
    (0, -1, 1): Species.S2,
    (0, -1, -1): Species.S3,
    (1, 0, -1): Species.S4,
    (-1, 0, 1): Species.S5,
    (-1, 0, -1): Species.S6,
    (1, 1, -1): Species.S7,
    (1, -1, 1): Species.S8,
    (-1, 1, 1): Species.S9,
    (-1, -1, -1): Species.S10,
    (1, -1, -1): Species.S11,
    (-1, 1, -1): Species.S12,
    (-1, -1, 1): Species.S13,
}

_EXCLUDED_PATTERNS = {(0, 1, 1), (1, 0, 1), (1, 1, 1), (0, 0, 1)}


def homogenize(b: Number, c: Number) -> Number:
    """Rewrite the constant cube c^3 on the square base b^2: returns l with b^2*l = c^3.

    Exact for Fraction inputs, within 2 ulps for floats.
    """
    if b <= 0 or c <= 0:
        raise DomainError("homogenize requires b > 0 and c > 0")
    return c * c * c / (b * b)


def _cbrt(v: float) -> float:
    # Positive cube root, polished to full double precision.
    r = v ** (1.0 / 3.0)
    for _ in range(2):
        r -= (r * r * r - v) / (3.0 * r * r)
    return r


def classify(eq: CubicEquation) -> SpeciesInstance:
    """Return the unique species whose sign pattern matches, with its parameters.

    Parameters are recovered as a = |A|, b = sqrt(|B|), c = |C|^(1/3) for the
    B-free species, and l = |C| / |B| whenever B is nonzero.
    """
    pat = sign_pattern(eq).as_tuple()
    sA, sB, sC = pat

    if sC == 0:
        if sA == 0 and sB == 0:
            raise DegenerateError("A = B = C = 0: the equation is x^3 = 0")
        if sB == 0:
            raise DegenerateError("B = C = 0: the equation factors as x^2 (x + A)")
        raise DegenerateError("C = 0: the equation factors as x (x^2 + A x + B)")
    if pat == (0, 0, -1):
        raise PureCubeError(
            "x^3 = c^3 is outside the thirteen species (two mean proportionals)"
        )
    if pat in _EXCLUDED_PATTERNS:
        raise ExcludedAllPositiveError(
            "every term is positive on one side; no positive root exists"
        )

    species = PATTERN_TO_SPECIES[pat]
    A, B, C = (float(eq.A), float(eq.B), float(eq.C))
    if species in (Species.S4, Species.S5, Species.S6):
        return SpeciesInstance(species, a=abs(A), c=_cbrt(abs(C)))
    b = math.sqrt(abs(B))
    l = abs(C) / abs(B)
    if species in (Species.S1, Species.S2, Species.S3):
        return SpeciesInstance(species, b=b, l=l)
    return SpeciesInstance(species, a=abs(A), b=b, l=l)


def signed_cubic(s: SpeciesInstance) -> CubicEquation:
    """Rebuild the monic cubic (A, B, C) carrying the species' sign pattern.

    Exact when the instance holds Fraction parameters.
    """
    for key, species in PATTERN_TO_SPECIES.items():
        if species == s.id:
            sA, sB, sC = key
            break
    if s.id in (Species.S4, Species.S5, Species.S6):
        a, c = s.a, s.c
        return CubicEquation(A=sA * a, B=0, C=sC * c * c * c)
    b, l = s.b, s.l
    A = sA * (s.a if s.a is not None else 0)
    return CubicEquation(A=A, B=sB * b * b, C=sC * b * b * l)
