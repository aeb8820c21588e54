"""Value types shared by every other module.

All types here are immutable and hold plain numbers.  The numeric path uses
doubles; for exact identity checks the same types also accept
``fractions.Fraction`` coefficients, since nothing below ever calls a
float-only operation on them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

Number = Union[int, float, Fraction]
Point = Tuple[Number, Number]
# A line a*x + b*y + c = 0, stored as (a, b, c).
Line = Tuple[Number, Number, Number]


class Species(enum.Enum):
    """The thirteen classical sign-arrangements of a real cubic."""

    S1 = 1
    S2 = 2
    S3 = 3
    S4 = 4
    S5 = 5
    S6 = 6
    S7 = 7
    S8 = 8
    S9 = 9
    S10 = 10
    S11 = 11
    S12 = 12
    S13 = 13


# Parameter names each species carries.  S1-S3 come from equations in b and l,
# S4-S6 from equations in a and c, S7-S13 from equations in a, b and l.
SPECIES_PARAMS = {
    Species.S1: ("b", "l"),
    Species.S2: ("b", "l"),
    Species.S3: ("b", "l"),
    Species.S4: ("a", "c"),
    Species.S5: ("a", "c"),
    Species.S6: ("a", "c"),
    Species.S7: ("a", "b", "l"),
    Species.S8: ("a", "b", "l"),
    Species.S9: ("a", "b", "l"),
    Species.S10: ("a", "b", "l"),
    Species.S11: ("a", "b", "l"),
    Species.S12: ("a", "b", "l"),
    Species.S13: ("a", "b", "l"),
}


class ConicKind(enum.Enum):
    CIRCLE = "circle"
    PARABOLA = "parabola"
    DIAMETER_HYPERBOLA = "diameter-hyperbola"
    ASYMPTOTIC_HYPERBOLA = "asymptotic-hyperbola"

    @property
    def is_hyperbola(self) -> bool:
        return self in (ConicKind.DIAMETER_HYPERBOLA, ConicKind.ASYMPTOTIC_HYPERBOLA)


def _is_finite_number(v: Number) -> bool:
    if isinstance(v, float):
        return math.isfinite(v)
    return isinstance(v, (int, Fraction))


@dataclass(frozen=True)
class CubicEquation:
    """Monic real cubic x^3 + A*x^2 + B*x + C = 0.

    The leading coefficient is structurally one; only A, B, C are stored.
    """

    A: Number
    B: Number
    C: Number

    def __post_init__(self) -> None:
        for name in ("A", "B", "C"):
            if not _is_finite_number(getattr(self, name)):
                raise ValueError(f"coefficient {name} must be a finite real")

    def coefficients(self) -> Tuple[Number, Number, Number]:
        return (self.A, self.B, self.C)


@dataclass(frozen=True)
class SpeciesInstance:
    """A species identifier plus its positive parameters.

    Only the parameters the species carries may be present, and every present
    parameter must be strictly positive (a vanishing magnitude would move the
    equation into a different species).
    """

    id: Species
    a: Optional[Number] = None
    b: Optional[Number] = None
    c: Optional[Number] = None
    l: Optional[Number] = None

    def __post_init__(self) -> None:
        wanted = SPECIES_PARAMS[self.id]
        for name in ("a", "b", "c", "l"):
            value = getattr(self, name)
            if name in wanted:
                if value is None:
                    raise ValueError(f"{self.id.name} requires parameter {name}")
                if not _is_finite_number(value) or value <= 0:
                    raise ValueError(f"{self.id.name}: parameter {name} must be > 0")
            elif value is not None:
                raise ValueError(f"{self.id.name} does not carry parameter {name}")

    def params(self) -> dict:
        return {
            name: getattr(self, name)
            for name in SPECIES_PARAMS[self.id]
        }


@dataclass(frozen=True)
class CircleFrame:
    """Circle through the two diameter endpoints on the x-axis."""

    center: Point
    radius: Number


@dataclass(frozen=True)
class ParabolaFrame:
    """Vertex and the unit direction the parabola opens toward."""

    vertex: Point
    axis: Point


@dataclass(frozen=True)
class DiameterHyperbolaFrame:
    """The two vertices bounding the diameter chord."""

    vertex_1: Point
    vertex_2: Point


@dataclass(frozen=True)
class AsymptoteFrame:
    """Center and the two asymptote lines of an asymptotic hyperbola."""

    center: Point
    asymptote_1: Line
    asymptote_2: Line


Frame = Union[CircleFrame, ParabolaFrame, DiameterHyperbolaFrame, AsymptoteFrame]


@dataclass(frozen=True)
class ImplicitConic:
    """Bivariate quadratic q_xx*x^2 + q_xy*x*y + q_yy*y^2 + q_x*x + q_y*y + q_0 = 0.

    ``kind`` is consistent with the discriminant q_xy^2 - 4*q_xx*q_yy (zero for
    a parabola, negative for a circle, positive for either hyperbola kind; the
    two hyperbola kinds are distinguished by their construction role, not by
    coefficients).  ``frame`` carries the local construction data used for
    rendering; ``parameter_p`` is the opening parameter of a parabola.
    """

    q_xx: Number
    q_xy: Number
    q_yy: Number
    q_x: Number
    q_y: Number
    q_0: Number
    kind: ConicKind
    frame: Optional[Frame] = None
    parameter_p: Optional[Number] = None

    def __post_init__(self) -> None:
        if self.q_xx == 0 and self.q_xy == 0 and self.q_yy == 0:
            raise ValueError("quadratic part vanishes; not a conic")
        if self.parameter_p is not None and self.parameter_p <= 0:
            raise ValueError("parameter_p must be positive")

    def coefficients(self) -> Tuple[Number, ...]:
        return (self.q_xx, self.q_xy, self.q_yy, self.q_x, self.q_y, self.q_0)

    def discriminant(self) -> Number:
        return self.q_xy * self.q_xy - 4 * self.q_xx * self.q_yy


@dataclass(frozen=True)
class ConicTriple:
    """The two conics a species' construction uses plus the unused third one.

    All three pass through every admissible solution point; the construction
    displays only the working pair.
    """

    working_1: ImplicitConic
    working_2: ImplicitConic
    hidden: ImplicitConic
    species: SpeciesInstance

    def conics(self) -> Tuple[ImplicitConic, ImplicitConic, ImplicitConic]:
        return (self.working_1, self.working_2, self.hidden)


@dataclass(frozen=True)
class IntersectionPoint:
    """A common point of the working pair with per-conic normalized residuals."""

    x: float
    y: float
    residual_1: float
    residual_2: float


@dataclass(frozen=True)
class Root:
    """A real root with explicit multiplicity (2 at a tangency)."""

    x: float
    multiplicity: int


@dataclass(frozen=True)
class SolveReport:
    """Everything a solve produced, including the independent oracle check."""

    cubic: CubicEquation
    species: SpeciesInstance
    triple: ConicTriple
    intersections: Tuple[IntersectionPoint, ...]
    roots: Tuple[Root, ...]
    cubic_residuals: Tuple[float, ...]
    hidden_residuals: Tuple[float, ...]
    oracle_roots: Tuple[Root, ...]
    agreement: bool


def evaluate_cubic(eq: CubicEquation, x: Number) -> Number:
    """Evaluate x^3 + A*x^2 + B*x + C in fixed Horner order."""
    return ((x + eq.A) * x + eq.B) * x + eq.C


def evaluate_conic(conic: ImplicitConic, x: Number, y: Number) -> Number:
    """Evaluate the quadratic form at (x, y) in a fixed term order."""
    return (
        conic.q_xx * x * x
        + conic.q_xy * x * y
        + conic.q_yy * y * y
        + conic.q_x * x
        + conic.q_y * y
        + conic.q_0
    )


def conic_scale(conic: ImplicitConic) -> float:
    """Largest absolute coefficient, the normalizer for residual comparisons."""
    return float(max(abs(c) for c in conic.coefficients()))


def normalized_conic_residual(conic: ImplicitConic, x: Number, y: Number) -> float:
    """|q(x, y)| divided by the largest absolute coefficient (scale-free)."""
    return abs(float(evaluate_conic(conic, x, y))) / conic_scale(conic)
