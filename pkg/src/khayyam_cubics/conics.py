"""Conic construction: geometric-mean loci and the per-species conic triples.

The triple builder transcribes, in one global frame (x = solution abscissa,
y = companion ordinate), the pair of conics each species' construction draws
plus the third relation the continued proportion implies but the construction
never uses.  Frames (vertex, diameter endpoints, asymptotes, ...) are carried
as metadata for rendering; they are exact for Fraction parameters because
every frame quantity below is a ratio of table entries.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from .classifier import DomainError
from .core import (
    AsymptoteFrame,
    CircleFrame,
    ConicKind,
    ConicTriple,
    DiameterHyperbolaFrame,
    ImplicitConic,
    Number,
    ParabolaFrame,
    Species,
    SpeciesInstance,
    normalized_conic_residual,
)

Coefficients = Tuple[Number, Number, Number, Number, Number, Number]


class KindError(ValueError):
    """The conic is not of the kind the operation requires."""


class OffCurveError(ValueError):
    """The queried point does not lie on the conic."""


class DegenerateConicError(ValueError):
    """The quadratic part vanishes identically."""


class ConicClass(enum.Enum):
    """Coarse discriminant classes; hyperbola roles are assigned by the caller."""

    CIRCLE = "circle"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"


def conic_kind_of(coeffs: Coefficients) -> ConicClass:
    """Classify six coefficients by the discriminant q_xy^2 - 4*q_xx*q_yy."""
    q_xx, q_xy, q_yy = coeffs[0], coeffs[1], coeffs[2]
    if q_xx == 0 and q_xy == 0 and q_yy == 0:
        raise DegenerateConicError("quadratic part is identically zero")
    disc = q_xy * q_xy - 4 * q_xx * q_yy
    if disc == 0:
        return ConicClass.PARABOLA
    if disc < 0:
        return ConicClass.CIRCLE
    return ConicClass.HYPERBOLA


class LocusKind(enum.Enum):
    SEMICIRCLE_MEAN = "semicircle-mean"
    PARABOLA_MEAN = "parabola-mean"
    DIAMETER_HYPERBOLA_MEAN = "diameter-hyperbola-mean"
    ASYMPTOTIC_RECTANGLE = "asymptotic-rectangle"


@dataclass(frozen=True)
class SegmentConfig:
    """A base segment AB and the position of the foot H.

    For the semicircle locus H lies inside AB (AH = H_offset); for the
    parabola and diameter-hyperbola loci H lies beyond B (HB = H_offset).
    """

    AB: float
    H_offset: float


def locus_height(kind: LocusKind, cfg: SegmentConfig) -> float:
    """Height CH of the perpendicular at H for the three mean-relation loci.

    Semicircle: CH^2 = AH * HB with H inside AB.
    Parabola:   CH^2 = AB * HB with H beyond B.
    Hyperbola:  CH^2 = HA * HB with H beyond B, so HA = AB + HB.
    """
    if cfg.AB <= 0 or cfg.H_offset <= 0:
        raise DomainError("segment lengths must be positive")
    if kind is LocusKind.SEMICIRCLE_MEAN:
        if cfg.H_offset >= cfg.AB:
            raise DomainError("H must lie strictly inside AB")
        return math.sqrt(cfg.H_offset * (cfg.AB - cfg.H_offset))
    if kind is LocusKind.PARABOLA_MEAN:
        return math.sqrt(cfg.AB * cfg.H_offset)
    if kind is LocusKind.DIAMETER_HYPERBOLA_MEAN:
        return math.sqrt((cfg.AB + cfg.H_offset) * cfg.H_offset)
    raise DomainError("the asymptotic rectangle is not a height locus")


def _point_line_distance(line, x: float, y: float) -> float:
    a, b, c = line
    return abs(a * x + b * y + c) / math.hypot(a, b)


def asymptotic_rectangle(
    conic: ImplicitConic, x: float, y: float, tol: float = 1e-9
) -> float:
    """Product of perpendicular distances from (x, y) to the two asymptotes.

    Constant along the curve; this is the defining rectangle property of a
    hyperbola presented relative to its asymptotes.
    """
    if conic.kind is not ConicKind.ASYMPTOTIC_HYPERBOLA:
        raise KindError("asymptotic_rectangle requires an asymptotic hyperbola")
    if normalized_conic_residual(conic, x, y) > tol:
        raise OffCurveError(f"({x}, {y}) is not on the conic")
    frame: AsymptoteFrame = conic.frame
    return _point_line_distance(frame.asymptote_1, x, y) * _point_line_distance(
        frame.asymptote_2, x, y
    )


# --- triple construction -------------------------------------------------

def _parabola(coeffs: Coefficients) -> ImplicitConic:
    # Axis-aligned parabola; vertex, axis and opening parameter follow from
    # completing the square, exactly in rational arithmetic.
    q_xx, q_xy, q_yy, q_x, q_y, q_0 = coeffs
    if q_yy == 0:
        # q_xx x^2 + q_x x + q_y y + q_0 = 0, opens along y
        vx = -q_x / (2 * q_xx)
        vy = -(q_xx * vx * vx + q_x * vx + q_0) / q_y
        opens_up = (-q_xx / q_y) > 0
        frame = ParabolaFrame(vertex=(vx, vy), axis=(0, 1 if opens_up else -1))
        p = abs(q_y / q_xx)
    else:
        # q_yy y^2 + q_y y + q_x x + q_0 = 0, opens along x
        vy = -q_y / (2 * q_yy)
        vx = -(q_yy * vy * vy + q_y * vy + q_0) / q_x
        opens_right = (-q_yy / q_x) > 0
        frame = ParabolaFrame(vertex=(vx, vy), axis=(1 if opens_right else -1, 0))
        p = abs(q_x / q_yy)
    return ImplicitConic(*coeffs, kind=ConicKind.PARABOLA, frame=frame, parameter_p=p)


def _circle(coeffs: Coefficients, x1: Number, x2: Number) -> ImplicitConic:
    # Circle on the diameter with endpoints (x1, 0) and (x2, 0).
    frame = CircleFrame(center=((x1 + x2) / 2, 0), radius=abs(x2 - x1) / 2)
    return ImplicitConic(*coeffs, kind=ConicKind.CIRCLE, frame=frame)


def _diameter_hyperbola(coeffs: Coefficients, v1: Number, v2: Number) -> ImplicitConic:
    frame = DiameterHyperbolaFrame(vertex_1=(v1, 0), vertex_2=(v2, 0))
    return ImplicitConic(*coeffs, kind=ConicKind.DIAMETER_HYPERBOLA, frame=frame)


def _asymptotic(coeffs: Coefficients, y_offset: Number) -> ImplicitConic:
    # Asymptotes are the y-axis and the horizontal line y = y_offset.
    frame = AsymptoteFrame(
        center=(0, y_offset),
        asymptote_1=(1, 0, 0),
        asymptote_2=(0, 1, -y_offset),
    )
    return ImplicitConic(*coeffs, kind=ConicKind.ASYMPTOTIC_HYPERBOLA, frame=frame)


# Each entry builds (working_1, working_2, hidden) from raw parameter values.
# The coefficient rows transcribe the species table verbatim; comments give
# the source relations.
_TripleBuilder = Callable[..., Tuple[ImplicitConic, ImplicitConic, ImplicitConic]]

_TABLE: Dict[Species, _TripleBuilder] = {
    # x^3 + b^2 x = b^2 l:  x^2 = b y,  y^2 = x (l - x),  x (y + b) = b l
    Species.S1: lambda a, b, c, l: (
        _parabola((1, 0, 0, 0, -b, 0)),
        _circle((1, 0, 1, -l, 0, 0), 0, l),
        _asymptotic((0, 1, 0, b, 0, -b * l), -b),
    ),
    # x^3 + b^2 l = b^2 x:  x^2 = b y,  y^2 = x (x - l),  x (b - y) = b l
    Species.S2: lambda a, b, c, l: (
        _parabola((1, 0, 0, 0, -b, 0)),
        _diameter_hyperbola((-1, 0, 1, l, 0, 0), 0, l),
        _asymptotic((0, -1, 0, b, 0, -b * l), b),
    ),
    # x^3 = b^2 x + b^2 l:  x^2 = b y,  y^2 = x (l + x),  x (y - b) = b l
    Species.S3: lambda a, b, c, l: (
        _parabola((1, 0, 0, 0, -b, 0)),
        _diameter_hyperbola((-1, 0, 1, -l, 0, 0), 0, -l),
        _asymptotic((0, 1, 0, -b, 0, -b * l), b),
    ),
    # x^3 + a x^2 = c^3:  x y = c^2,  y^2 = c (x + a),  x (x + a) = c y
    Species.S4: lambda a, b, c, l: (
        _asymptotic((0, 1, 0, 0, 0, -c * c), 0),
        _parabola((0, 0, 1, -c, 0, -c * a)),
        _parabola((1, 0, 0, a, -c, 0)),
    ),
    # x^3 + c^3 = a x^2:  x y = c^2,  y^2 = c (a - x),  c y = x (a - x)
    Species.S5: lambda a, b, c, l: (
        _asymptotic((0, 1, 0, 0, 0, -c * c), 0),
        _parabola((0, 0, 1, c, 0, -c * a)),
        _parabola((-1, 0, 0, a, -c, 0)),
    ),
    # x^3 = a x^2 + c^3:  x y = c^2,  y^2 = c (x - a),  c y = x (x - a)
    Species.S6: lambda a, b, c, l: (
        _asymptotic((0, 1, 0, 0, 0, -c * c), 0),
        _parabola((0, 0, 1, -c, 0, c * a)),
        _parabola((1, 0, 0, -a, -c, 0)),
    ),
    # x^3 + a x^2 + b^2 x = b^2 l:
    #   y^2 = (l - x)(x + a),  x (y + b) = b l,  b y = x (x + a)
    Species.S7: lambda a, b, c, l: (
        _circle((1, 0, 1, a - l, 0, -a * l), -a, l),
        _asymptotic((0, 1, 0, b, 0, -b * l), -b),
        _parabola((1, 0, 0, a, -b, 0)),
    ),
    # x^3 + a x^2 + b^2 l = b^2 x:
    #   y^2 = (x - l)(x + a),  x (b - y) = b l,  b y = x (x + a)
    Species.S8: lambda a, b, c, l: (
        _diameter_hyperbola((-1, 0, 1, l - a, 0, a * l), l, -a),
        _asymptotic((0, -1, 0, b, 0, -b * l), b),
        _parabola((1, 0, 0, a, -b, 0)),
    ),
    # x^3 + b^2 x + b^2 l = a x^2:
    #   y^2 = (x + l)(a - x),  x (y - b) = b l,  b y = x (a - x)
    Species.S9: lambda a, b, c, l: (
        _circle((1, 0, 1, l - a, 0, -a * l), -l, a),
        _asymptotic((0, 1, 0, -b, 0, -b * l), b),
        _parabola((-1, 0, 0, a, -b, 0)),
    ),
    # x^3 = a x^2 + b^2 x + b^2 l:
    #   y^2 = (x + l)(x - a),  x (y - b) = b l,  b y = x (x - a)
    Species.S10: lambda a, b, c, l: (
        _diameter_hyperbola((-1, 0, 1, a - l, 0, a * l), -l, a),
        _asymptotic((0, 1, 0, -b, 0, -b * l), b),
        _parabola((1, 0, 0, -a, -b, 0)),
    ),
    # x^3 + a x^2 = b^2 x + b^2 l:
    #   y^2 = (x + l)(x + a),  x (y - b) = b l,  b y = x (x + a)
    Species.S11: lambda a, b, c, l: (
        _diameter_hyperbola((-1, 0, 1, -(l + a), 0, -a * l), -l, -a),
        _asymptotic((0, 1, 0, -b, 0, -b * l), b),
        _parabola((1, 0, 0, a, -b, 0)),
    ),
    # x^3 + b^2 x = a x^2 + b^2 l:
    #   y^2 = (l - x)(x - a),  x (y + b) = b l,  b y = x (x - a)
    Species.S12: lambda a, b, c, l: (
        _circle((1, 0, 1, -(l + a), 0, a * l), a, l),
        _asymptotic((0, 1, 0, b, 0, -b * l), -b),
        _parabola((1, 0, 0, -a, -b, 0)),
    ),
    # x^3 + b^2 l = a x^2 + b^2 x:
    #   y^2 = (x - l)(x - a),  x (b - y) = b l,  b y = x (x - a)
    Species.S13: lambda a, b, c, l: (
        _diameter_hyperbola((-1, 0, 1, l + a, 0, -a * l), l, a),
        _asymptotic((0, -1, 0, b, 0, -b * l), b),
        _parabola((1, 0, 0, -a, -b, 0)),
    ),
}


def raw_triple(
    species: Species,
    a: Optional[Number] = None,
    b: Optional[Number] = None,
    c: Optional[Number] = None,
    l: Optional[Number] = None,
) -> Tuple[ImplicitConic, ImplicitConic, ImplicitConic]:
    """Build the three conics from raw parameter values, without positivity checks.

    The sign-flip machinery needs this: it substitutes negated parameters into
    the same table.
    """
    return _TABLE[species](a, b, c, l)


def build_triple(s: SpeciesInstance) -> ConicTriple:
    """The species' working pair plus hidden conic, with frame metadata."""
    w1, w2, hidden = raw_triple(s.id, a=s.a, b=s.b, c=s.c, l=s.l)
    return ConicTriple(working_1=w1, working_2=w2, hidden=hidden, species=s)


# Display strings in the classical notation, used by the CLI and the service.
SPECIES_EQUATION_TEXT: Dict[Species, str] = {
    Species.S1: "x³+b²x=b²l",
    Species.S2: "x³+b²l=b²x",
    Species.S3: "x³=b²x+b²l",
    Species.S4: "x³+ax²=c³",
    Species.S5: "x³+c³=ax²",
    Species.S6: "x³=ax²+c³",
    Species.S7: "x³+ax²+b²x=b²l",
    Species.S8: "x³+ax²+b²l=b²x",
    Species.S9: "x³+b²x+b²l=ax²",
    Species.S10: "x³=ax²+b²x+b²l",
    Species.S11: "x³+ax²=b²x+b²l",
    Species.S12: "x³+b²x=ax²+b²l",
    Species.S13: "x³+b²l=ax²+b²x",
}

SPECIES_RELATION_TEXT: Dict[Species, Tuple[str, str, str]] = {
    Species.S1: ("x²=by", "y²=x(l-x)", "x(y+b)=bl"),
    Species.S2: ("x²=by", "y²=x(x-l)", "x(b-y)=bl"),
    Species.S3: ("x²=by", "y²=x(l+x)", "x(y-b)=bl"),
    Species.S4: ("xy=c²", "y²=c(x+a)", "x(x+a)=cy"),
    Species.S5: ("xy=c²", "y²=c(a-x)", "cy=x(a-x)"),
    Species.S6: ("xy=c²", "y²=c(x-a)", "cy=x(x-a)"),
    Species.S7: ("y²=(l-x)(x+a)", "x(y+b)=bl", "by=x(x+a)"),
    Species.S8: ("y²=(x-l)(x+a)", "x(b-y)=bl", "by=x(x+a)"),
    Species.S9: ("y²=(x+l)(a-x)", "x(y-b)=bl", "by=x(a-x)"),
    Species.S10: ("y²=(x+l)(x-a)", "x(y-b)=bl", "by=x(x-a)"),
    Species.S11: ("y²=(x+l)(x+a)", "x(y-b)=bl", "by=x(x+a)"),
    Species.S12: ("y²=(l-x)(x-a)", "x(y+b)=bl", "by=x(x-a)"),
    Species.S13: ("y²=(x-l)(x-a)", "x(b-y)=bl", "by=x(x-a)"),
}


def companion_ordinate(conic: ImplicitConic, x: Number) -> Number:
    """Solve the conic for y at abscissa x; the conic must be linear in y there.

    Every hidden conic in the table is linear in y, so this recovers the
    companion segment at a solution abscissa.
    """
    if conic.q_yy != 0:
        raise KindError("conic is quadratic in y; no single ordinate")
    denom = conic.q_xy * x + conic.q_y
    if denom == 0:
        raise DomainError(f"conic has no finite ordinate at x = {x}")
    return -(conic.q_xx * x * x + conic.q_x * x + conic.q_0) / denom
