"""Solve real cubics the eleventh-century way, with a modern verification net.

A cubic is classified into one of the thirteen classical species, the species'
pair of conics (plus the implied-but-unused third conic) is constructed, the
conics are intersected by resultant elimination, and the admissible positive
roots are read off and cross-checked against a closed-form algebraic oracle.
Diagrams come out as deterministic SVG.
"""

from .classifier import (
    ClassificationError,
    DegenerateError,
    DomainError,
    ExcludedAllPositiveError,
    PureCubeError,
    SignPattern,
    classify,
    homogenize,
    sign_pattern,
    signed_cubic,
)
from .conics import (
    ConicClass,
    LocusKind,
    SegmentConfig,
    asymptotic_rectangle,
    build_triple,
    companion_ordinate,
    conic_kind_of,
    locus_height,
)
from .core import (
    ConicKind,
    ConicTriple,
    CubicEquation,
    ImplicitConic,
    IntersectionPoint,
    Root,
    SolveReport,
    Species,
    SpeciesInstance,
    evaluate_conic,
    evaluate_cubic,
)
from .parser import (
    DegreeError,
    EquationSyntaxError,
    LeadingSignError,
    format_equation,
    parse_equation,
)
from .render import RenderOptions, render_svg
from .solver import (
    UniPoly,
    eliminate_y,
    intersect,
    oracle_cubic_roots,
    real_roots,
    solve_khayyam,
)
from .taxonomy import Family, SignFlip, apply_flip, family_of, find_collapse

__all__ = [
    "ClassificationError",
    "ConicClass",
    "ConicKind",
    "ConicTriple",
    "CubicEquation",
    "DegenerateError",
    "DegreeError",
    "DomainError",
    "EquationSyntaxError",
    "ExcludedAllPositiveError",
    "Family",
    "ImplicitConic",
    "IntersectionPoint",
    "LeadingSignError",
    "LocusKind",
    "PureCubeError",
    "RenderOptions",
    "Root",
    "SegmentConfig",
    "SignFlip",
    "SignPattern",
    "SolveReport",
    "Species",
    "SpeciesInstance",
    "UniPoly",
    "apply_flip",
    "asymptotic_rectangle",
    "build_triple",
    "classify",
    "companion_ordinate",
    "conic_kind_of",
    "eliminate_y",
    "evaluate_conic",
    "evaluate_cubic",
    "family_of",
    "find_collapse",
    "format_equation",
    "homogenize",
    "intersect",
    "locus_height",
    "oracle_cubic_roots",
    "parse_equation",
    "real_roots",
    "render_svg",
    "sign_pattern",
    "signed_cubic",
    "solve_khayyam",
]

__version__ = "0.1.0"
