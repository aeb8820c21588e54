"""The five conic families and the sign-flip collapses inside each family.

Grouping the thirteen species by the conic kinds their constructions draw
yields five families.  Within a family, negating parameters (and possibly
mirroring an axis) maps one member's conic triple onto another's; the search
here finds such a flip by exact rational comparison of normalized
coefficients.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .conics import raw_triple
from .core import ConicKind, ConicTriple, Species, SPECIES_PARAMS

Coeffs = Tuple


class Family(enum.Enum):
    I = "circle + parabola"
    II = "parabola + diameter-hyperbola"
    III = "parabola + asymptotic-hyperbola"
    IV = "circle + asymptotic-hyperbola"
    V = "diameter-hyperbola + asymptotic-hyperbola"


class FamilyMismatchError(ValueError):
    """Collapse search across different families is undefined."""


FAMILY_MEMBERS: Dict[Family, Tuple[Species, ...]] = {
    Family.I: (Species.S1,),
    Family.II: (Species.S2, Species.S3),
    Family.III: (Species.S4, Species.S5, Species.S6),
    Family.IV: (Species.S7, Species.S9, Species.S12),
    Family.V: (Species.S8, Species.S10, Species.S11, Species.S13),
}

FAMILY_REPRESENTATIVE: Dict[Family, Species] = {
    Family.I: Species.S1,
    Family.II: Species.S3,
    Family.III: Species.S4,
    Family.IV: Species.S7,
    Family.V: Species.S11,
}

# Kinds of the working pair shared by every member of the family.
FAMILY_KINDS: Dict[Family, Tuple[ConicKind, ConicKind]] = {
    Family.I: (ConicKind.CIRCLE, ConicKind.PARABOLA),
    Family.II: (ConicKind.PARABOLA, ConicKind.DIAMETER_HYPERBOLA),
    Family.III: (ConicKind.PARABOLA, ConicKind.ASYMPTOTIC_HYPERBOLA),
    Family.IV: (ConicKind.CIRCLE, ConicKind.ASYMPTOTIC_HYPERBOLA),
    Family.V: (ConicKind.DIAMETER_HYPERBOLA, ConicKind.ASYMPTOTIC_HYPERBOLA),
}

_SPECIES_TO_FAMILY = {
    species: family
    for family, members in FAMILY_MEMBERS.items()
    for species in members
}


def family_of(species: Species) -> Family:
    return _SPECIES_TO_FAMILY[species]


@dataclass(frozen=True)
class SignFlip:
    """Parameter sign changes plus optional axis mirrors."""

    flips: Mapping[str, int] = field(default_factory=dict)
    mirror_x: bool = False
    mirror_y: bool = False

    def is_identity(self) -> bool:
        return not self.mirror_x and not self.mirror_y and all(
            v == 1 for v in self.flips.values()
        )

    def describe(self) -> str:
        parts = [f"{k}->-{k}" for k, v in sorted(self.flips.items()) if v == -1]
        if self.mirror_x:
            parts.append("mirror x")
        if self.mirror_y:
            parts.append("mirror y")
        return ", ".join(parts) if parts else "identity"


def _mirror_coeffs(coeffs: Coeffs, mirror_x: bool, mirror_y: bool) -> Coeffs:
    q_xx, q_xy, q_yy, q_x, q_y, q_0 = coeffs
    if mirror_x:
        q_xy, q_x = -q_xy, -q_x
    if mirror_y:
        q_xy, q_y = -q_xy, -q_y
    return (q_xx, q_xy, q_yy, q_x, q_y, q_0)


def _normalize(coeffs: Coeffs) -> Coeffs:
    exact = all(isinstance(v, (int, Fraction)) for v in coeffs)
    for c in coeffs:
        if c != 0:
            if exact:
                c = Fraction(c)
                return tuple(Fraction(v) / c for v in coeffs)
            return tuple(v / c for v in coeffs)
    raise ValueError("zero conic")


def apply_flip(triple: ConicTriple, flip: SignFlip) -> Tuple[Coeffs, Coeffs, Coeffs]:
    """Re-evaluate the species' symbolic triple at sign-flipped parameters.

    Mirrors act on (x, y) after the substitution.  Returns the three conics'
    normalized coefficient tuples; frames are not rebuilt because flipped
    parameters need not satisfy the positivity constraints.
    """
    params = dict(triple.species.params())
    for name, sign in flip.flips.items():
        if name in params:
            params[name] = params[name] * sign
    conics = raw_triple(triple.species.id, **params)
    return tuple(
        _normalize(_mirror_coeffs(c.coefficients(), flip.mirror_x, flip.mirror_y))
        for c in conics
    )


def _flip_candidates(param_names: Tuple[str, ...]) -> List[SignFlip]:
    """All sign assignments and mirrors in a fixed order.

    Mirror-free candidates come first (identity before everything), so a pure
    parameter flip is always preferred over an equivalent axis reflection.
    """
    assignments = []
    for signs in itertools.product((1, -1), repeat=len(param_names)):
        assignments.append(dict(zip(param_names, signs)))
    assignments.sort(key=lambda m: (sum(1 for v in m.values() if v == -1),
                                    tuple(sorted(k for k, v in m.items() if v == -1))))
    mirrors = [(False, False), (True, False), (False, True), (True, True)]
    return [
        SignFlip(flips=assign, mirror_x=mx, mirror_y=my)
        for mx, my in mirrors
        for assign in assignments
    ]


def _generic_instance(species: Species) -> "ConicTriple":
    # Distinct primes keep accidental coincidences out of the comparison.
    from .core import SpeciesInstance

    values = {"a": Fraction(2), "b": Fraction(3), "c": Fraction(5), "l": Fraction(7)}
    params = {name: values[name] for name in SPECIES_PARAMS[species]}
    from .conics import build_triple

    return build_triple(SpeciesInstance(species, **params))


def find_collapse(src: Species, dst: Species) -> Optional[SignFlip]:
    """First sign flip (fixed enumeration order) mapping src's triple onto dst's.

    Conics are compared up to a nonzero scalar each, with role pairing free to
    permute; comparison is exact over rationals at a generic parameter point.
    Returns None when no flip in the (<= 2^6)-element search space works.
    """
    if family_of(src) != family_of(dst):
        raise FamilyMismatchError(f"{src.name} and {dst.name} are in different families")
    src_triple = _generic_instance(src)
    dst_triple = _generic_instance(dst)
    target = sorted(_normalize(c.coefficients()) for c in dst_triple.conics())
    for flip in _flip_candidates(SPECIES_PARAMS[src]):
        if sorted(apply_flip(src_triple, flip)) == target:
            return flip
    return None


def collapse_report() -> str:
    """Every ordered same-family pair with its collapse flip (or NotFound)."""
    lines = []
    for family in Family:
        members = FAMILY_MEMBERS[family]
        lines.append(f"family {family.name} ({family.value})")
        for src, dst in itertools.product(members, repeat=2):
            flip = find_collapse(src, dst)
            outcome = flip.describe() if flip is not None else "NotFound"
            lines.append(f"  {src.name} -> {dst.name}: {outcome}")
    return "\n".join(lines) + "\n"
