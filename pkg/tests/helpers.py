"""Shared test utilities: random instances, discriminants, golden fixtures."""

from __future__ import annotations

import random
from fractions import Fraction
import numpy as np

from khayyam_cubics.core import Species, SpeciesInstance, SPECIES_PARAMS
from khayyam_cubics.classifier import signed_cubic
from khayyam_cubics.core import CubicEquation

# Species whose positive-root count is pinned by the sign structure.
EXACTLY_ONE = {Species.S1, Species.S3, Species.S4, Species.S6,
               Species.S7, Species.S10, Species.S11}
ZERO_OR_TWO = {Species.S2, Species.S5, Species.S8, Species.S9, Species.S13}
ONE_OR_THREE = {Species.S12}

# Fixed instances for the rendering golden files: the five family
# representatives plus the reflected counterpart of S3.
GOLDEN_INSTANCES = {
    "S1": SpeciesInstance(Species.S1, b=1.0, l=2.0),
    "S2": SpeciesInstance(Species.S2, b=3.0, l=1.0),
    "S3": SpeciesInstance(Species.S3, b=3.0, l=1.0),
    "S4": SpeciesInstance(Species.S4, a=1.0, c=1.0),
    "S7": SpeciesInstance(Species.S7, a=1.0, b=1.0, l=2.0),
    "S11": SpeciesInstance(Species.S11, a=1.0, b=1.0, l=2.0),
}


def random_instance(species: Species, rng: np.random.Generator) -> SpeciesInstance:
    params = {name: float(rng.uniform(0.25, 8.0)) for name in SPECIES_PARAMS[species]}
    return SpeciesInstance(species, **params)


def random_rational(rng: random.Random) -> Fraction:
    """A random rational in [1/4, 8] with a small denominator."""
    d = rng.randint(1, 8)
    n = rng.randint(max(1, (d + 3) // 4), 8 * d)
    return Fraction(n, d)


def random_rational_instance(species: Species, rng: random.Random) -> SpeciesInstance:
    params = {name: random_rational(rng) for name in SPECIES_PARAMS[species]}
    return SpeciesInstance(species, **params)


def cubic_discriminant(eq: CubicEquation) -> float:
    A, B, C = float(eq.A), float(eq.B), float(eq.C)
    return (18.0 * A * B * C - 4.0 * A ** 3 * C + A * A * B * B
            - 4.0 * B ** 3 - 27.0 * C * C)


def near_tangency(eq: CubicEquation, rel: float = 1e-6) -> bool:
    s = max(1.0, abs(float(eq.A)), abs(float(eq.B)), abs(float(eq.C)))
    return abs(cubic_discriminant(eq)) < rel * s ** 4


def instance_cubic(inst: SpeciesInstance) -> CubicEquation:
    return signed_cubic(inst)


def random_equation_text(rng: random.Random) -> str:
    """Random string from the equation grammar (always syntactically valid)."""

    def term():
        kind = rng.randrange(3)
        num = rng.choice(["", "0", "2", "3.5", "0.25", "10"])
        if kind == 0:
            return num or "1"
        star = rng.choice(["", "*"]) if num else ""
        power = rng.choice(["", "^1", "^2", "^3"])
        return f"{num}{star}x{power}"

    def side():
        parts = [term()]
        for _ in range(rng.randrange(3)):
            parts.append(rng.choice(["+", "-"]))
            parts.append(term())
        return rng.choice(["", " "]).join(parts)

    return f"{side()} = {side()}"
