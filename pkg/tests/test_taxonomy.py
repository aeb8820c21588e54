from fractions import Fraction

import pytest

from khayyam_cubics.conics import build_triple
from khayyam_cubics.core import Species, SpeciesInstance
from khayyam_cubics.taxonomy import (
    FAMILY_MEMBERS,
    FAMILY_REPRESENTATIVE,
    Family,
    FamilyMismatchError,
    SignFlip,
    apply_flip,
    collapse_report,
    family_of,
    find_collapse,
)


def test_family_examples():
    assert family_of(Species.S1) is Family.I
    assert family_of(Species.S9) is Family.IV
    assert family_of(Species.S13) is Family.V


def test_families_partition_the_species():
    seen = [s for members in FAMILY_MEMBERS.values() for s in members]
    assert sorted(s.value for s in seen) == list(range(1, 14))


def test_representatives():
    assert FAMILY_REPRESENTATIVE[Family.II] is Species.S3
    assert FAMILY_REPRESENTATIVE[Family.III] is Species.S4
    assert FAMILY_REPRESENTATIVE[Family.IV] is Species.S7
    assert FAMILY_REPRESENTATIVE[Family.V] is Species.S11
    for family, rep in FAMILY_REPRESENTATIVE.items():
        assert rep in FAMILY_MEMBERS[family]


def test_identity_flip_returns_same_triple():
    inst = SpeciesInstance(Species.S7, a=Fraction(2), b=Fraction(3), l=Fraction(7))
    triple = build_triple(inst)
    flipped = apply_flip(triple, SignFlip())
    for conic, coeffs in zip(triple.conics(), flipped):
        first = next(c for c in conic.coefficients() if c != 0)
        assert tuple(Fraction(v) / first for v in conic.coefficients()) == coeffs


def test_apply_flip_l_negation_maps_s3_onto_s2():
    s3 = build_triple(SpeciesInstance(Species.S3, b=Fraction(3), l=Fraction(7)))
    s2 = build_triple(SpeciesInstance(Species.S2, b=Fraction(3), l=Fraction(7)))
    flipped = apply_flip(s3, SignFlip(flips={"l": -1}))
    target = sorted(
        tuple(Fraction(v) / next(c for c in conic.coefficients() if c != 0)
              for v in conic.coefficients())
        for conic in s2.conics()
    )
    assert sorted(flipped) == target


def test_find_collapse_documented_pairs():
    flip = find_collapse(Species.S3, Species.S2)
    assert flip is not None
    assert flip.flips.get("l") == -1
    assert not flip.mirror_x and not flip.mirror_y
    assert all(v == 1 for k, v in flip.flips.items() if k != "l")

    flip = find_collapse(Species.S4, Species.S5)
    assert flip is not None
    assert flip.flips.get("a") == -1 and flip.flips.get("c") == -1


def test_find_collapse_identity_on_every_species():
    for species in Species:
        flip = find_collapse(species, species)
        assert flip is not None and flip.is_identity()


def test_find_collapse_rejects_cross_family_pairs():
    with pytest.raises(FamilyMismatchError):
        find_collapse(Species.S1, Species.S2)


def test_collapse_report_covers_every_ordered_pair():
    report = collapse_report()
    for family, members in FAMILY_MEMBERS.items():
        for src in members:
            for dst in members:
                assert f"{src.name} -> {dst.name}: " in report
    assert "S3 -> S2: l->-l" in report
    assert "S4 -> S5: a->-a, c->-c" in report
