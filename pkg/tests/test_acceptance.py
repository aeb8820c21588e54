"""Acceptance suite.  Each criterion prints one PASS/FAIL line (run with -s).

The fuzz-based criteria share one corpus of 1000 random instances per species,
built once per session.
"""

import math
import pathlib
import random
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

import numpy as np
import pytest

from helpers import (
    EXACTLY_ONE,
    GOLDEN_INSTANCES,
    ONE_OR_THREE,
    ZERO_OR_TWO,
    near_tangency,
    random_equation_text,
    random_instance,
    random_rational_instance,
)
from khayyam_cubics.classifier import signed_cubic
from khayyam_cubics.conics import (
    LocusKind,
    SegmentConfig,
    asymptotic_rectangle,
    build_triple,
    locus_height,
)
from khayyam_cubics.core import (
    ConicKind,
    CubicEquation,
    Species,
    SpeciesInstance,
    evaluate_conic,
)
from khayyam_cubics.parser import (
    DegreeError,
    EquationSyntaxError,
    LeadingSignError,
    format_equation,
    parse_equation,
)
from khayyam_cubics.render import RenderOptions, compute_viewport, render_svg
from khayyam_cubics.solver import cubic_poly, eliminate_y, solve_khayyam
from khayyam_cubics.taxonomy import FAMILY_MEMBERS, collapse_report, find_collapse

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"
TRIALS_PER_SPECIES = 1000
RATIONAL_DRAWS = 200


def _criterion(number: int, ok: bool, detail: str) -> None:
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {number}: {detail}"


@dataclass(frozen=True)
class FuzzRecord:
    species: Species
    eq: CubicEquation
    roots: Tuple[Tuple[float, int], ...]
    oracle: Tuple[Tuple[float, int], ...]
    hidden_residuals: Tuple[float, ...]
    agreement: bool
    excluded: bool


@pytest.fixture(scope="session")
def fuzz_corpus():
    rng = np.random.default_rng(20260810)
    records: List[FuzzRecord] = []
    t0 = time.monotonic()
    for species in Species:
        for _ in range(TRIALS_PER_SPECIES):
            inst = random_instance(species, rng)
            eq = signed_cubic(inst)
            report = solve_khayyam(eq)
            records.append(
                FuzzRecord(
                    species=species,
                    eq=eq,
                    roots=tuple((r.x, r.multiplicity) for r in report.roots),
                    oracle=tuple((r.x, r.multiplicity) for r in report.oracle_roots),
                    hidden_residuals=report.hidden_residuals,
                    agreement=report.agreement,
                    excluded=near_tangency(eq),
                )
            )
    return records, time.monotonic() - t0


def test_criterion_1_species_table_identity():
    rng = random.Random(1)
    t0 = time.monotonic()
    passes = 0
    for species in Species:
        for _ in range(RATIONAL_DRAWS):
            inst = random_rational_instance(species, rng)
            cubic = cubic_poly(signed_cubic(inst))
            triple = build_triple(inst)
            for p, q in combinations(triple.conics(), 2):
                quo, rem = eliminate_y(p, q).divmod(cubic)
                assert rem.is_zero, (species, inst.params())
                assert quo.degree in (0, 1), (species, inst.params())
                assert all(isinstance(c, Fraction) for c in quo.coeffs)
                passes += 1
    elapsed = time.monotonic() - t0
    _criterion(
        1,
        passes == 13 * RATIONAL_DRAWS * 3 and elapsed < 30.0,
        f"{passes} exact divisibility passes in {elapsed:.1f}s (< 30s)",
    )


def test_criterion_2_root_agreement(fuzz_corpus):
    records, elapsed = fuzz_corpus
    excluded = sum(1 for r in records if r.excluded)
    checked = disagreements = 0
    for record in records:
        if record.excluded:
            continue
        checked += 1
        if not record.agreement:
            disagreements += 1
    _criterion(
        2,
        disagreements == 0 and elapsed < 60.0,
        f"{checked} instances agree with the oracle at 1e-9 "
        f"({excluded} near-tangency instances counted separately) "
        f"in {elapsed:.1f}s (< 60s)",
    )


def test_criterion_3_descartes_audit(fuzz_corpus):
    records, _ = fuzz_corpus
    violations = 0
    for record in records:
        count = sum(m for _, m in record.roots)
        if record.species in EXACTLY_ONE:
            bad = count != 1
        elif record.species in ZERO_OR_TWO:
            bad = count not in (0, 2)
        else:
            assert record.species in ONE_OR_THREE
            bad = count not in (1, 3)
        violations += bad
    _criterion(3, violations == 0,
               f"positive-root counts obey the sign law ({len(records)} instances)")


def test_criterion_4_named_instances():
    report = solve_khayyam(signed_cubic(SpeciesInstance(Species.S1, b=1.0, l=2.0)))
    ok1 = (len(report.roots) == 1
           and abs(report.roots[0].x - 1.0) < 1e-12
           and report.agreement)

    # bisection-oracle values for x^3 - 3x^2 + 1, frozen at 1e-14
    report = solve_khayyam(CubicEquation(-3, 0, 1))
    expected = (0.6527036446661394, 2.879385241571817)
    ok2 = (len(report.roots) == 2
           and abs(report.roots[0].x - expected[0]) <= 1e-9 * expected[0]
           and abs(report.roots[1].x - expected[1]) <= 1e-9 * expected[1])

    report = solve_khayyam(CubicEquation(-1, 0, 1))
    ok3 = report.roots == () and report.agreement

    report = solve_khayyam(
        signed_cubic(SpeciesInstance(Species.S12, a=6.0, b=math.sqrt(11.0), l=6.0 / 11.0))
    )
    ok4 = len(report.roots) == 3 and all(
        abs(root.x - want) <= 1e-9 * want
        for root, want in zip(report.roots, (1.0, 2.0, 3.0))
    )

    _criterion(4, ok1 and ok2 and ok3 and ok4,
               "S1{b=1,l=2}, S5{a=3,c=1}, S5{a=1,c=1}, S12{a=6,b=sqrt(11),l=6/11}")


def test_criterion_5_tri_concurrence(fuzz_corpus):
    records, _ = fuzz_corpus
    worst = 0.0
    roots_checked = 0
    for record in records:
        for residual in record.hidden_residuals:
            roots_checked += 1
            worst = max(worst, residual)
    _criterion(5, worst < 1e-9,
               f"hidden-conic residual < 1e-9 at {roots_checked} accepted roots "
               f"(worst {worst:.2e})")


def test_criterion_6_reflection_collapses(tmp_path):
    flip = find_collapse(Species.S3, Species.S2)
    ok_a = (flip is not None and flip.flips.get("l") == -1
            and not flip.mirror_x and not flip.mirror_y
            and all(v == 1 for k, v in flip.flips.items() if k != "l"))

    flip = find_collapse(Species.S4, Species.S5)
    ok_b = (flip is not None
            and flip.flips.get("a") == -1 and flip.flips.get("c") == -1)

    report = collapse_report()
    out = tmp_path / "collapse_report.txt"
    out.write_text(report, encoding="utf-8")
    pairs = sum(len(m) ** 2 for m in FAMILY_MEMBERS.values())
    listed = sum(report.count(f"{src.name} -> {dst.name}: ")
                 for members in FAMILY_MEMBERS.values()
                 for src in members for dst in members)
    not_found = report.count("NotFound")
    ok_c = listed == pairs

    _criterion(
        6,
        ok_a and ok_b and ok_c,
        f"S3->S2 is l->-l, S4->S5 contains a,c negation; experiment wrote "
        f"{out.name} with {pairs} pairs ({not_found} NotFound)",
    )


def test_criterion_7_locus_properties():
    worst_mean = 0.0
    for i in range(1, 101):
        ab = 2.0 + (i % 7) * 0.5
        inside = ab * i / 101.0
        beyond = 3.0 * i / 100.0
        ch = locus_height(LocusKind.SEMICIRCLE_MEAN, SegmentConfig(ab, inside))
        worst_mean = max(worst_mean, abs(ch * ch - inside * (ab - inside)))
        ch = locus_height(LocusKind.PARABOLA_MEAN, SegmentConfig(ab, beyond))
        worst_mean = max(worst_mean, abs(ch * ch - ab * beyond))
        ch = locus_height(LocusKind.DIAMETER_HYPERBOLA_MEAN, SegmentConfig(ab, beyond))
        worst_mean = max(worst_mean, abs(ch * ch - (ab + beyond) * beyond))

    rng = np.random.default_rng(7)
    worst_rect = 0.0
    for species in Species:
        triple = build_triple(random_instance(species, rng))
        for conic in triple.conics():
            if conic.kind is not ConicKind.ASYMPTOTIC_HYPERBOLA:
                continue
            k = -float(conic.q_x) / float(conic.q_xy)
            m = -float(conic.q_0) / float(conic.q_xy)
            values = [
                asymptotic_rectangle(conic, x, k + m / x)
                for x in (0.5 + 0.25 * j for j in range(100))
            ]
            worst_rect = max(worst_rect, (max(values) - min(values))
                             / max(1.0, abs(values[0])))

    _criterion(
        7,
        worst_mean < 1e-12 and worst_rect < 1e-10,
        f"mean relations hold to {worst_mean:.2e} (< 1e-12); "
        f"asymptotic rectangle constant to {worst_rect:.2e} (< 1e-10)",
    )


def test_criterion_8_rendering_goldens():
    ok = True
    details = []
    for name, inst in GOLDEN_INSTANCES.items():
        report = solve_khayyam(signed_cubic(inst))
        opts = RenderOptions()
        svg = render_svg(report, opts)

        golden = (GOLDEN_DIR / f"{name}.svg").read_bytes()
        byte_equal = svg.encode("utf-8") == golden

        root = ET.fromstring(svg)
        vp = compute_viewport(report, opts)
        conic_by_role = {
            "working-1": report.triple.working_1,
            "working-2": report.triple.working_2,
            "hidden": report.triple.hidden,
        }
        worst = 0.0
        for group in root.iter("{http://www.w3.org/2000/svg}g"):
            role = group.get("data-role")
            if role is None:
                continue
            conic = conic_by_role[role]
            scale = max(abs(float(c)) for c in conic.coefficients())
            for path in group.findall("{http://www.w3.org/2000/svg}path"):
                for pair in path.get("d").replace("M ", "").split(" L "):
                    sx, sy = map(float, pair.split(","))
                    x, y = vp.to_world(sx, sy)
                    worst = max(worst, abs(evaluate_conic(conic, x, y)) / scale)
        ok = ok and byte_equal and worst < 1e-6
        details.append(f"{name}:{'=' if byte_equal else '!'}{worst:.1e}")
    _criterion(8, ok, "golden bytes equal, XML well-formed, residuals < 1e-6 "
                      f"[{', '.join(details)}]")


def test_criterion_9_parser_fuzz():
    rng = random.Random(99)
    crashes = 0
    round_trips = 0
    for _ in range(10_000):
        text = random_equation_text(rng)
        try:
            eq = parse_equation(text)
        except (EquationSyntaxError, DegreeError, LeadingSignError):
            continue
        except Exception:
            crashes += 1
            continue
        again = parse_equation(format_equation(eq))
        if (again.A, again.B, again.C) == (eq.A, eq.B, eq.C):
            round_trips += 1
        else:
            crashes += 1

    # the four documented error cases, each by a dedicated input
    errors_hit = 0
    for text, err in [
        ("x^3 + $ = 1", EquationSyntaxError),   # grammar violation
        ("x^2 + 1 = 0", DegreeError),           # no cube term
        ("x^4 = x^3 + 1", DegreeError),         # power above 3
        ("x^3 = 2x^3 + 1", LeadingSignError),   # nonpositive cube coefficient
    ]:
        try:
            parse_equation(text)
        except err:
            errors_hit += 1
    _criterion(
        9,
        crashes == 0 and errors_hit == 4 and round_trips > 0,
        f"10000 grammar strings, no crashes, {round_trips} parses round-tripped, "
        f"all 4 documented error cases raised",
    )
