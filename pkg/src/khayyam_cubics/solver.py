"""Intersect conic pairs, extract admissible roots, verify against an oracle.

Two fully independent routes to the roots live here.  The geometric route
eliminates y between two conics via the Sylvester resultant (degree <= 4 in x,
exact over Fractions), pulls real roots off the eliminant and filters them by
residuals.  The oracle route solves the cubic in closed form (discriminant
split, trigonometric branch for three real roots) and never touches the
elimination machinery, so agreement between the two is meaningful evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .classifier import classify
from .conics import build_triple, companion_ordinate
from .core import (
    CubicEquation,
    ImplicitConic,
    IntersectionPoint,
    Number,
    Root,
    SolveReport,
    evaluate_cubic,
    normalized_conic_residual,
)

DEFAULT_TOL = 1e-10
AGREEMENT_RTOL = 1e-9


class ProportionalConicsError(ValueError):
    """The two conics are scalar multiples; elimination is meaningless."""


class ZeroPolynomialError(ValueError):
    """Root extraction on the identically-zero polynomial."""


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, coefficients ascending (c0 + c1 x + ... ).

    Works over floats or Fractions; the exact-rational form is what the
    divisibility identities are checked on.
    """

    coeffs: Tuple[Number, ...]

    @staticmethod
    def of(*coeffs: Number) -> "UniPoly":
        return UniPoly(_trim(tuple(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Number) -> Number:
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            _trim(
                tuple(
                    (self.coeffs[i] if i < len(self.coeffs) else 0)
                    + (other.coeffs[i] if i < len(other.coeffs) else 0)
                    for i in range(n)
                )
            )
        )

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero or other.is_zero:
            return UniPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(_trim(tuple(out)))

    def derivative(self) -> "UniPoly":
        return UniPoly(_trim(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)))

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """Long division; exact (via Fraction) when both operands are exact."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        exact = _all_exact(self.coeffs) and _all_exact(other.coeffs)
        rem = [Fraction(c) for c in self.coeffs] if exact else list(self.coeffs)
        div = [Fraction(c) for c in other.coeffs] if exact else list(other.coeffs)
        dq = len(rem) - len(div)
        if dq < 0:
            return UniPoly(()), self
        quo = [0] * (dq + 1)
        lead = div[-1]
        for k in range(dq, -1, -1):
            q = rem[k + len(div) - 1] / lead
            quo[k] = q
            for j, d in enumerate(div):
                rem[k + j] -= q * d
        return UniPoly(_trim(tuple(quo))), UniPoly(_trim(tuple(rem)))


def _trim(coeffs: Tuple[Number, ...]) -> Tuple[Number, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


def _all_exact(coeffs: Sequence[Number]) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in coeffs)


def cubic_poly(eq: CubicEquation) -> UniPoly:
    return UniPoly.of(eq.C, eq.B, eq.A, 1)


def _horner(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _y_coefficients(conic: ImplicitConic) -> Tuple[UniPoly, UniPoly, UniPoly]:
    """View the conic as a polynomial in y: (coeff of y^2, of y, of 1), each in x."""
    a2 = UniPoly.of(conic.q_yy)
    a1 = UniPoly.of(conic.q_y, conic.q_xy)
    a0 = UniPoly.of(conic.q_0, conic.q_x, conic.q_xx)
    return a2, a1, a0


def _proportional(p: ImplicitConic, q: ImplicitConic) -> bool:
    cp, cq = p.coefficients(), q.coefficients()
    scale = max(max(abs(float(v)) for v in cp), max(abs(float(v)) for v in cq))
    for i in range(6):
        for j in range(i + 1, 6):
            cross = cp[i] * cq[j] - cp[j] * cq[i]
            if abs(float(cross)) > 1e-14 * scale * scale:
                return False
    return True


def eliminate_y(p: ImplicitConic, q: ImplicitConic) -> UniPoly:
    """Resultant of the two conics with respect to y: the eliminant in x.

    Degree-aware Sylvester determinant, so it works whether the conics are
    quadratic or linear in y.  For every species triple the eliminant of any
    pair is divisible by the species' signed cubic, the cofactor being a
    constant or a single linear factor.
    """
    if _proportional(p, q):
        raise ProportionalConicsError("conics are proportional")
    a2, a1, a0 = _y_coefficients(p)
    b2, b1, b0 = _y_coefficients(q)
    p_quad = not a2.is_zero
    q_quad = not b2.is_zero
    if p_quad and q_quad:
        # res = (a2 b0 - a0 b2)^2 - (a2 b1 - a1 b2)(a1 b0 - a0 b1)
        u = a2 * b0 - a0 * b2
        v = a2 * b1 - a1 * b2
        w = a1 * b0 - a0 * b1
        return u * u - v * w
    if p_quad and not q_quad:
        return a2 * b0 * b0 - a1 * b1 * b0 + a0 * b1 * b1
    if q_quad and not p_quad:
        return b2 * a0 * a0 - b1 * a1 * a0 + b0 * a1 * a1
    return a1 * b0 - a0 * b1


def eliminate_y_substitution(p: ImplicitConic, q: ImplicitConic) -> UniPoly:
    """Cross-check path: substitute the y-linear conic into the other.

    Writing the linear conic as y = -A0/A1 and clearing denominators from the
    other conic reproduces the eliminant up to the A1^2 scale.
    """
    a2, a1, a0 = _y_coefficients(p)
    if not a2.is_zero:
        p, q = q, p
        a2, a1, a0 = _y_coefficients(p)
    if not a2.is_zero:
        raise ValueError("substitution path needs a conic linear in y")
    b2, b1, b0 = _y_coefficients(q)
    # q(x, -a0/a1) * a1^2
    return b2 * a0 * a0 - b1 * a1 * a0 + b0 * a1 * a1


def _poly_floats(poly: UniPoly) -> List[float]:
    return [float(c) for c in poly.coeffs]


def _eval_scale(coeffs: Sequence[float], x: float) -> float:
    """Magnitude of the evaluation: sum |c_k| max(1, |x|)^k, a roundoff yardstick."""
    ax = max(1.0, abs(x))
    s = 0.0
    pw = 1.0
    for c in coeffs:
        s += abs(c) * pw
        pw *= ax
    return max(s, 1e-300)


def _polish_root(coeffs: Sequence[float], dcoeffs: Sequence[float], x0: float) -> float:
    """Newton from x0 with a bisection guard once a sign change brackets the root."""

    def f(x: float) -> float:
        return _horner(coeffs, x)

    def df(x: float) -> float:
        return _horner(dcoeffs, x)

    # Try to bracket around x0 so Newton can never run away.
    lo = hi = None
    f0 = f(x0)
    if f0 != 0.0:
        for k in range(-14, -1):
            h = max(1.0, abs(x0)) * (10.0 ** k)
            fa, fb = f(x0 - h), f(x0 + h)
            if fa == 0.0:
                return x0 - h
            if fb == 0.0:
                return x0 + h
            if (fa < 0) != (f0 < 0):
                lo, hi = x0 - h, x0
                break
            if (fb < 0) != (f0 < 0):
                lo, hi = x0, x0 + h
                break

    x = x0
    best_x, best_f = x0, abs(f0)
    for _ in range(60):
        fx = f(x)
        if abs(fx) < best_f:
            best_x, best_f = x, abs(fx)
        if fx == 0.0:
            return x
        d = df(x)
        if d != 0.0:
            step = fx / d
            xn = x - step
        else:
            xn = math.nan
        in_bracket = lo is None or (math.isfinite(xn) and lo <= xn <= hi)
        if not (math.isfinite(xn) and in_bracket):
            if lo is None:
                break
            xn = 0.5 * (lo + hi)
        if lo is not None:
            if (f(xn) < 0) == (f(lo) < 0):
                lo = xn
            else:
                hi = xn
        if abs(xn - x) <= 1e-15 * max(1.0, abs(xn)):
            x = xn
            fx = f(x)
            if abs(fx) < best_f:
                best_x, best_f = x, abs(fx)
            break
        x = xn
    return best_x


def real_roots(poly: UniPoly, tol: float = DEFAULT_TOL) -> List[Tuple[float, int]]:
    """All real roots with multiplicity, sorted ascending.

    Candidates come from the companion matrix; each is polished by
    bisection-guarded Newton, accepted only if the residual is negligible at
    evaluation scale, then clustered within sqrt(tol) so a tangency shows up
    as one root of multiplicity two.
    """
    if poly.is_zero:
        raise ZeroPolynomialError("the zero polynomial has every x as a root")
    if poly.degree < 1:
        return []
    coeffs = _poly_floats(poly)
    dcoeffs = _poly_floats(poly.derivative())
    companion = np.roots(list(reversed(coeffs)))

    accept = max(tol, 1e-12)
    candidates = []
    for z in companion:
        if abs(z.imag) > 1e-3 * max(1.0, abs(z.real)):
            continue
        r = _polish_root(coeffs, dcoeffs, float(z.real))
        if not math.isfinite(r):
            continue
        if abs(_horner(coeffs, r)) <= accept * _eval_scale(coeffs, r):
            candidates.append(r)

    candidates.sort()
    out: List[Tuple[float, int]] = []
    radius = math.sqrt(tol)
    for r in candidates:
        if out and abs(r - out[-1][0]) <= radius * max(1.0, abs(r)):
            prev, m = out[-1]
            out[-1] = (prev, m + 1)
        else:
            out.append((r, 1))
    return out


def _ordinates_at(conic: ImplicitConic, x: float) -> List[float]:
    """Solve the conic for y at a fixed x (one value if linear, else up to two)."""
    if conic.q_yy == 0:
        denom = conic.q_xy * x + conic.q_y
        if denom == 0:
            return []
        return [-(conic.q_xx * x * x + conic.q_x * x + conic.q_0) / denom]
    a = float(conic.q_yy)
    b = float(conic.q_xy) * x + float(conic.q_y)
    c = float(conic.q_xx) * x * x + float(conic.q_x) * x + float(conic.q_0)
    disc = b * b - 4 * a * c
    scale = max(abs(b * b), abs(4 * a * c), 1e-300)
    if disc < 0 and abs(disc) <= 1e-12 * scale:
        disc = 0.0  # tangency in y within roundoff
    if disc < 0:
        return []
    s = math.sqrt(disc)
    if disc == 0.0:
        return [-b / (2 * a)]
    # Stable quadratic: avoid cancellation in the small root.
    q = -0.5 * (b + math.copysign(s, b))
    return [q / a, c / q]


def _points_from_abscissas(
    p: ImplicitConic,
    q: ImplicitConic,
    xs: Sequence[float],
    tol: float,
) -> List[IntersectionPoint]:
    linear_first = (p, q) if p.q_yy == 0 else (q, p)
    pts: List[IntersectionPoint] = []
    for x in xs:
        ys = _ordinates_at(linear_first[0], x)
        if not ys:
            ys = _ordinates_at(linear_first[1], x)
        for y in ys:
            r1 = normalized_conic_residual(p, x, y)
            r2 = normalized_conic_residual(q, x, y)
            if r1 < tol and r2 < tol:
                pts.append(IntersectionPoint(x=x, y=y, residual_1=r1, residual_2=r2))
    # Deduplicate within sqrt(tol), keeping the first (smallest x) occurrence.
    radius = math.sqrt(tol)
    pts.sort(key=lambda pt: (pt.x, pt.y))
    unique: List[IntersectionPoint] = []
    for pt in pts:
        dup = any(
            abs(pt.x - u.x) <= radius * max(1.0, abs(pt.x))
            and abs(pt.y - u.y) <= radius * max(1.0, abs(pt.y))
            for u in unique
        )
        if not dup:
            unique.append(pt)
    return unique


def intersect(
    p: ImplicitConic, q: ImplicitConic, tol: float = DEFAULT_TOL
) -> List[IntersectionPoint]:
    """Real intersection points of two conics.

    Eliminates y, takes the real eliminant roots as candidate abscissas,
    back-substitutes (through whichever conic is linear in y first), and keeps
    points whose normalized residuals pass on both conics.
    """
    eliminant = eliminate_y(p, q)
    if eliminant.is_zero or eliminant.degree < 1:
        return []
    roots = real_roots(eliminant, tol)
    return _points_from_abscissas(p, q, [r for r, _ in roots], tol)


# --- closed-form oracle ---------------------------------------------------

def _cbrt(v: float) -> float:
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def oracle_cubic_roots(eq: CubicEquation) -> List[Tuple[float, int]]:
    """All real roots of the cubic by closed form, polished to ~1e-13 relative.

    Depressed-cubic discriminant split: one real root via cube roots, three
    real roots via the trigonometric method (casus irreducibilis), boundary
    handled as an explicit double/triple root.  Shares nothing with the
    elimination route.
    """
    A, B, C = float(eq.A), float(eq.B), float(eq.C)
    # x = t - A/3 depresses the cubic to t^3 + p t + q.
    p = B - A * A / 3.0
    q = 2.0 * A ** 3 / 27.0 - A * B / 3.0 + C
    shift = -A / 3.0

    half_q = 0.5 * q
    third_p = p / 3.0
    D = half_q * half_q + third_p ** 3

    raw: List[Tuple[float, int]]
    if D > 0:
        s = math.sqrt(D)
        t = _cbrt(-half_q + s) + _cbrt(-half_q - s)
        raw = [(t + shift, 1)]
    elif D < 0:
        m = 2.0 * math.sqrt(-third_p)
        arg = 3.0 * q / (p * m)
        arg = max(-1.0, min(1.0, arg))
        theta = math.acos(arg) / 3.0
        raw = [
            (m * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift, 1)
            for k in range(3)
        ]
    else:
        if p == 0.0:
            raw = [(shift, 3)]
        else:
            raw = [(3.0 * q / p + shift, 1), (-1.5 * q / p + shift, 2)]

    coeffs = [C, B, A, 1.0]
    dcoeffs = [B, 2.0 * A, 3.0]
    polished = [(_polish_root(coeffs, dcoeffs, r), m) for r, m in raw]
    polished.sort()

    out: List[Tuple[float, int]] = []
    for r, m in polished:
        if out and abs(r - out[-1][0]) <= 1e-8 * max(1.0, abs(r)):
            prev, pm = out[-1]
            out[-1] = (prev, pm + m)
        else:
            out.append((r, m))
    return out


# --- end-to-end solve -----------------------------------------------------

def _cubic_scale(eq: CubicEquation) -> float:
    return max(1.0, abs(float(eq.A)), abs(float(eq.B)), abs(float(eq.C)))


def _cubic_derivative_scale(eq: CubicEquation, r: float) -> float:
    return max(1.0, 3.0 * r * r + 2.0 * abs(float(eq.A)) * r + abs(float(eq.B)))


def _expand(roots: Sequence[Root]) -> List[float]:
    out: List[float] = []
    for root in roots:
        out.extend([root.x] * root.multiplicity)
    return out


def solve_khayyam(eq: CubicEquation, tol: float = DEFAULT_TOL) -> SolveReport:
    """Classify, construct the conic triple, intersect, and verify.

    Positive abscissas of the working-pair intersection that satisfy the cubic
    within ``tol`` (scale-free) are the admissible roots; extraneous eliminant
    roots fail the cubic residual test and drop out.  The report carries the
    hidden-conic residual at every accepted point and the closed-form oracle
    comparison.  An empty root list is a valid outcome, not an error.
    """
    species = classify(eq)
    triple = build_triple(species)
    w1, w2 = triple.working_1, triple.working_2

    eliminant = eliminate_y(w1, w2)
    elim_roots = real_roots(eliminant, tol)
    points = _points_from_abscissas(w1, w2, [r for r, _ in elim_roots], tol)

    scale = _cubic_scale(eq)
    cubic_coeffs = [float(eq.C), float(eq.B), float(eq.A), 1.0]
    cubic_dcoeffs = [float(eq.B), 2.0 * float(eq.A), 3.0]

    accepted: List[Root] = []
    cubic_residuals: List[float] = []
    hidden_residuals: List[float] = []
    for r, mult in elim_roots:
        if r <= 0:
            continue
        if abs(float(evaluate_cubic(eq, r))) >= tol * scale:
            continue  # extraneous cofactor root
        r = _polish_root(cubic_coeffs, cubic_dcoeffs, r)
        # A multiple eliminant root is only a tangency if the cubic agrees.
        if mult > 1:
            dval = abs(float(eq.B) + r * (2.0 * float(eq.A) + 3.0 * r))
            if dval > math.sqrt(tol) * _cubic_derivative_scale(eq, r):
                mult = 1
        if accepted and abs(r - accepted[-1].x) <= 1e-8 * max(1.0, abs(r)):
            prev = accepted[-1]
            accepted[-1] = Root(prev.x, prev.multiplicity + mult)
            continue
        accepted.append(Root(x=r, multiplicity=mult))
        cubic_residuals.append(abs(float(evaluate_cubic(eq, r))))
        # Tri-concurrence evidence: the hidden conic's residual at the point
        # the WORKING pair intersected in, not at its own ordinate.
        nearest = min(points, key=lambda pt: abs(pt.x - r), default=None)
        if nearest is not None and abs(nearest.x - r) <= 1e-6 * max(1.0, abs(r)):
            y = nearest.y
        else:
            y = float(companion_ordinate(triple.hidden, r))
        hidden_residuals.append(normalized_conic_residual(triple.hidden, r, y))

    oracle = [
        Root(x=r, multiplicity=m) for r, m in oracle_cubic_roots(eq) if r > 0
    ]

    ours = _expand(accepted)
    theirs = _expand(oracle)
    agreement = len(ours) == len(theirs) and all(
        abs(a - b) <= AGREEMENT_RTOL * max(1.0, abs(b))
        for a, b in zip(ours, theirs)
    )

    return SolveReport(
        cubic=eq,
        species=species,
        triple=triple,
        intersections=tuple(points),
        roots=tuple(accepted),
        cubic_residuals=tuple(cubic_residuals),
        hidden_residuals=tuple(hidden_residuals),
        oracle_roots=tuple(oracle),
        agreement=agreement,
    )
