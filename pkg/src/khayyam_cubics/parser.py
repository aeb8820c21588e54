"""Parse textual cubic equations like "x^3 + 2x = 10" into monic coefficients.

Grammar (whitespace insignificant, ASCII):

    EQUATION := SIDE "=" SIDE
    SIDE     := TERM (("+" | "-") TERM)*
    TERM     := NUMBER | NUMBER? "*"? "x" ("^" DIGITS)?
    NUMBER   := non-negative decimal literal

A bare "x" means x^1.  All terms are moved to the left side, like powers are
combined, and the result is divided by the x^3 coefficient, which must be
positive: a negative leading coefficient is an error rather than a silent
negation of both sides, so the side convention stays visible.
"""

from __future__ import annotations

from decimal import Decimal

from .core import CubicEquation


class EquationSyntaxError(ValueError):
    """The text does not match the equation grammar."""


class DegreeError(ValueError):
    """No x^3 term, or a power above 3."""


class LeadingSignError(ValueError):
    """The combined x^3 coefficient is zero or negative."""


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-=*^x":
            tokens.append((ch, ch))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                seen_dot = seen_dot or text[j] == "."
                j += 1
            literal = text[i:j]
            if literal == ".":
                raise EquationSyntaxError("lone '.' is not a number")
            tokens.append(("num", literal))
            i = j
            continue
        raise EquationSyntaxError(f"unexpected character {ch!r}")
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise EquationSyntaxError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}")
        self.pos += 1
        return tok

    def side(self):
        """Accumulated powers [const, x, x^2, x^3] of one equation side."""
        powers = [0.0, 0.0, 0.0, 0.0]
        sign = 1.0
        coeff, power = self.term()
        powers[power] += sign * coeff
        while self.peek() in "+-":
            op = self.take()[0]
            sign = 1.0 if op == "+" else -1.0
            coeff, power = self.term()
            powers[power] += sign * coeff
        return powers

    def term(self):
        coeff = 1.0
        have_number = False
        if self.peek() == "num":
            coeff = float(self.take()[1])
            have_number = True
        if self.peek() == "*":
            if not have_number:
                raise EquationSyntaxError("'*' must follow a number")
            self.take()
            if self.peek() != "x":
                raise EquationSyntaxError("'*' must be followed by x")
        if self.peek() == "x":
            self.take()
            power = 1
            if self.peek() == "^":
                self.take()
                exp_tok = self.take("num")[1]
                if not exp_tok.isdigit():
                    raise EquationSyntaxError(f"exponent must be an integer, got {exp_tok!r}")
                power = int(exp_tok)
                if power > 3:
                    raise DegreeError(f"power {power} exceeds 3")
                if power == 0:
                    raise EquationSyntaxError("x^0 is not in the grammar; write a number")
            return coeff, power
        if not have_number:
            raise EquationSyntaxError(
                f"expected a term, found {self.tokens[self.pos][1] or 'end of input'!r}"
            )
        return coeff, 0


def parse_equation(text: str) -> CubicEquation:
    """Parse both-sides or signed monic form into a monic CubicEquation.

    Raises EquationSyntaxError on grammar violations, DegreeError when no x^3
    term is present (or a power exceeds 3), LeadingSignError when the combined
    x^3 coefficient is not positive.
    """
    parser = _Parser(_tokenize(text))
    left = parser.side()
    parser.take("=")
    right = parser.side()
    parser.take("end")

    combined = [lv - rv for lv, rv in zip(left, right)]
    if left[3] == 0.0 and right[3] == 0.0:
        raise DegreeError("the equation has no x^3 term")
    lead = combined[3]
    if lead <= 0.0:
        raise LeadingSignError(
            f"combined x^3 coefficient is {lead:g}; move the cube to the left side"
        )
    return CubicEquation(A=combined[2] / lead, B=combined[1] / lead, C=combined[0] / lead)


def _format_number(v: float) -> str:
    """Positional decimal that parses back to exactly the same double."""
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    r = repr(v)
    if "e" not in r and "E" not in r:
        return r
    return format(Decimal(v), "f")


def format_equation(eq: CubicEquation) -> str:
    """Canonical text "x^3 [+/- ...] = 0" that reparses to the same triple."""
    parts = ["x^3"]
    for value, name in ((eq.A, "x^2"), (eq.B, "x"), (eq.C, "")):
        value = float(value)
        if value == 0.0:
            continue
        sign = "+" if value > 0 else "-"
        magnitude = _format_number(abs(value))
        if name and magnitude == "1":
            parts.append(f"{sign} {name}")
        else:
            parts.append(f"{sign} {magnitude}{name}")
    return " ".join(parts) + " = 0"
