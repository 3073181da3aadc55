"""Exact sparse univariate integer polynomials and reduced rational functions.

A word a_0 a_1 ... a_{n-1} is encoded as the polynomial
a_0 + a_1 X + ... + a_{n-1} X^(n-1); since all letters are positive the
encoding is injective.  For a nonempty word the rational encoding is the
reduced form of that polynomial divided by X^n - 1, which depends only on
the primitive root of the word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputFormatError, TheoremCheckError
from .words import Word, primitive_root

NEG_INFINITY = float("-inf")


class IntPolynomial:
    """Sparse polynomial with arbitrary-precision integer coefficients.

    Stored as a map degree -> nonzero coefficient; the zero polynomial is
    the empty map and has degree -infinity.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for deg, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                if not isinstance(deg, int) or deg < 0:
                    raise ValueError(f"degrees must be nonnegative integers, got {deg!r}")
                if not isinstance(c, int):
                    raise ValueError(f"coefficients must be integers, got {c!r}")
                if c:
                    clean[deg] = clean.get(deg, 0) + c
                    if not clean[deg]:
                        del clean[deg]
        self._coeffs = clean

    # construction helpers
    @staticmethod
    def zero() -> "IntPolynomial":
        return IntPolynomial()

    @staticmethod
    def one() -> "IntPolynomial":
        return IntPolynomial({0: 1})

    @staticmethod
    def constant(c: int) -> "IntPolynomial":
        return IntPolynomial({0: c})

    @staticmethod
    def x_power(k: int, c: int = 1) -> "IntPolynomial":
        return IntPolynomial({k: c})

    # basic queries
    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self):
        return max(self._coeffs) if self._coeffs else NEG_INFINITY

    def coeff(self, k: int) -> int:
        return self._coeffs.get(k, 0)

    def items(self):
        return sorted(self._coeffs.items())

    @property
    def leading_coefficient(self) -> int:
        if not self._coeffs:
            return 0
        return self._coeffs[max(self._coeffs)]

    def content(self) -> int:
        """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._coeffs.values():
            g = gcd(g, c)
        return g

    def primitive_part(self) -> "IntPolynomial":
        g = self.content()
        if g <= 1:
            return self
        return IntPolynomial({d: c // g for d, c in self._coeffs.items()})

    # arithmetic
    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            s = out.get(d, 0) + c
            if s:
                out[d] = s
            elif d in out:
                del out[d]
        res = IntPolynomial.__new__(IntPolynomial)
        res._coeffs = out
        return res

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            s = out.get(d, 0) - c
            if s:
                out[d] = s
            elif d in out:
                del out[d]
        res = IntPolynomial.__new__(IntPolynomial)
        res._coeffs = out
        return res

    def __neg__(self) -> "IntPolynomial":
        res = IntPolynomial.__new__(IntPolynomial)
        res._coeffs = {d: -c for d, c in self._coeffs.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return IntPolynomial()
            res = IntPolynomial.__new__(IntPolynomial)
            res._coeffs = {d: c * other for d, c in self._coeffs.items()}
            return res
        out: dict[int, int] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                d = d1 + d2
                s = out.get(d, 0) + c1 * c2
                if s:
                    out[d] = s
                elif d in out:
                    del out[d]
        res = IntPolynomial.__new__(IntPolynomial)
        res._coeffs = out
        return res

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by X^k."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        res = IntPolynomial.__new__(IntPolynomial)
        res._coeffs = {d + k: c for d, c in self._coeffs.items()}
        return res

    def evaluate(self, x):
        return sum(c * x**d for d, c in self._coeffs.items())

    # equality and rendering
    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def to_text(self) -> str:
        """Terms in increasing degree, e.g. "1 + 2X + X^2 + 2X^3"."""
        if not self._coeffs:
            return "0"
        parts = []
        for d, c in self.items():
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                xpart = "X" if d == 1 else f"X^{d}"
                body = xpart if mag == 1 else f"{mag}{xpart}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"IntPolynomial({self.to_text()!r})"


_TERM_RE = re.compile(r"^(\d+)?\s*(X(?:\^(\d+))?)?$")


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse the rendering produced by IntPolynomial.to_text."""
    text = text.replace("−", "-").strip()
    if not text:
        raise InputFormatError("empty polynomial text")
    if text == "0":
        return IntPolynomial()
    # split into signed terms at top level
    chunks = re.split(r"(?=[+-])", text.replace(" ", ""))
    out: dict[int, int] = {}
    for chunk in chunks:
        if not chunk:
            continue
        sign = 1
        body = chunk
        if body[0] == "+":
            body = body[1:]
        elif body[0] == "-":
            sign = -1
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise InputFormatError(f"cannot parse polynomial term {chunk!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            deg = 0
        elif m.group(3) is None:
            deg = 1
        else:
            deg = int(m.group(3))
        out[deg] = out.get(deg, 0) + sign * coeff
    return IntPolynomial(out)


def divmod_rational(a: IntPolynomial, b: IntPolynomial):
    """Quotient and remainder over the rationals as degree -> Fraction maps."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = {d: Fraction(c) for d, c in a.items()}
    quo: dict[int, Fraction] = {}
    db = b.degree
    lb = b.leading_coefficient
    while rem:
        dr = max(rem)
        if dr < db:
            break
        f = rem[dr] / lb
        quo[dr - db] = f
        for d, c in b.items():
            nd = d + dr - db
            v = rem.get(nd, Fraction(0)) - f * c
            if v:
                rem[nd] = v
            elif nd in rem:
                del rem[nd]
    return quo, rem


def divides(d: IntPolynomial, a: IntPolynomial) -> bool:
    """Whether d divides a over the rationals (d nonzero)."""
    if d.is_zero:
        return a.is_zero
    _, rem = divmod_rational(a, d)
    return not rem


def exact_div(a: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    """Exact division in the integer polynomial ring; raises if inexact."""
    if d.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    quo, rem = divmod_rational(a, d)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    out = {}
    for deg, f in quo.items():
        if f.denominator != 1:
            raise ArithmeticError("quotient has non-integer coefficients")
        out[deg] = int(f)
    return IntPolynomial(out)


def _pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    lb = b.leading_coefficient
    r = a
    while not r.is_zero and r.degree >= b.degree:
        r = r * lb - b.shift(r.degree - b.degree) * r.leading_coefficient
    return r


def _normalize_gcd(p: IntPolynomial) -> IntPolynomial:
    p = p.primitive_part()
    if p.leading_coefficient < 0:
        p = -p
    return p


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Gcd over the rationals, normalized primitive with positive leading coefficient."""
    if a.is_zero and b.is_zero:
        return IntPolynomial()
    if a.is_zero:
        return _normalize_gcd(b)
    if b.is_zero:
        return _normalize_gcd(a)
    p, q = a.primitive_part(), b.primitive_part()
    if p.degree < q.degree:
        p, q = q, p
    while not q.is_zero:
        r = _pseudo_rem(p, q).primitive_part()
        p, q = q, r
    return _normalize_gcd(p)


def x_power_minus_one(n: int) -> IntPolynomial:
    """X^n - 1."""
    if n < 1:
        raise ValueError("exponent must be positive")
    return IntPolynomial({n: 1, 0: -1})


def power_sum(n: int, d: int) -> IntPolynomial:
    """(X^n - 1)/(X^d - 1) = 1 + X^d + ... + X^(n-d), for d dividing n."""
    if d < 1 or n % d:
        raise ValueError("d must be a positive divisor of n")
    return IntPolynomial({k: 1 for k in range(0, n, d)})


class RationalFunction:
    """Quotient of integer polynomials in a unique reduced form.

    The numerator/denominator pair is divided by its polynomial gcd and by
    its joint integer content, and the denominator leading coefficient is
    made positive, so equality is plain structural equality.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: IntPolynomial, denominator: IntPolynomial):
        if denominator.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if numerator.is_zero:
            numerator, denominator = IntPolynomial(), IntPolynomial.one()
        else:
            g = poly_gcd(numerator, denominator)
            if g.degree > 0:
                numerator = exact_div(numerator, g)
                denominator = exact_div(denominator, g)
            c = gcd(numerator.content(), denominator.content())
            if c > 1:
                numerator = IntPolynomial({d: v // c for d, v in numerator.items()})
                denominator = IntPolynomial({d: v // c for d, v in denominator.items()})
            if denominator.leading_coefficient < 0:
                numerator = -numerator
                denominator = -denominator
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def to_text(self) -> str:
        return f"({self.numerator.to_text()})/({self.denominator.to_text()})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"


def parse_rational(text: str) -> RationalFunction:
    """Parse "(num)/(den)" in the to_text format."""
    m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
    if not m:
        raise InputFormatError(f"cannot parse rational function {text!r}")
    return RationalFunction(parse_polynomial(m.group(1)), parse_polynomial(m.group(2)))


# --- word encodings -------------------------------------------------------


def encode_poly(w: Word) -> IntPolynomial:
    """Polynomial encoding: letter at position k becomes the X^k coefficient."""
    return IntPolynomial({k: a for k, a in enumerate(w.letters)})


def encode_ratfun(w: Word) -> RationalFunction:
    """Reduced form of P(w)/(X^|w| - 1); undefined for the empty word."""
    if not w.letters:
        raise ValueError("the rational encoding needs a nonempty word")
    return RationalFunction(encode_poly(w), x_power_minus_one(len(w)))


def poly_concat_identity(ws) -> IntPolynomial:
    """Encoding of a concatenation built blockwise; self-checks the result.

    Computes sum_i P(w_i) X^(length of w_1..w_{i-1}) and verifies that it
    equals the direct encoding of the concatenated word.
    """
    total = IntPolynomial()
    offset = 0
    cat = []
    for w in ws:
        total = total + encode_poly(w).shift(offset)
        offset += len(w)
        cat.extend(w.letters)
    direct = encode_poly(Word(tuple(cat)))
    if total != direct:
        raise TheoremCheckError("blockwise encoding disagrees with direct encoding")
    return total


def primdiv_check(w: Word) -> bool:
    """True when no (X^|w|-1)/(X^d-1) with d a proper divisor divides P(w).

    A primitive word always yields True; when the check fails the word is
    verified to be a proper power (the quotient spells out the period).
    """
    if not w.letters:
        raise ValueError("primdiv_check needs a nonempty word")
    n = len(w)
    p = encode_poly(w)
    divisible = any(divides(power_sum(n, d), p) for d in range(1, n) if n % d == 0)
    if divisible and len(primitive_root(w)) == n:
        raise TheoremCheckError("a primitive word was divisible by a power-sum factor")
    return not divisible


@dataclass(frozen=True)
class FineWilfVerdict:
    """Outcome of a periodicity-agreement test for two words."""

    bound: int
    agreement: bool
    premise_holds: bool
    roots_equal: bool


def fine_wilf_check(u: Word, v: Word, prefix_len: int) -> FineWilfVerdict:
    """Compare the infinite repetitions of u and v on a prefix.

    The premise holds when the repetitions agree on at least
    |u| + |v| - gcd(|u|, |v|) letters; in that case equal primitive roots
    are guaranteed and verified.
    """
    if not u.letters or not v.letters:
        raise ValueError("fine_wilf_check needs nonempty words")
    if prefix_len < 0:
        raise ValueError("prefix length must be nonnegative")
    lu, lv = len(u), len(v)
    bound = lu + lv - gcd(lu, lv)
    agreement = all(u.letters[i % lu] == v.letters[i % lv] for i in range(prefix_len))
    premise = agreement and prefix_len >= bound
    roots_equal = primitive_root(u) == primitive_root(v)
    if premise and not roots_equal:
        raise TheoremCheckError("periodicity premise held but the roots differ")
    return FineWilfVerdict(bound, agreement, premise, roots_equal)
