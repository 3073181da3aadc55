"""Word equations, their coefficient polynomials and exact matrix rank.

Fixing a length type turns a word equation into a linear equation over
the field of rational functions: each unknown gets a coefficient
polynomial built from its occurrence positions.  The rank of the
resulting coefficient matrix is computed exactly with fraction-free
elimination.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputFormatError, TheoremCheckError
from .polynomials import IntPolynomial, encode_poly, exact_div
from .words import (
    LengthType,
    Morphism,
    Word,
    combinatorial_rank,
    default_names,
    resolve_unknown,
    words_of_length,
)


@dataclass(frozen=True)
class Equation:
    """A pair of words over the unknowns x_1..x_n, compared as lhs = rhs."""

    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if self.n < 1:
            raise ValueError("an equation needs at least one unknown")
        for x in self.lhs + self.rhs:
            if not isinstance(x, int) or x < 1 or x > self.n:
                raise ValueError(f"unknown index {x!r} out of range 1..{self.n}")

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    @property
    def length(self) -> int:
        return len(self.lhs) + len(self.rhs)

    def count(self, x: int) -> int:
        """Occurrences of an unknown on both sides together."""
        return self.lhs.count(x) + self.rhs.count(x)

    def holds_for(self, h: Morphism) -> bool:
        return h.apply(self.lhs) == h.apply(self.rhs)

    def swapped(self) -> "Equation":
        return Equation(self.rhs, self.lhs, self.n)

    def to_text(self, names: list[str] | None = None) -> str:
        names = names or default_names(self.n)
        left = " ".join(names[x - 1] for x in self.lhs) if self.lhs else "eps"
        right = " ".join(names[x - 1] for x in self.rhs) if self.rhs else "eps"
        return f"{left} = {right}"

    def __str__(self):
        return self.to_text()


def q_polynomial(eq: Equation, x: int, lt: LengthType) -> IntPolynomial:
    """Positional coefficient of an unknown at a fixed length type.

    Sum of X^(image length of the strict prefix) over the occurrences of
    x on the left side, minus the same sum over the right side.
    """
    if len(lt) != eq.n:
        raise ValueError("length type size does not match the unknown count")
    out: dict[int, int] = {}
    for side, sign in ((eq.lhs, 1), (eq.rhs, -1)):
        pos = 0
        for y in side:
            if y == x:
                s = out.get(pos, 0) + sign
                if s:
                    out[pos] = s
                elif pos in out:
                    del out[pos]
            pos += lt[y - 1]
    return IntPolynomial(out)


def residual(eq: Equation, h: Morphism) -> IntPolynomial:
    """Coefficient-weighted sum of the encoded images; zero iff h solves eq."""
    lt = h.length_type()
    total = IntPolynomial()
    for x in range(1, eq.n + 1):
        q = q_polynomial(eq, x, lt)
        if not q.is_zero:
            total = total + q * encode_poly(h.image(x))
    return total


@dataclass(frozen=True)
class PolyMatrix:
    """Rectangular matrix of integer polynomials."""

    entries: tuple[tuple[IntPolynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged polynomial matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        return rank_polymatrix(self)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix dimensions do not match")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = IntPolynomial()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(tuple(out))

    def apply(self, vector) -> tuple[IntPolynomial, ...]:
        """Matrix-vector product over polynomial entries."""
        vec = tuple(vector)
        if len(vec) != self.cols:
            raise ValueError("vector size does not match")
        out = []
        for row in self.entries:
            acc = IntPolynomial()
            for a, b in zip(row, vec):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def evaluate(self, x) -> tuple[tuple, ...]:
        return tuple(tuple(p.evaluate(x) for p in row) for row in self.entries)

    def to_text(self) -> str:
        return "\n".join("[" + ", ".join(p.to_text() for p in row) + "]" for row in self.entries)


def coefficient_matrix(system, lt: LengthType) -> PolyMatrix:
    """Row per equation, column per unknown, of positional coefficients."""
    system = list(system)
    if not system:
        raise ValueError("empty system")
    n = system[0].n
    if any(eq.n != n for eq in system):
        raise ValueError("equations disagree on the number of unknowns")
    if len(lt) != n:
        raise ValueError("length type size does not match the unknown count")
    return PolyMatrix(
        tuple(tuple(q_polynomial(eq, x, lt) for x in range(1, n + 1)) for eq in system)
    )


def _pivot_weight(p: IntPolynomial):
    return (p.degree, len(p._coeffs), sum(abs(c) for c in p._coeffs.values()))


def rank_polymatrix(matrix: PolyMatrix) -> int:
    """Exact rank over the field of rational functions.

    Fraction-free elimination: rows are cross-multiplied against the
    pivot row, divided exactly by the previous pivot when possible
    (classic Bareiss step) and stripped of integer content otherwise.
    Row scalings by nonzero polynomials leave the rank unchanged.
    """
    rows = [[p for p in row] for row in matrix.entries]
    rows = [r for r in rows if any(not p.is_zero for p in r)]
    for r in rows:
        g = 0
        for p in r:
            g = gcd(g, p.content())
        if g > 1:
            for j, p in enumerate(r):
                r[j] = IntPolynomial({d: c // g for d, c in p.items()})
    ncols = matrix.cols
    rank = 0
    col_of = list(range(ncols))
    prev = IntPolynomial.one()
    while rows:
        # pick the lowest-weight nonzero entry as pivot
        best = None
        for i, row in enumerate(rows):
            for j in range(rank, ncols):
                p = row[col_of[j]]
                if not p.is_zero:
                    w = _pivot_weight(p)
                    if best is None or w < best[0]:
                        best = (w, i, j)
        if best is None:
            break
        _, pi, pj = best
        rows[0], rows[pi] = rows[pi], rows[0]
        col_of[rank], col_of[pj] = col_of[pj], col_of[rank]
        pivot_row = rows[0]
        pivot = pivot_row[col_of[rank]]
        remaining = []
        for row in rows[1:]:
            factor = row[col_of[rank]]
            new = []
            for j in range(rank + 1, ncols):
                c = col_of[j]
                new.append(pivot * row[c] - factor * pivot_row[c])
            try:
                new = [exact_div(p, prev) for p in new]
            except ArithmeticError:
                g = 0
                for p in new:
                    g = gcd(g, p.content())
                if g > 1:
                    new = [IntPolynomial({d: cc // g for d, cc in p.items()}) for p in new]
            if any(not p.is_zero for p in new):
                filled = [IntPolynomial()] * ncols
                for j, p in zip(range(rank + 1, ncols), new):
                    filled[col_of[j]] = p
                remaining.append(filled)
        rank += 1
        prev = pivot
        rows = remaining
    return rank


def rational_matrix_rank(rows) -> int:
    """Rank of a matrix with integer or Fraction entries, by exact elimination."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_by_evaluation(matrix: PolyMatrix, point: int) -> int:
    """Rank of the matrix after substituting an integer for X.

    Always at most the symbolic rank; used as an independent cross-check
    of rank_polymatrix, not on the production path.
    """
    return rational_matrix_rank(matrix.evaluate(point))


def _morphisms_of_length_type(lt: LengthType, alphabet):
    pools = [list(words_of_length(alphabet, k)) for k in lt]
    for combo in itertools.product(*pools):
        yield combo


def rank_theorem_check(system, lt: LengthType, solutions, alphabet=(1, 2)) -> dict:
    """Check the rank bound of the coefficient matrix against known solutions.

    For every supplied solution of combinatorial rank r the matrix rank
    must be at most n - r.  When the matrix rank is 1, at most one length
    is zero and all equations are nontrivial, all equations must have
    identical solution sets of this length type; that part is verified by
    exhausting the morphisms of the given length type over the alphabet.
    """
    system = list(system)
    n = system[0].n
    matrix = coefficient_matrix(system, lt)
    matrix_rank = rank_polymatrix(matrix)
    ranks = []
    for h in solutions:
        if h.length_type() != lt:
            raise ValueError("a supplied solution has the wrong length type")
        for eq in system:
            if not eq.holds_for(h):
                raise ValueError("a supplied morphism does not solve the system")
        r = combinatorial_rank(h, n)
        ranks.append(r)
        if matrix_rank > n - r:
            raise TheoremCheckError(
                f"matrix rank {matrix_rank} exceeds {n} - {r} for a rank-{r} solution",
                report={"matrix_rank": matrix_rank, "solution_rank": r},
            )
    report = {
        "matrix_rank": matrix_rank,
        "solution_ranks": ranks,
        "rank_bound_ok": True,
    }
    zeros = sum(1 for v in lt if v == 0)
    applicable = matrix_rank == 1 and zeros <= 1 and all(not e.is_trivial for e in system)
    claim2 = {"applicable": applicable}
    if applicable:
        candidates = 1
        for v in lt:
            candidates *= len(alphabet) ** v
        if candidates > 10**6:
            raise ValueError("length type too large for exhaustive comparison")
        sets = []
        for eq in system:
            sols = set()
            for images in _morphisms_of_length_type(lt, alphabet):
                h = Morphism(tuple(Word(w) for w in images))
                if eq.holds_for(h):
                    sols.add(images)
            sets.append(sols)
        equal = all(s == sets[0] for s in sets[1:])
        claim2["solution_sets_equal"] = equal
        claim2["set_size"] = len(sets[0])
        if not equal:
            raise TheoremCheckError(
                "rank-1 matrix but per-equation solution sets differ",
                report={"sizes": [len(s) for s in sets]},
            )
    report["same_solution_sets"] = claim2
    return report


# --- text formats ---------------------------------------------------------

_INDEXED = re.compile(r"x(\d+)")


def _tokenize_side(side: str, lineno: int) -> list[str]:
    side = side.strip()
    if not side or side == "eps":
        return []
    if any(ch.isspace() for ch in side):
        return side.split()
    if re.fullmatch(r"(?:x\d+)+", side):
        return ["x" + i for i in _INDEXED.findall(side)]
    if side.isalpha():
        return list(side)
    raise InputFormatError(f"line {lineno}: cannot tokenize side {side!r}")


def parse_system(text: str):
    """Parse a system, one equation per line, with an optional name header.

    Returns (equations, names).  Unknowns are either indexed tokens
    x1..xn or single letters declared by a leading "unknowns: x y z"
    line; compact sides like "xyz" split into letters.
    """
    names: list[str] | None = None
    raw_eqs: list[tuple[int, list[str], list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("unknowns:"):
            if raw_eqs:
                raise InputFormatError(f"line {lineno}: unknown declaration after equations")
            names = line[len("unknowns:") :].split()
            if not names:
                raise InputFormatError(f"line {lineno}: empty unknown declaration")
            continue
        if "=" not in line:
            raise InputFormatError(f"line {lineno}: missing '=' in equation {raw!r}")
        left, right = line.split("=", 1)
        raw_eqs.append((lineno, _tokenize_side(left, lineno), _tokenize_side(right, lineno)))
    if not raw_eqs:
        raise InputFormatError("no equations found")
    all_tokens = [t for _, l, r in raw_eqs for t in l + r]
    if names is None:
        if all(re.fullmatch(r"x\d+", t) for t in all_tokens):
            indices = [int(t[1:]) for t in all_tokens]
            if indices and min(indices) < 1:
                raise InputFormatError("unknown indices start at 1")
            names = default_names(max(indices) if indices else 1)
        else:
            letters = sorted({t for t in all_tokens})
            if any(len(t) != 1 for t in letters):
                raise InputFormatError(
                    "mixed unknown styles; declare names with an 'unknowns:' line"
                )
            names = letters
    n = len(names)
    lines = text.splitlines()
    equations = []
    for lineno, left, right in raw_eqs:
        raw = lines[lineno - 1]

        def resolve(token):
            try:
                return resolve_unknown(token, names)
            except InputFormatError as exc:
                col = raw.find(token) + 1
                raise InputFormatError(f"line {lineno}, column {col}: {exc}") from None

        lhs = tuple(resolve(t) for t in left)
        rhs = tuple(resolve(t) for t in right)
        if max(lhs + rhs, default=1) > n:
            raise InputFormatError(f"line {lineno}: unknown index exceeds declared count")
        equations.append(Equation(lhs, rhs, n))
    return equations, names


def parse_equation(text: str):
    """Parse a single equation; returns (equation, names)."""
    eqs, names = parse_system(text)
    if len(eqs) != 1:
        raise InputFormatError(f"expected one equation, found {len(eqs)}")
    return eqs[0], names


def system_to_text(system, names: list[str] | None = None) -> str:
    return "\n".join(eq.to_text(names) for eq in system)
