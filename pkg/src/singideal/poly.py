"""Sparse multivariate polynomials over Q in graded reverse lexicographic order.

A monomial is a tuple of variable indices sorted in *descending* index order,
with repetition for exponents; index 0 is the greatest variable.  With that
encoding degrevlex on monomials of equal degree is plain reversed tuple
comparison: ``a > b`` iff ``a < b`` as tuples.  ``monomial_key`` turns this
into a sort key where smaller means greater in the monomial order.

Coefficients are Python ints or ``fractions.Fraction``; integral fractions are
always stored as ints so that integer-coefficient work never pays for
``Fraction`` overhead.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

Monomial = tuple  # descending tuple of variable indices


class RingMismatchError(ValueError):
    pass


class VarId(NamedTuple):
    slice: int
    row: int
    col: int

    def __str__(self) -> str:
        return f"x[{self.slice}][{self.row}][{self.col}]"


def qnorm(c):
    """Normalize an exact rational: integral values become ``int``."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return qnorm(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return qnorm(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def qdiv(a, b):
    if b == 1:
        return a
    if b == -1:
        return -a
    return qnorm(Fraction(a) / b)


def qstr(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# monomial helpers

def monomial_key(a: Monomial):
    return (-len(a), a)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    if len(a) > len(b):
        return False
    ca = Counter(a)
    cb = Counter(b)
    return all(cb[v] >= e for v, e in ca.items())


def monomial_div(b: Monomial, a: Monomial) -> Monomial:
    """Quotient ``b / a``; assumes ``a`` divides ``b``."""
    rest = Counter(b)
    rest.subtract(a)
    return tuple(sorted(rest.elements(), reverse=True))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted((Counter(a) | Counter(b)).elements(), reverse=True))


def monomial_coprime(a: Monomial, b: Monomial) -> bool:
    return set(a).isdisjoint(b)


def is_squarefree(a: Monomial) -> bool:
    return len(set(a)) == len(a)


def submonomials(a: Monomial, degree: int) -> Iterator[Monomial]:
    return combinations(a, degree)


# ---------------------------------------------------------------------------

class PolyRing:
    """Polynomial ring over Q whose variables are listed greatest first."""

    def __init__(self, variables: Sequence, n: int | None = None, m: int | None = None,
                 order_name: str = "custom"):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.n = n
        self.m = m
        self.order_name = order_name

    @classmethod
    def matrices(cls, n: int, m: int, within: str | Sequence[tuple[int, int]] = "row") -> PolyRing:
        """Ring on the entries of ``m`` generic ``n x n`` matrices.

        All entries of slice k are greater than those of slice k+1.  Inside a
        slice the order is row-major (``within="row"``), column-major
        (``"col"``) or an explicit list of ``(row, col)`` positions.
        """
        if n < 1 or m < 1:
            raise ValueError("n and m must be positive")
        if within == "row":
            cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
            name = "row-major"
        elif within == "col":
            cells = [(i, j) for j in range(1, n + 1) for i in range(1, n + 1)]
            name = "col-major"
        else:
            cells = [tuple(c) for c in within]
            if sorted(cells) != [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]:
                raise ValueError("within-matrix order must list every cell exactly once")
            name = "cells:" + ",".join(f"{i}{j}" for i, j in cells)
        variables = [VarId(k, i, j) for k in range(1, m + 1) for (i, j) in cells]
        return cls(variables, n=n, m=m, order_name=name)

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return self is other or (isinstance(other, PolyRing) and self.variables == other.variables)

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        if self.n is not None:
            return f"PolyRing.matrices(n={self.n}, m={self.m}, order={self.order_name!r})"
        return f"PolyRing({list(self.variables)!r})"

    def describe(self) -> dict:
        return {
            "order": "degrevlex",
            "n": self.n,
            "m": self.m,
            "within_matrix": self.order_name,
            "variables": [str(v) for v in self.variables],
        }

    # constructors -----------------------------------------------------
    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {(): 1})

    def const(self, c) -> Poly:
        c = qnorm(c)
        return Poly(self, {(): c} if c else {})

    def gen(self, v) -> Poly:
        return Poly(self, {(self.index[v],): 1})

    def x(self, k: int, i: int, j: int) -> Poly:
        return self.gen(VarId(k, i, j))

    def gens(self) -> list[Poly]:
        return [Poly(self, {(i,): 1}) for i in range(self.ngens)]

    def matrix(self, k: int) -> PolyMatrix:
        """The generic matrix ``X^(k)``."""
        n = self.n
        return PolyMatrix([[self.x(k, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])

    def monomial(self, exponents: Mapping) -> Monomial:
        idx = []
        for v, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent")
            idx.extend([self.index[v]] * e)
        return tuple(sorted(idx, reverse=True))

    def exponents(self, mon: Monomial) -> dict:
        return {self.variables[i]: e for i, e in sorted(Counter(mon).items())}

    def var_name(self, i: int) -> str:
        return str(self.variables[i])

    def format_monomial(self, mon: Monomial) -> str:
        parts = []
        for i, e in sorted(Counter(mon).items()):
            parts.append(self.var_name(i) + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> Poly:
        return parse_poly(self, text)


def _check_ring(f: Poly, g: Poly):
    if f.ring is not g.ring and f.ring != g.ring:
        raise RingMismatchError("polynomials live in different rings")


class Poly:
    """Immutable sparse polynomial.  ``terms`` is the canonical descending list."""

    __slots__ = ("ring", "_d", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object] | None = None,
                 _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._d = terms
        else:
            d = {}
            for mon, c in (terms or {}).items():
                c = qnorm(c)
                if c:
                    d[tuple(sorted(mon, reverse=True))] = c
            self._d = d
        self._sorted = None
        self._hash = None

    # canonical views -------------------------------------------------
    @property
    def termdict(self) -> Mapping[Monomial, object]:
        return self._d

    @property
    def terms(self) -> list[tuple[object, Monomial]]:
        if self._sorted is None:
            self._sorted = [(self._d[mon], mon) for mon in sorted(self._d, key=monomial_key)]
        return self._sorted

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    @property
    def lm(self) -> Monomial:
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        if self._sorted is not None:
            return self._sorted[0][1]
        return min(self._d, key=monomial_key)

    @property
    def lc(self):
        return self._d[self.lm]

    @property
    def degree(self) -> int | None:
        if not self._d:
            return None
        return max(len(mon) for mon in self._d)

    def is_homogeneous(self) -> bool:
        return len({len(mon) for mon in self._d}) <= 1

    def monic(self) -> Poly:
        lc = self.lc
        if lc == 1:
            return self
        return Poly(self.ring, {mon: qdiv(c, lc) for mon, c in self._d.items()}, _trusted=True)

    def variables_used(self) -> set[int]:
        out = set()
        for mon in self._d:
            out.update(mon)
        return out

    def slices_used(self) -> set[int]:
        return {self.ring.variables[i].slice for i in self.variables_used()}

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            _check_ring(self, other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._d)
        for mon, c in other._d.items():
            v = d.get(mon, 0) + c
            if v:
                d[mon] = qnorm(v)
            else:
                d.pop(mon, None)
        return Poly(self.ring, d, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {mon: -c for mon, c in self._d.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> Poly:
        c = qnorm(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {mon: qnorm(v * c) for mon, v in self._d.items()}, _trusted=True)

    def mul_term(self, c, mon: Monomial) -> Poly:
        return Poly(self.ring, {monomial_mul(m, mon): qnorm(v * c) for m, v in self._d.items()},
                    _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        _check_ring(self, other)
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                mon = monomial_mul(m1, m2)
                d[mon] = d.get(mon, 0) + c1 * c2
        return Poly(self.ring, {mon: qnorm(c) for mon, c in d.items() if c}, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == ({(): qnorm(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    # evaluation -------------------------------------------------------
    def evaluate(self, point) -> Fraction | int:
        """Exact value at ``point``.

        ``point`` is a ``Tensor`` for matrix rings, or any sequence / mapping
        giving a value for each variable index.
        """
        values = point_values(self.ring, point)
        total = 0
        for mon, c in self._d.items():
            total += c * math.prod(map(values.__getitem__, mon))
        return qnorm(total)

    # text ---------------------------------------------------------------
    def serialize(self) -> str:
        """Canonical text: descending terms, ``num/den`` coefficients."""
        if not self._d:
            return "0"
        ring = self.ring
        out = []
        for c, mon in self.terms:
            parts = [qstr(c)]
            for i, e in sorted(Counter(mon).items()):
                v = ring.variables[i]
                parts.append(f"{v}^{e}")
            out.append("*".join(parts))
        return " + ".join(out)

    def __str__(self):
        if not self._d:
            return "0"
        out = []
        for c, mon in self.terms:
            body = self.ring.format_monomial(mon)
            if body == "1":
                s = str(c)
            elif c == 1:
                s = body
            elif c == -1:
                s = "-" + body
            else:
                s = f"{c}*{body}"
            out.append(s)
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


def point_values(ring: PolyRing, point) -> Sequence:
    if hasattr(point, "slices"):
        if ring.n is None or point.n != ring.n or point.m != ring.m:
            raise ValueError(f"tensor of shape (m={point.m}, n={point.n}) does not fit {ring!r}")
        return [point.slices[v.slice - 1][v.row - 1][v.col - 1] for v in ring.variables]
    if isinstance(point, Mapping):
        return [point[v] for v in ring.variables]
    if len(point) != ring.ngens:
        raise ValueError("point has wrong number of coordinates")
    return point


_TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)((?:\*x\[\d+\]\[\d+\]\[\d+\]\^\d+)*)\s*$")
_FACTOR = re.compile(r"x\[(\d+)\]\[(\d+)\]\[(\d+)\]\^(\d+)")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Inverse of ``Poly.serialize`` for matrix rings."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    d = {}
    for chunk in text.split(" + "):
        mt = _TERM.match(chunk)
        if not mt:
            raise ValueError(f"cannot parse term {chunk!r}")
        coef = Fraction(mt.group(1))
        exps = {}
        for k, i, j, e in _FACTOR.findall(mt.group(2)):
            exps[VarId(int(k), int(i), int(j))] = int(e)
        mon = ring.monomial(exps)
        if mon in d:
            raise ValueError("repeated monomial in serialized polynomial")
        d[mon] = coef
    return Poly(ring, d)


def compare_monomials(a: Poly, b: Poly) -> int:
    """Degrevlex comparison of two monomials given as single-term polynomials.

    Returns 1, 0 or -1 for Greater, Equal, Less.
    """
    _check_ring(a, b)
    if len(a) != 1 or len(b) != 1:
        raise ValueError("compare_monomials expects single-term polynomials")
    ka, kb = monomial_key(a.lm), monomial_key(b.lm)
    return (ka < kb) - (ka > kb)


# ---------------------------------------------------------------------------
# matrices

class PolyMatrix:
    """Dense rectangular grid of polynomials over one ring."""

    def __init__(self, entries: Sequence[Sequence[Poly]]):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        ring = rows[0][0].ring
        for r in rows:
            for e in r:
                if e.ring != ring:
                    raise RingMismatchError("matrix entries live in different rings")
        self.entries = rows
        self.rows = len(rows)
        self.cols = cols
        self.ring = ring

    @classmethod
    def from_numbers(cls, ring: PolyRing, values) -> PolyMatrix:
        return cls([[ring.const(v) for v in row] for row in values])

    @classmethod
    def blocks(cls, grid: Sequence[Sequence[PolyMatrix | None]]) -> PolyMatrix:
        """Assemble a block matrix; ``None`` blocks are zero."""
        ring = next(b.ring for row in grid for b in row if b is not None)
        heights = [next(b.rows for b in row if b is not None) for row in grid]
        widths = [next(grid[r][c].cols for r in range(len(grid)) if grid[r][c] is not None)
                  for c in range(len(grid[0]))]
        out = []
        for r, row in enumerate(grid):
            for i in range(heights[r]):
                line = []
                for c, b in enumerate(row):
                    if b is None:
                        line.extend(ring.zero() for _ in range(widths[c]))
                    else:
                        line.extend(b.entries[i])
                out.append(line)
        return cls(out)

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def transpose(self) -> PolyMatrix:
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            line = []
            for j in range(other.cols):
                acc = self.ring.zero()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                line.append(acc)
            out.append(line)
        return PolyMatrix(out)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        return PolyMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def serialize(self) -> list[list[str]]:
        return [[e.serialize() for e in row] for row in self.entries]


def determinant(M: PolyMatrix) -> Poly:
    """Exact determinant by Laplace expansion with column-subset memoization.

    Rows are consumed top to bottom; ``table[mask]`` holds the determinant of
    the leading ``popcount(mask)`` rows restricted to the columns in ``mask``.
    """
    if M.rows != M.cols:
        raise ValueError(f"determinant of non-square {M.rows}x{M.cols} matrix")
    k = M.rows
    ring = M.ring
    table = {0: ring.one()}
    for r in range(k):
        row = M.entries[r]
        nxt = {}
        for mask, sub in table.items():
            if not sub:
                continue
            for c in range(k):
                bit = 1 << c
                if mask & bit or not row[c]:
                    continue
                # sign of the cofactor: columns of the new mask greater than c
                sign = -1 if bin(mask >> (c + 1)).count("1") & 1 else 1
                term = sub * row[c]
                new = mask | bit
                acc = nxt.get(new)
                term = term if sign > 0 else -term
                nxt[new] = term if acc is None else acc + term
        table = nxt
    return table.get((1 << k) - 1, ring.zero())


class Minor(NamedTuple):
    poly: Poly
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def minors_of(M: PolyMatrix, t: int) -> list[Minor]:
    """All nonzero ``t x t`` minors, deduplicated, with (rows, cols) provenance.

    Indices in the provenance are 0-based.  The first submatrix producing a
    given polynomial wins.
    """
    if t < 1 or t > min(M.rows, M.cols):
        raise ValueError(f"minor size {t} out of range for {M.rows}x{M.cols} matrix")
    seen = set()
    out = []
    for rows in combinations(range(M.rows), t):
        for cols in combinations(range(M.cols), t):
            p = determinant(M.submatrix(rows, cols))
            if p and p not in seen:
                seen.add(p)
                out.append(Minor(p, rows, cols))
    return out


def numeric_determinant(rows: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant of a numeric matrix by fraction-free (Bareiss) elimination."""
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("determinant of non-square matrix")
    if k == 0:
        return 1
    den = 1
    for r in rows:
        for v in r:
            den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    a = [[int(Fraction(v) * den) for v in r] for r in rows]
    sign = 1
    prev = 1
    for p in range(k - 1):
        if a[p][p] == 0:
            swap = next((r for r in range(p + 1, k) if a[r][p] != 0), None)
            if swap is None:
                return 0
            a[p], a[swap] = a[swap], a[p]
            sign = -sign
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return qnorm(Fraction(sign * a[k - 1][k - 1], den ** k))


def generic_ring(names: Iterable[str]) -> PolyRing:
    """Ring with plain named variables, greatest first (for small examples)."""
    return PolyRing(list(names))

