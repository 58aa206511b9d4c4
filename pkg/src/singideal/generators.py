"""Generator families for the vanishing ideal of singular matrix tuples."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb, prod
from typing import Iterator, NamedTuple, Sequence

from .poly import Minor, Poly, PolyMatrix, PolyRing, determinant, minors_of


class Family(str, Enum):
    QUADRIC = "Quadric"
    BLOCK_CUBIC = "BlockCubic"
    QUARTIC_PRODUCT = "QuarticProduct"
    FANO_MINOR = "FanoMinor"
    PRODUCT_EQUATION = "ProductEquation"


@dataclass
class GeneratorSet:
    family: Family
    params: dict
    elements: list[Poly]
    provenance: list = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def manifest(self) -> dict:
        ring = self.elements[0].ring if self.elements else None
        return {
            "family": self.family.value,
            "params": self.params,
            "count": len(self.elements),
            "ring": ring.describe() if ring is not None else None,
        }


class FlatteningMode(str, Enum):
    SLICE = "Slice"
    ROW_SIDE = "RowSide"
    COL_SIDE = "ColSide"


@dataclass(frozen=True)
class FlatteningSpec:
    mode: FlatteningMode
    n: int
    m: int


def _ring(n: int, m: int, ring: PolyRing | None) -> PolyRing:
    if ring is None:
        return PolyRing.matrices(n, m)
    if ring.n != n or ring.m != m:
        raise ValueError(f"ring {ring!r} does not match n={n}, m={m}")
    return ring


def _dedup(polys, provenance=None):
    seen = set()
    out, prov = [], []
    for idx, p in enumerate(polys):
        if p and p not in seen:
            seen.add(p)
            out.append(p)
            prov.append(provenance[idx] if provenance is not None else None)
    return out, prov


def det_pencil_generators(n: int, m: int, ring: PolyRing | None = None) -> GeneratorSet:
    """Coefficients of the lambda-monomials of det(lambda_1 X_1 + ... + lambda_m X_m).

    The determinant is multilinear in rows, so the coefficient of
    ``lambda^alpha`` is the sum, over all ways of assigning the slices of
    ``alpha`` to the rows, of the determinant whose row r is row r of the
    assigned slice.
    """
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    ring = _ring(n, m, ring)
    mats = [ring.matrix(k) for k in range(1, m + 1)]
    elements, prov = [], []
    for alpha in combinations_with_replacement(range(1, m + 1), n):
        total = ring.zero()
        for sigma in sorted(set(permutations(alpha))):
            rows = [mats[k - 1].entries[r] for r, k in enumerate(sigma)]
            total = total + determinant(PolyMatrix(rows))
        elements.append(total)
        prov.append({"lambda_monomial": list(alpha)})
    elements, prov = _dedup(elements, prov)
    return GeneratorSet(Family.QUADRIC, {"n": n, "m": m},
                        elements, prov)


def block_matrix(ring: PolyRing, i: int, j: int, k: int) -> PolyMatrix:
    """[[X_i, X_j], [X_k, 0]]."""
    return PolyMatrix.blocks([[ring.matrix(i), ring.matrix(j)], [ring.matrix(k), None]])


def block_cubics(m: int, ring: PolyRing | None = None) -> GeneratorSet:
    """3x3 minors of [[X_i, X_j], [X_k, 0]] over ordered distinct triples (n = 2)."""
    ring = _ring(2, m, ring)
    polys, prov = [], []
    for i, j, k in permutations(range(1, m + 1), 3):
        M = block_matrix(ring, i, j, k)
        for rows in combinations(range(4), 3):
            for cols in combinations(range(4), 3):
                p = determinant(M.submatrix(rows, cols))
                polys.append(p)
                prov.append({"triple": [i, j, k], "rows": list(rows), "cols": list(cols)})
    elements, prov = _dedup(polys, prov)
    return GeneratorSet(Family.BLOCK_CUBIC, {"n": 2, "m": m}, elements, prov)


def flattening(spec: FlatteningSpec, ring: PolyRing | None = None) -> PolyMatrix:
    n, m = spec.n, spec.m
    ring = _ring(n, m, ring)
    x = ring.x
    mode = FlatteningMode(spec.mode)
    if mode is FlatteningMode.SLICE:
        rows = [[x(k, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
                for k in range(1, m + 1)]
    elif mode is FlatteningMode.ROW_SIDE:
        rows = [[x(k, i, j) for k in range(1, m + 1) for j in range(1, n + 1)]
                for i in range(1, n + 1)]
    else:
        rows = [[x(k, i, j) for k in range(1, m + 1) for i in range(1, n + 1)]
                for j in range(1, n + 1)]
    return PolyMatrix(rows)


def column_pair_minors(T: PolyMatrix, a: int, b: int) -> list[Poly]:
    """2x2 minors of the two-column submatrix of ``T`` (1-based columns a, b)."""
    ca, cb = a - 1, b - 1
    out = []
    for p, q in combinations(range(T.rows), 2):
        out.append(T[p, ca] * T[q, cb] - T[q, ca] * T[p, cb])
    return out


def quartic_products(m: int, ring: PolyRing | None = None) -> GeneratorSet:
    """Products G12*G24 and G13*G34 of 2x2 minors of column pairs of T (n = 2)."""
    ring = _ring(2, m, ring)
    T = flattening(FlatteningSpec(FlatteningMode.SLICE, 2, m), ring)
    G = {ab: column_pair_minors(T, *ab) for ab in [(1, 2), (1, 3), (2, 4), (3, 4)]}
    polys, prov = [], []
    for left, right in [((1, 2), (2, 4)), ((1, 3), (3, 4))]:
        for gi, g in enumerate(G[left]):
            for hi, h in enumerate(G[right]):
                polys.append(g * h)
                prov.append({"pair": [f"G{left[0]}{left[1]}", f"G{right[0]}{right[1]}"],
                             "index": [gi, hi]})
    elements, prov = _dedup(polys, prov)
    return GeneratorSet(Family.QUARTIC_PRODUCT, {"n": 2, "m": m}, elements, prov)


def candidate_basis(m: int, ring: PolyRing | None = None) -> list[Poly]:
    """Quadrics, block cubics and quartic products for n = 2, each monic, deduplicated."""
    if m < 1:
        raise ValueError("m must be positive")
    ring = _ring(2, m, ring)
    out, seen = [], set()
    families = [det_pencil_generators(2, m, ring)]
    if m >= 3:
        families.append(block_cubics(m, ring))
    if m >= 2:
        families.append(quartic_products(m, ring))
    for fam in families:
        for p in fam.elements:
            p = p.monic()
            if p not in seen:
                seen.add(p)
                out.append(p)
    return out


def fano_minors(n: int, m: int, ring: PolyRing | None = None) -> GeneratorSet:
    """Minors of size n^2 - n + 1 of the slice flattening (empty if m is too small)."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    ring = _ring(n, m, ring)
    t = n * n - n + 1
    params = {"n": n, "m": m, "size": t}
    if m < t:
        return GeneratorSet(Family.FANO_MINOR, params, [], [])
    T = flattening(FlatteningSpec(FlatteningMode.SLICE, n, m), ring)
    minors = minors_of(T, t)
    return GeneratorSet(Family.FANO_MINOR, params, [mi.poly for mi in minors],
                        [{"rows": list(mi.rows), "cols": list(mi.cols)} for mi in minors])


class ProductEquation(NamedTuple):
    """g*h*k kept in factored form; expanding is optional."""

    factors: tuple[Minor, Minor, Minor]
    index: tuple[int, int, int]

    @property
    def degree(self) -> int:
        return sum(f.poly.degree for f in self.factors)

    def expand(self) -> Poly:
        g, h, k = (f.poly for f in self.factors)
        return g * h * k

    def evaluate(self, point):
        # evaluation is a ring homomorphism
        return prod(f.poly.evaluate(point) for f in self.factors)


class ProductFamily:
    """The three minor sets whose triple products vanish on singular tuples.

    ``slice_minors`` are the (n^2 - 2n + 3)-minors of the slice flattening,
    ``row_minors`` / ``col_minors`` the maximal minors of the two side
    flattenings.
    """

    def __init__(self, n: int, m: int, ring: PolyRing | None = None):
        self.n, self.m = n, m
        self.ring = _ring(n, m, ring)
        self.size = n * n - 2 * n + 3
        self.slice_minors = minors_of(
            flattening(FlatteningSpec(FlatteningMode.SLICE, n, m), self.ring), self.size)
        self.row_minors = minors_of(
            flattening(FlatteningSpec(FlatteningMode.ROW_SIDE, n, m), self.ring), n)
        self.col_minors = minors_of(
            flattening(FlatteningSpec(FlatteningMode.COL_SIDE, n, m), self.ring), n)

    @property
    def sizes(self) -> tuple[int, int, int]:
        return len(self.slice_minors), len(self.row_minors), len(self.col_minors)

    def __len__(self):
        return prod(self.sizes)

    def at(self, a: int, b: int, c: int) -> ProductEquation:
        return ProductEquation((self.slice_minors[a], self.row_minors[b], self.col_minors[c]),
                               (a, b, c))

    def __iter__(self) -> Iterator[ProductEquation]:
        for a, b, c in product(*(range(s) for s in self.sizes)):
            yield self.at(a, b, c)

    def sample(self, rng: random.Random, count: int | None = None) -> Iterator[ProductEquation]:
        sa, sb, sc = self.sizes
        drawn = 0
        while count is None or drawn < count:
            yield self.at(rng.randrange(sa), rng.randrange(sb), rng.randrange(sc))
            drawn += 1


def product_equations(n: int, m: int, sampler: random.Random | None = None,
                      count: int | None = None, ring: PolyRing | None = None
                      ) -> Iterator[ProductEquation]:
    """Stream of products g*h*k of degree n^2 + 3.

    Index order without ``sampler``; otherwise uniform draws of triples.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if m < n * n - 2 * n + 3:
        warnings.warn(f"m={m} is below n^2-2n+3={n * n - 2 * n + 3}; no product equations",
                      stacklevel=2)
        return iter(())
    family = ProductFamily(n, m, ring)
    if sampler is None:
        return iter(family) if count is None else (e for e, _ in zip(family, range(count)))
    return family.sample(sampler, count)


def expected_family_sizes(n: int, m: int) -> dict:
    """Closed-form counts, used in manifests and sanity checks."""
    t = n * n - n + 1
    s = n * n - 2 * n + 3
    return {
        "pencil": comb(m + n - 1, n),
        "fano_minors": comb(m, t) * comb(n * n, t) if m >= t else 0,
        "product_slice": comb(m, s) * comb(n * n, s) if m >= s else 0,
        "product_side": comb(m * n, n),
    }
