"""Points of Sing_{n,m}, vanishing checks, the group action and two membership oracles."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .linalg import Echelon, identity, matmul, matadd, matscale
from .poly import Poly, PolyRing, numeric_determinant, qnorm, qstr


def _frac_matrix(rows) -> tuple[tuple, ...]:
    return tuple(tuple(qnorm(Fraction(v)) for v in r) for r in rows)


@dataclass(frozen=True)
class Tensor:
    """An m-tuple of n x n rational matrices."""

    slices: tuple

    def __post_init__(self):
        slices = tuple(_frac_matrix(s) for s in self.slices)
        if not slices:
            raise ValueError("tensor needs at least one slice")
        n = len(slices[0])
        for s in slices:
            if len(s) != n or any(len(r) != n for r in s):
                raise ValueError("all slices must be n x n with a common n")
        object.__setattr__(self, "slices", slices)

    @property
    def m(self) -> int:
        return len(self.slices)

    @property
    def n(self) -> int:
        return len(self.slices[0])

    @classmethod
    def zeros(cls, n: int, m: int) -> Tensor:
        return cls([[[0] * n for _ in range(n)] for _ in range(m)])

    def pencil(self, lam: Sequence) -> list[list]:
        """sum_k lam_k A_k."""
        out = [[0] * self.n for _ in range(self.n)]
        for c, A in zip(lam, self.slices):
            if c:
                out = matadd(out, matscale(c, A))
        return out

    def to_json(self) -> list:
        return [[[qstr(v) for v in row] for row in s] for s in self.slices]

    @classmethod
    def from_json(cls, data) -> Tensor:
        return cls([[[Fraction(v) for v in row] for row in s] for s in data])


@dataclass(frozen=True)
class GroupElement:
    """(U, V, W) in GL_m x GL_n x GL_n."""

    U: tuple
    V: tuple
    W: tuple

    def __post_init__(self):
        for name in ("U", "V", "W"):
            M = _frac_matrix(getattr(self, name))
            if any(len(r) != len(M) for r in M):
                raise ValueError(f"{name} must be square")
            if numeric_determinant(M) == 0:
                raise ValueError(f"{name} is not invertible")
            object.__setattr__(self, name, M)

    @classmethod
    def identity(cls, n: int, m: int) -> GroupElement:
        return cls(identity(m), identity(n), identity(n))

    def inverse(self) -> GroupElement:
        from .linalg import inverse

        return GroupElement(inverse(self.U), inverse(self.V), inverse(self.W))

    def to_json(self) -> dict:
        return {k: [[qstr(v) for v in r] for r in getattr(self, k)] for k in ("U", "V", "W")}


def act(g: GroupElement, T: Tensor) -> Tensor:
    """B_j = sum_i U[i][j] * (V A_i W)."""
    if len(g.U) != T.m or len(g.V) != T.n or len(g.W) != T.n:
        raise ValueError("group element and tensor shapes do not match")
    sandwiched = [matmul(matmul(g.V, A), g.W) for A in T.slices]
    out = []
    for j in range(T.m):
        B = [[0] * T.n for _ in range(T.n)]
        for i in range(T.m):
            c = g.U[i][j]
            if c:
                B = matadd(B, matscale(c, sandwiched[i]))
        out.append(B)
    return Tensor(out)


# ---------------------------------------------------------------------------
# sampling

NUM_BOUND = 10
DEN_BOUND = 10


def stream_rng(seed, *labels) -> random.Random:
    """Independent, reproducible stream for ``(seed, *labels)``.

    String seeds are hashed by ``random.Random`` with SHA-512, so streams do
    not depend on the order in which they are created.
    """
    return random.Random(":".join(str(x) for x in (seed, *labels)))


def random_rational(rng: random.Random, num_bound: int = NUM_BOUND, den_bound: int = DEN_BOUND):
    return qnorm(Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound)))


def random_matrix(rng: random.Random, rows: int, cols: int) -> list[list]:
    return [[random_rational(rng) for _ in range(cols)] for _ in range(rows)]


def random_invertible(rng: random.Random, n: int) -> list[list]:
    while True:
        M = random_matrix(rng, n, n)
        if numeric_determinant(M) != 0:
            return M


@dataclass(frozen=True)
class CompressionSpec:
    n: int
    m: int
    s: int
    seed: object = 0
    basis_change: tuple | None = None  # (P, Q); drawn from the seed when None

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        if not 0 <= self.s <= self.n - 1:
            raise ValueError(f"compression parameter s={self.s} outside 0..{self.n - 1}")
        if self.basis_change is not None:
            P, Q = self.basis_change
            if numeric_determinant(P) == 0 or numeric_determinant(Q) == 0:
                raise ValueError("basis change must be invertible")


def sample_sing(spec: CompressionSpec) -> Tensor:
    """Random point of the compression space with parameter ``s``.

    In adapted coordinates every slice is zero in rows s+1..n of columns
    1..s+1, so each slice maps span(e_1..e_{s+1}) into span(e_1..e_s) and every
    linear combination is singular.  The slices are then replaced by P A Q.
    """
    n, s = spec.n, spec.s
    rng = stream_rng(spec.seed, "sample", n, spec.m, s)
    if spec.basis_change is None:
        P, Q = random_invertible(rng, n), random_invertible(rng, n)
    else:
        P, Q = spec.basis_change
    slices = []
    for _ in range(spec.m):
        A = random_matrix(rng, n, n)
        for i in range(s, n):
            for j in range(s + 1):
                A[i][j] = 0
        slices.append(matmul(matmul(P, A), Q))
    return Tensor(slices)


def random_group_element(rng: random.Random, n: int, m: int) -> GroupElement:
    return GroupElement(random_invertible(rng, m), random_invertible(rng, n),
                        random_invertible(rng, n))


# ---------------------------------------------------------------------------
# evaluation

class PointEvaluator:
    """Exact evaluation of many polynomials at one tensor.

    Homogeneous polynomials are evaluated at the integer point D*T, where D
    clears all denominators; ``f(D*T) = D^deg f(T)``, so zero tests and signs
    are unaffected and the arithmetic stays in ``int``.
    """

    def __init__(self, ring: PolyRing, point: Tensor):
        if ring.n != point.n or ring.m != point.m:
            raise ValueError(f"tensor of shape (m={point.m}, n={point.n}) does not fit {ring!r}")
        values = [Fraction(point.slices[v.slice - 1][v.row - 1][v.col - 1]) for v in ring.variables]
        self.ring = ring
        self.values = values
        self.scale = math.lcm(*(v.denominator for v in values))
        self.int_values = [int(v * self.scale) for v in values]

    def value(self, f: Poly):
        return f.evaluate(self.values)

    def scaled_value(self, f: Poly):
        """f(D*T) for homogeneous f; same zero set and sign as f(T) up to D^deg."""
        vals = self.int_values
        total = 0
        for mon, c in f.termdict.items():
            total += c * math.prod(map(vals.__getitem__, mon))
        return total

    def is_zero(self, f: Poly) -> bool:
        if f.ring != self.ring:
            raise ValueError("polynomial ring does not match the tensor")
        if not f.is_homogeneous():
            return f.evaluate(self.values) == 0
        return self.scaled_value(f) == 0


@dataclass
class VanishResult:
    vanishes: bool
    first_failure: int | None = None
    witness: Poly | None = None
    value: object = None

    def __bool__(self):
        return self.vanishes


def vanish_check(S: Iterable[Poly], T: Tensor) -> VanishResult:
    """True iff every polynomial of ``S`` is exactly zero at ``T``."""
    ev = None
    for idx, f in enumerate(S):
        if ev is None:
            ev = PointEvaluator(f.ring, T)
        if not ev.is_zero(f):
            return VanishResult(False, idx, f, ev.value(f))
    return VanishResult(True)


# ---------------------------------------------------------------------------
# membership by exact linear algebra

def monomials_of_degree(nvars: int, d: int):
    for combo in combinations_with_replacement(range(nvars - 1, -1, -1), d):
        yield combo


class DegreeSpan:
    """Rational span of all products x^a * g (g in F) of a fixed total degree."""

    def __init__(self, F: Sequence[Poly], degree: int):
        F = [f for f in F if f]
        if not F:
            raise ValueError("empty generator list")
        if not all(f.is_homogeneous() for f in F):
            raise ValueError("degreewise membership needs homogeneous generators")
        self.ring = F[0].ring
        self.degree = degree
        self.echelon = Echelon()
        self.rows = 0
        nv = self.ring.ngens
        for f in F:
            k = degree - f.degree
            if k < 0:
                continue
            for mon in monomials_of_degree(nv, k):
                self.echelon.add(f.mul_term(1, mon).termdict)
                self.rows += 1

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def residual(self, f: Poly) -> Poly:
        return Poly(f.ring, self.echelon.residual(dict(f.termdict)))

    def contains(self, f: Poly) -> bool:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        if not f:
            return True
        if not f.is_homogeneous():
            raise ValueError("degreewise membership needs a homogeneous polynomial")
        if f.degree != self.degree:
            return False
        return self.echelon.contains(f.termdict)


def degreewise_membership(f: Poly, F: Sequence[Poly], d_target: int) -> bool:
    """Is ``f`` in the degree-``d_target`` component of the ideal generated by ``F``?"""
    if f and (not f.is_homogeneous() or f.degree != d_target):
        raise ValueError("f must be homogeneous of the target degree")
    return DegreeSpan(F, d_target).contains(f)


# ---------------------------------------------------------------------------
# randomized determinant identity testing

@dataclass
class DitVerdict:
    all_singular: bool
    witness: tuple | None
    trials: int
    determinant: object = 0

    @property
    def kind(self) -> str:
        return "AllSingular" if self.all_singular else "WitnessFound"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "witness": list(self.witness) if self.witness else None,
                "trials": self.trials,
                "determinant": qstr(self.determinant) if self.witness else None}


def dit_random(T: Tensor, trials: int, seed=0, coeff_bound: int = 100) -> DitVerdict:
    """Evaluate det(sum lam_i A_i) at random integer points until one is nonzero."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = stream_rng(seed, "dit")
    for t in range(1, trials + 1):
        lam = tuple(rng.randint(-coeff_bound, coeff_bound) for _ in range(T.m))
        det = numeric_determinant(T.pencil(lam))
        if det != 0:
            return DitVerdict(False, lam, t, det)
    return DitVerdict(True, None, trials)
