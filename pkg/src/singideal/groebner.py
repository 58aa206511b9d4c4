"""Division, S-polynomials, Buchberger's algorithm and the criterion check."""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .poly import (
    Monomial,
    Poly,
    RingMismatchError,
    is_squarefree,
    monomial_coprime,
    monomial_divides,
    monomial_key,
    monomial_lcm,
    monomial_mul,
    qnorm,
)


class Reducer:
    """Multivariate division against a fixed, growable list of polynomials.

    The divisor for a monomial is the first basis element, in list order,
    whose leading monomial divides it.  Candidates are found by enumerating
    sub-monomials of the degrees that occur among the leading monomials and
    looking them up in a dict, which is much cheaper than scanning the basis
    when it holds thousands of elements of small degree.
    """

    def __init__(self, basis: Sequence[Poly] = ()):
        self.ring = None
        self.lms: list[Monomial] = []
        self.tails: list[list[tuple[Monomial, object]]] = []
        self._first: dict[Monomial, int] = {}
        self._degrees: list[int] = []
        self._cache: dict[Monomial, int] = {}
        for g in basis:
            self.append(g)

    def __len__(self):
        return len(self.lms)

    def append(self, g: Poly) -> int:
        if not g:
            raise ValueError("zero polynomial in division basis")
        if self.ring is None:
            self.ring = g.ring
        elif g.ring != self.ring:
            raise RingMismatchError("basis polynomials live in different rings")
        g = g.monic()
        terms = g.terms
        lm = terms[0][1]
        idx = len(self.lms)
        self.lms.append(lm)
        self.tails.append([(mon, c) for c, mon in terms[1:]])
        if lm not in self._first:
            self._first[lm] = idx
            if len(lm) not in self._degrees:
                self._degrees.append(len(lm))
                self._degrees.sort()
            # cached misses may now have a divisor
            self._cache.clear()
        return idx

    def divisor(self, mon: Monomial) -> int:
        """Index of the first basis element whose LM divides ``mon``, or -1."""
        hit = self._cache.get(mon)
        if hit is not None:
            return hit
        first = self._first
        best = -1
        size = len(mon)
        for d in self._degrees:
            if d > size:
                break
            if d == size:
                j = first.get(mon)
                if j is not None and (best < 0 or j < best):
                    best = j
                continue
            for sub in combinations(mon, d):
                j = first.get(sub)
                if j is not None and (best < 0 or j < best):
                    best = j
        if len(self._cache) > 2_000_000:
            self._cache.clear()
        self._cache[mon] = best
        return best

    def reduce_terms(self, p: dict) -> dict:
        """Full remainder of the term dict ``p`` (consumed) modulo the basis."""
        heap = [(-len(mon), mon) for mon in p]
        heapq.heapify(heap)
        rem = {}
        push = heapq.heappush
        pop = heapq.heappop
        tails = self.tails
        lms = self.lms
        divisor = self.divisor
        while heap:
            mon = pop(heap)[1]
            c = p.pop(mon, 0)
            if not c:
                continue
            j = divisor(mon)
            if j < 0:
                rem[mon] = c
                continue
            q = _quotient(mon, lms[j])
            for gm, gc in tails[j]:
                nm = tuple(sorted(gm + q, reverse=True)) if q else gm
                old = p.get(nm)
                if old is None:
                    p[nm] = -c * gc
                    push(heap, (-len(nm), nm))
                else:
                    v = old - c * gc
                    if v:
                        p[nm] = v
                    else:
                        del p[nm]
        return rem

    def normal_form(self, f: Poly) -> Poly:
        if self.ring is not None and f.ring != self.ring:
            raise RingMismatchError("polynomial and basis live in different rings")
        rem = self.reduce_terms(dict(f.termdict))
        return Poly(f.ring, {m: qnorm(c) for m, c in rem.items()}, _trusted=True)

    def spoly_terms(self, i: int, j: int) -> dict:
        """Term dict of the S-polynomial of basis elements ``i`` and ``j``."""
        a, b = self.lms[i], self.lms[j]
        lcm = monomial_lcm(a, b)
        u = _quotient(lcm, a)
        v = _quotient(lcm, b)
        d: dict = {}
        for mon, c in self.tails[i]:
            d[monomial_mul(mon, u)] = c
        for mon, c in self.tails[j]:
            nm = monomial_mul(mon, v)
            val = d.get(nm, 0) - c
            if val:
                d[nm] = val
            else:
                d.pop(nm, None)
        return d


def _quotient(b: Monomial, a: Monomial) -> Monomial:
    # a divides b; both descending tuples
    if len(a) == len(b):
        return ()
    out = list(b)
    for v in a:
        out.remove(v)
    return tuple(out)


# ---------------------------------------------------------------------------

def s_polynomial(f: Poly, g: Poly) -> Poly:
    """(lcm/LT(f))*f - (lcm/LT(g))*g for the lcm of the leading monomials."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("polynomials live in different rings")
    r = Reducer([f, g])
    d = r.spoly_terms(0, 1)
    return Poly(f.ring, {m: qnorm(c) for m, c in d.items()}, _trusted=True)


def normal_form(f: Poly, G: Sequence[Poly] | Reducer) -> Poly:
    """Remainder of ``f`` on division by ``G`` (first-match divisor selection)."""
    reducer = G if isinstance(G, Reducer) else Reducer(G)
    if not len(reducer):
        raise ValueError("empty division basis")
    return reducer.normal_form(f)


@dataclass
class BasisCheckResult:
    is_basis: bool
    failing_pair: tuple[int, int, Poly] | None
    pairs_examined: int
    pairs_skipped_by_criterion: int
    pairs_total: int = 0
    coprime_spot_checks: int = 0
    seconds: float = 0.0


def _pair_blocks(n: int, workers: int) -> list[list[int]]:
    return [list(range(w, n, workers)) for w in range(workers)]


def _check_rows(basis: Sequence[Poly], rows: Sequence[int], check_coprime: bool,
                stop_early: bool, progress: Callable | None = None):
    reducer = Reducer(basis)
    lms = reducer.lms
    n = len(lms)
    examined = skipped = spot = 0
    failure = None
    for i in rows:
        a = lms[i]
        for j in range(i + 1, n):
            if monomial_coprime(a, lms[j]):
                skipped += 1
                if not check_coprime:
                    continue
                spot += 1
                if reducer.reduce_terms(reducer.spoly_terms(i, j)):
                    raise AssertionError(f"product criterion violated for pair {(i, j)}")
                continue
            examined += 1
            rem = reducer.reduce_terms(reducer.spoly_terms(i, j))
            if rem and (failure is None or (i, j) < failure[:2]):
                failure = (i, j, rem)
                if stop_early:
                    return examined, skipped, spot, failure
        if progress is not None:
            progress(i, examined, skipped)
    return examined, skipped, spot, failure


def _check_rows_star(args):
    return _check_rows(*args)


def is_groebner_basis(G: Sequence[Poly], *, check_coprime: bool = False, workers: int = 1,
                      stop_early: bool = True, progress: Callable | None = None
                      ) -> BasisCheckResult:
    """Buchberger's criterion: every S-pair must reduce to zero.

    Pairs whose leading monomials are coprime are skipped (product
    criterion).  With ``check_coprime`` they are reduced anyway as a spot
    check of that criterion.  Pairs are visited in lexicographic index order
    and the first failing pair is reported.
    """
    if not G:
        raise ValueError("empty basis")
    t0 = time.perf_counter()
    basis = list(G)
    n = len(basis)
    if workers > 1 and n > 1:
        from concurrent.futures import ProcessPoolExecutor

        blocks = _pair_blocks(n, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_check_rows_star,
                                  [(basis, rows, check_coprime, stop_early) for rows in blocks]))
        examined = sum(p[0] for p in parts)
        skipped = sum(p[1] for p in parts)
        spot = sum(p[2] for p in parts)
        fails = [p[3] for p in parts if p[3] is not None]
        failure = min(fails, key=lambda t: t[:2]) if fails else None
    else:
        examined, skipped, spot, failure = _check_rows(basis, range(n), check_coprime,
                                                       stop_early, progress)
    failing = None
    if failure is not None:
        i, j, rem = failure
        failing = (i, j, Poly(basis[0].ring, {m: qnorm(c) for m, c in rem.items()}, _trusted=True))
    return BasisCheckResult(
        is_basis=failing is None,
        failing_pair=failing,
        pairs_examined=examined,
        pairs_skipped_by_criterion=skipped,
        pairs_total=n * (n - 1) // 2,
        coprime_spot_checks=spot,
        seconds=time.perf_counter() - t0,
    )


@dataclass
class GroebnerBasis:
    generators: list[Poly]
    reduced: bool = True
    degree_bound: int | None = None
    stats: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.generators[0].ring if self.generators else None

    @property
    def order(self) -> dict:
        return self.ring.describe() if self.ring is not None else {}

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def reducer(self) -> Reducer:
        return Reducer(self.generators)


def buchberger(F: Sequence[Poly], *, chain: bool = False, degree_bound: int | None = None
               ) -> GroebnerBasis:
    """Complete ``F`` to a reduced Groebner basis.

    Normal selection strategy: the pending pair with the smallest lcm degree
    goes first, ties broken by index pair.  The product criterion always
    prunes; ``chain`` adds Buchberger's lcm-chain criterion.  With
    ``degree_bound`` (homogeneous input only) pairs whose lcm exceeds the
    bound are dropped, giving a basis that is correct up to that degree.
    """
    polys = [f for f in F if f]
    if not polys:
        raise ValueError("buchberger needs at least one nonzero polynomial")
    if degree_bound is not None and not all(f.is_homogeneous() for f in polys):
        raise ValueError("degree_bound requires homogeneous input")
    ring = polys[0].ring
    reducer = Reducer()
    seen = set()
    for f in polys:
        f = f.monic()
        if f not in seen:
            seen.add(f)
            reducer.append(f)
    lms = reducer.lms
    pending: list = []
    pending_set: set = set()
    stats = {"pairs_reduced": 0, "pairs_product": 0, "pairs_chain": 0, "pairs_degree": 0,
             "zero_reductions": 0}

    def add_pairs(j):
        for i in range(j):
            if monomial_coprime(lms[i], lms[j]):
                stats["pairs_product"] += 1
                continue
            lcm = monomial_lcm(lms[i], lms[j])
            if degree_bound is not None and len(lcm) > degree_bound:
                stats["pairs_degree"] += 1
                continue
            heapq.heappush(pending, (len(lcm), i, j))
            pending_set.add((i, j))

    for j in range(len(lms)):
        add_pairs(j)

    while pending:
        _, i, j = heapq.heappop(pending)
        pending_set.discard((i, j))
        if chain and _chain_skip(lms, i, j, pending_set):
            stats["pairs_chain"] += 1
            continue
        stats["pairs_reduced"] += 1
        rem = reducer.reduce_terms(reducer.spoly_terms(i, j))
        if not rem:
            stats["zero_reductions"] += 1
            continue
        h = Poly(ring, {m: qnorm(c) for m, c in rem.items()}, _trusted=True)
        add_pairs(reducer.append(h))

    gens = [Poly(ring, {lm: 1, **dict(tail)}, _trusted=True)
            for lm, tail in zip(reducer.lms, reducer.tails)]
    out = interreduce(gens)
    stats["basis_size"] = len(out)
    return GroebnerBasis(out, reduced=True, degree_bound=degree_bound, stats=stats)


def _chain_skip(lms, i, j, pending_set) -> bool:
    lcm = monomial_lcm(lms[i], lms[j])
    for k, lk in enumerate(lms):
        if k == i or k == j or not monomial_divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) in pending_set or (min(j, k), max(j, k)) in pending_set:
            continue
        return True
    return False


def interreduce(G: Sequence[Poly]) -> list[Poly]:
    """Minimal, tail-reduced, monic basis sorted by leading monomial (greatest first)."""
    gens = [g.monic() for g in G if g]
    lms = [g.lm for g in gens]
    minimal = []
    for idx, lm in enumerate(lms):
        # equal leading monomials: keep the first occurrence
        if any((other == lm and jdx < idx) or (other != lm and monomial_divides(other, lm))
               for jdx, other in enumerate(lms) if jdx != idx):
            continue
        minimal.append(gens[idx])
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        if not others:
            out.append(g)
            continue
        lm = g.lm
        tail = Poly(g.ring, {m: c for m, c in g.termdict.items() if m != lm}, _trusted=True)
        tail = Reducer(others).normal_form(tail)
        out.append(Poly(g.ring, {lm: 1, **tail.termdict}, _trusted=True))
    out.sort(key=lambda g: monomial_key(g.lm))
    return out


def leading_ideal_squarefree(G: GroebnerBasis | Sequence[Poly]) -> bool:
    """True iff every generator has a square-free leading monomial."""
    return all(is_squarefree(g.lm) for g in G)


def non_squarefree_leaders(G: Sequence[Poly]) -> list[int]:
    return [i for i, g in enumerate(G) if not is_squarefree(g.lm)]
