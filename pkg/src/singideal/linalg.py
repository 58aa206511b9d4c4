"""Exact linear algebra over Q: sparse echelon forms and small dense helpers."""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .poly import monomial_key, qnorm


class Echelon:
    """Incremental row echelon form of sparse vectors.

    Vectors are dicts ``key -> coefficient``.  Keys are ordered by
    ``sort_key`` (smaller sorts first and is the pivot candidate), so with
    monomial keys this is the Macaulay-matrix view of a polynomial span.
    Every stored row is monic in its pivot and no two rows share a pivot.
    """

    def __init__(self, sort_key: Callable[[Hashable], object] = monomial_key):
        self.sort_key = sort_key
        self.pivots: dict[Hashable, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _top_reduce(self, row: dict) -> tuple[Hashable | None, dict]:
        key = self.sort_key
        heap = [(key(k), k) for k in row]
        heapq.heapify(heap)
        pivots = self.pivots
        while heap:
            _, k = heapq.heappop(heap)
            c = row.get(k)
            if not c:
                continue
            piv = pivots.get(k)
            if piv is None:
                return k, row
            del row[k]
            for pk, pc in piv.items():
                if pk == k:
                    continue
                old = row.get(pk)
                if old is None:
                    row[pk] = -c * pc
                    heapq.heappush(heap, (key(pk), pk))
                else:
                    v = old - c * pc
                    if v:
                        row[pk] = v
                    else:
                        del row[pk]
        return None, row

    def add(self, vector: dict) -> bool:
        """Insert a vector; True if it raised the rank."""
        pivot, row = self._top_reduce({k: v for k, v in vector.items() if v})
        if pivot is None:
            return False
        lead = row[pivot]
        if lead != 1:
            row = {k: qnorm(Fraction(v) / lead) for k, v in row.items()}
        self.pivots[pivot] = row
        return True

    def residual(self, vector: dict) -> dict:
        """Remainder after top-reduction; empty iff the vector lies in the span."""
        pivot, row = self._top_reduce({k: v for k, v in vector.items() if v})
        return {} if pivot is None else row

    def contains(self, vector: dict) -> bool:
        return not self.residual(vector)


def rank_of_vectors(vectors: Iterable[dict], sort_key=monomial_key) -> int:
    ech = Echelon(sort_key)
    for v in vectors:
        ech.add(v)
    return ech.rank


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a dense rational matrix."""
    return rank_of_vectors(({j: Fraction(v) for j, v in enumerate(r) if v} for r in rows),
                           sort_key=lambda j: j)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if len(A[0]) != len(B):
        raise ValueError("shape mismatch")
    cols = list(zip(*B))
    return [[qnorm(sum(a * b for a, b in zip(row, col))) for col in cols] for row in A]


def matadd(A, B):
    return [[qnorm(a + b) for a, b in zip(r, s)] for r, s in zip(A, B)]


def matscale(c, A):
    return [[qnorm(c * a) for a in r] for r in A]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def inverse(A: Sequence[Sequence]) -> list[list]:
    """Gauss-Jordan inverse over Q; raises ``ZeroDivisionError`` if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [[qnorm(v) for v in row[n:]] for row in M]
