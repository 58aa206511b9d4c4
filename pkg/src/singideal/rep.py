"""Partitions, Schur module dimensions, the Cauchy identity and Littlewood-Richardson numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``()`` is the empty partition."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts of {parts} are not weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition([sum(1 for p in self if p > j) for j in range(self[0])])

    def contains(self, other: Sequence[int]) -> bool:
        """Young diagram inclusion ``other ⊆ self``."""
        other = Partition(other)
        return len(other) <= len(self) and all(a <= b for a, b in zip(other, self))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self):
            for j in range(p):
                yield i, j

    def hook(self, i: int, j: int) -> int:
        return self[i] - j + self.conjugate()[j] - i - 1

    def __repr__(self):
        return f"Partition({list(self)})"


def partitions(d: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``d`` in reverse lexicographic order."""
    if max_part is None:
        max_part = d
    if d == 0:
        yield Partition()
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first):
            yield Partition((first,) + tuple(rest))


def column(k: int) -> Partition:
    return Partition([1] * k)


def schur_dim(lam: Sequence[int], q: int) -> int:
    """dim S^lam(C^q) by the hook content formula; 0 when lam has more than q parts."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    return _schur_dim(Partition(lam), q)


@lru_cache(maxsize=None)
def _schur_dim(lam: Partition, q: int) -> int:
    if len(lam) > q:
        return 0
    conj = lam.conjugate()
    num = den = 1
    for i, j in lam.cells():
        num *= q + j - i
        den *= lam[i] - j + conj[j] - i - 1
    return num // den


@dataclass
class CauchyResult:
    holds: bool
    lhs: int
    rhs: int

    def __bool__(self):
        return self.holds


def cauchy_check(d: int, m: int, q: int) -> CauchyResult:
    """dim S^d(C^m ⊗ C^q) against the sum over partitions of d of paired Schur dimensions."""
    if min(d, m, q) < 1:
        raise ValueError("d, m, q must be positive")
    lhs = comb(m * q + d - 1, d)
    rhs = sum(schur_dim(lam, m) * schur_dim(lam, q) for lam in partitions(d))
    return CauchyResult(lhs == rhs, lhs, rhs)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Number of LR tableaux of shape nu/lam and content mu.

    Cells are filled in reading order (rows top to bottom, each row right to
    left); rows weakly increase, columns strictly increase and the reading
    word must stay a lattice word.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size + mu.size != nu.size or not nu.contains(lam):
        return 0
    if not mu:
        return 1
    lam_row = list(lam) + [0] * (len(nu) - len(lam))
    cells = [(i, j) for i in range(len(nu)) for j in range(nu[i] - 1, lam_row[i] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)
    k = len(mu)

    def place(pos: int) -> int:
        if pos == len(cells):
            return 1
        i, j = cells[pos]
        hi = filling.get((i, j + 1), k)  # row weakly increasing
        lo = filling.get((i - 1, j), 0) + 1 if i > 0 else 1  # column strictly increasing
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] >= counts[v - 1]:
                continue
            counts[v] += 1
            filling[(i, j)] = v
            total += place(pos + 1)
            del filling[(i, j)]
            counts[v] -= 1
        return total

    return place(0)


def lr_product(lam: Sequence[int], mu: Sequence[int]) -> dict[Partition, int]:
    """All nonzero c^nu_{lam,mu}."""
    lam, mu = Partition(lam), Partition(mu)
    out = {}
    for nu in partitions(lam.size + mu.size):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[nu] = c
    return out


@dataclass
class ObstructionReport:
    holds: bool
    n: int
    dprime_max: int
    column_size: int
    column_first_part_below_n: bool
    products_checked: int = 0
    constituents_checked: int = 0
    violations: list = field(default_factory=list)
    column_constituent_found: bool = False

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "n": self.n,
            "dprime_max": self.dprime_max,
            "column_partition": [1] * self.column_size,
            "column_first_part_below_n": self.column_first_part_below_n,
            "products_checked": self.products_checked,
            "constituents_checked": self.constituents_checked,
            "column_constituent_found": self.column_constituent_found,
            "violations": [[list(nu), list(mu)] for nu, mu in self.violations],
        }


def obstruction_check(n: int, dprime_max: int) -> ObstructionReport:
    """Every constituent of S^(n) ⊗ S^nu has first part >= n; the column 1^(n^2-n+1) has not."""
    if n < 2 or dprime_max < 0:
        raise ValueError("need n >= 2 and dprime_max >= 0")
    t = n * n - n + 1
    col = column(t)
    part_a = col[0] < n
    row = Partition([n])
    report = ObstructionReport(False, n, dprime_max, t, part_a)
    for dp in range(dprime_max + 1):
        for nu in partitions(dp):
            report.products_checked += 1
            for mu, c in lr_product(row, nu).items():
                report.constituents_checked += 1
                if mu[0] < n:
                    report.violations.append((nu, mu))
                if mu == col:
                    report.column_constituent_found = True
    report.holds = part_a and not report.violations
    return report
