"""The acceptance battery.  Each criterion returns a ``CriterionResult``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .generators import (
    ProductFamily,
    block_cubics,
    candidate_basis,
    det_pencil_generators,
    fano_minors,
    quartic_products,
)
from .groebner import buchberger, is_groebner_basis
from .linalg import rank_of_vectors
from .poly import is_squarefree, monomial_divides
from .rep import cauchy_check, obstruction_check
from .verify import (
    CompressionSpec,
    DegreeSpan,
    PointEvaluator,
    Tensor,
    act,
    dit_random,
    random_group_element,
    random_matrix,
    sample_sing,
    stream_rng,
    vanish_check,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title}"

    def to_json(self, timings: bool = False) -> dict:
        out = {"criterion": self.number, "title": self.title, "passed": self.passed,
               "details": self.details}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _timed(number: int, title: str, body: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    t0 = time.perf_counter()
    passed, details = body()
    return CriterionResult(number, title, bool(passed), details, time.perf_counter() - t0)


def groebner_verification(ms=range(2, 8), workers: int = 1) -> CriterionResult:
    def body():
        per_m = {}
        for m in ms:
            G = candidate_basis(m)
            r = is_groebner_basis(G, workers=workers)
            per_m[m] = {"size": len(G), "is_basis": r.is_basis,
                        "pairs_examined": r.pairs_examined,
                        "pairs_skipped": r.pairs_skipped_by_criterion}
        return all(v["is_basis"] for v in per_m.values()), per_m
    return _timed(1, "candidate basis is a Groebner basis, m = 2..7", body)


def squarefree_report(m: int) -> dict:
    G = candidate_basis(m)
    lms = [g.lm for g in G]
    bad = [i for i, lm in enumerate(lms) if not is_squarefree(lm)]
    # a non-square-free leader is harmless for the leading ideal if a
    # square-free leader of another element divides it
    covered = [i for i in bad
               if any(j != i and is_squarefree(lms[j]) and monomial_divides(lms[j], lms[i])
                      for j in range(len(G)))]
    return {"size": len(G), "non_squarefree": len(bad), "covered_by_squarefree": len(covered),
            "leading_ideal_squarefree_generated": len(covered) == len(bad)}


def radicality(ms=range(2, 8)) -> CriterionResult:
    def body():
        per_m = {m: squarefree_report(m) for m in ms}
        return all(v["non_squarefree"] == 0 for v in per_m.values()), per_m
    return _timed(2, "every candidate basis element has a square-free leading monomial", body)


def nonradicality(ms=(3, 4)) -> CriterionResult:
    def body():
        per_m = {}
        for m in ms:
            quadrics = det_pencil_generators(2, m).elements
            red = buchberger(quadrics).reducer()
            span = DegreeSpan(quadrics, 3)
            cubics = block_cubics(m).elements
            nf_nonzero = [bool(red.normal_form(f)) for f in cubics]
            lin_out = [not span.contains(f) for f in cubics]
            witnesses = [i for i in range(len(cubics)) if nf_nonzero[i] and lin_out[i]]
            per_m[m] = {"cubics": len(cubics), "nonzero_normal_forms": sum(nf_nonzero),
                        "outside_linear_span": sum(lin_out),
                        "oracles_agree_elementwise": nf_nonzero == lin_out,
                        "witnesses": len(witnesses),
                        "first_witness": cubics[witnesses[0]].serialize() if witnesses else None}
        ok = all(v["witnesses"] > 0 for v in per_m.values())
        return ok, per_m
    return _timed(3, "quadric ideal is not radical for m = 3, 4 (two oracles)", body)


def quadrics_suffice(ms=(1, 2)) -> CriterionResult:
    def body():
        per_m = {}
        for m in ms:
            red = buchberger(det_pencil_generators(2, m).elements).reducer()
            G = candidate_basis(m)
            per_m[m] = {"size": len(G), "reduce_to_zero": sum(not red.normal_form(f) for f in G)}
        return all(v["size"] == v["reduce_to_zero"] for v in per_m.values()), per_m
    return _timed(4, "quadrics generate everything for m = 1, 2", body)


def degree_four_generation(ms=(3, 4)) -> CriterionResult:
    def body():
        per_m = {}
        for m in ms:
            gens = det_pencil_generators(2, m).elements + block_cubics(m).elements
            span = DegreeSpan(gens, 4)
            quartics = quartic_products(m).elements
            inside = sum(span.contains(f) for f in quartics)
            per_m[m] = {"quartics": len(quartics), "in_span": inside, "span_rank": span.rank,
                        "multiplier_rows": span.rows}
        return all(v["quartics"] == v["in_span"] for v in per_m.values()), per_m
    return _timed(5, "quartic products lie in the ideal of quadrics and cubics, m = 3, 4", body)


def vanishing_suite(count: int = 1000, seed=2024, ms=range(2, 8)) -> CriterionResult:
    def body():
        ms_ = list(ms)
        bases = {m: candidate_basis(m) for m in ms_}
        failures = []
        for idx in range(count):
            m = ms_[idx % len(ms_)]
            s = (idx // len(ms_)) % 2
            T = sample_sing(CompressionSpec(2, m, s, seed=(seed, idx)))
            r = vanish_check(bases[m], T)
            if not r:
                failures.append({"index": idx, "m": m, "s": s, "element": r.first_failure})
        return not failures, {"samples": count, "failures": failures[:10]}
    return _timed(6, f"candidate bases vanish on {count} sampled points, n = 2", body)


def fano_vanishing(count: int = 200, seed=7) -> CriterionResult:
    def body():
        minors = fano_minors(3, 7).elements
        empty6 = len(fano_minors(3, 6).elements) == 0
        failures = []
        for idx in range(count):
            s = idx % 3
            T = sample_sing(CompressionSpec(3, 7, s, seed=(seed, idx)))
            r = vanish_check(minors, T)
            if not r:
                failures.append({"index": idx, "s": s, "element": r.first_failure})
        ok = len(minors) == 36 and empty6 and not failures
        return ok, {"minors": len(minors), "fano_3_6_empty": empty6, "samples": count,
                    "failures": failures[:10]}
    return _timed(7, f"7x7 flattening minors vanish on {count} points of Sing(3,7)", body)


def product_equation_vanishing(triples: int = 10_000, points: int = 50, seed=11,
                               expand_checks: int = 2) -> CriterionResult:
    def body():
        fam = ProductFamily(3, 6)
        sizes = fam.sizes
        rng = stream_rng(seed, "triples")
        drawn = list(fam.sample(rng, triples))
        degrees = {e.degree for e in drawn}
        failures = 0
        for p in range(points):
            T = sample_sing(CompressionSpec(3, 6, p % 3, seed=(seed, p)))
            ev = PointEvaluator(fam.ring, T)
            vals = [[ev.scaled_value(mi.poly) for mi in group]
                    for group in (fam.slice_minors, fam.row_minors, fam.col_minors)]
            for e in drawn:
                a, b, c = e.index
                if vals[0][a] * vals[1][b] * vals[2][c] != 0:
                    failures += 1
        # the factored evaluation agrees with evaluating the expanded product
        agree = True
        for k in range(expand_checks):
            e = drawn[k]
            f = e.expand()
            T = sample_sing(CompressionSpec(3, 6, k % 3, seed=(seed, "expand", k)))
            G = random_matrix(stream_rng(seed, "generic", k), 3 * 6, 3)
            generic = Tensor([[G[3 * i + r] for r in range(3)] for i in range(6)])
            agree &= f.degree == 12 and f.evaluate(T) == e.evaluate(T) == 0
            agree &= f.evaluate(generic) == e.evaluate(generic)
        ok = failures == 0 and degrees == {12} and agree
        return ok, {"sizes": list(sizes), "triples": triples, "points": points,
                    "degrees": sorted(degrees), "nonzero_evaluations": failures,
                    "expanded_agree": agree}
    return _timed(8, "triple products of flattening minors vanish on Sing(3,6)", body)


def cauchy_identity(dmax: int = 5, mmax: int = 6, qmax: int = 6) -> CriterionResult:
    def body():
        bad = []
        count = 0
        for d in range(1, dmax + 1):
            for m in range(1, mmax + 1):
                for q in range(1, qmax + 1):
                    count += 1
                    r = cauchy_check(d, m, q)
                    if not r:
                        bad.append([d, m, q, r.lhs, r.rhs])
        return not bad, {"instances": count, "failures": bad}
    return _timed(9, "Cauchy identity at the level of dimensions", body)


def lr_obstruction(ns=(2, 3), dprime_max: int = 4) -> CriterionResult:
    def body():
        reports = {n: obstruction_check(n, dprime_max).to_json() for n in ns}
        return all(r["holds"] for r in reports.values()), reports
    return _timed(10, "Littlewood-Richardson obstruction, n = 2, 3", body)


def group_invariance(count: int = 100, seed=5, m: int = 3, generic: int = 20) -> CriterionResult:
    def body():
        G = candidate_basis(m)
        disagreements = []
        nonvacuous = 0
        for idx in range(count + generic):
            rng = stream_rng(seed, "group", idx)
            g = random_group_element(rng, 2, m)
            if idx < count:
                T = sample_sing(CompressionSpec(2, m, idx % 2, seed=(seed, idx)))
            else:
                T = Tensor([random_matrix(rng, 2, 2) for _ in range(m)])
            before = vanish_check(G, T).vanishes
            moved = act(g, T)
            after = vanish_check(G, moved).vanishes
            back = act(g.inverse(), moved) == T
            if idx >= count and not before:
                nonvacuous += 1
            if before != after or not back:
                disagreements.append(idx)
        return not disagreements, {"pairs": count, "generic_pairs": generic,
                                   "generic_nonvanishing": nonvacuous,
                                   "disagreements": disagreements}
    return _timed(11, "vanishing is invariant under GL_m x GL_n x GL_n", body)


def pencil_span_dimension(ms=range(1, 8)) -> CriterionResult:
    def body():
        per_m = {}
        for m in ms:
            gens = det_pencil_generators(2, m).elements
            rank = rank_of_vectors(g.termdict for g in gens)
            per_m[m] = {"generators": len(gens), "rank": rank, "expected": comb(m + 1, 2)}
        return all(v["rank"] == v["expected"] == v["generators"] for v in per_m.values()), per_m
    return _timed(12, "degree-2 pencil generators span a space of dimension C(m+1,2)", body)


def dit_sanity(samples: int = 100, nonmembers: int = 100, seed=3) -> CriterionResult:
    def body():
        singular_ok = 0
        for idx in range(samples):
            n = 2 + idx % 2
            m = 2 + idx % 5
            s = idx % n
            T = sample_sing(CompressionSpec(n, m, s, seed=(seed, idx)))
            if dit_random(T, trials=20, seed=(seed, idx)).all_singular:
                singular_ok += 1
        found = 0
        worst = 0
        for idx in range(nonmembers):
            rng = stream_rng(seed, "nonmember", idx)
            n = 2 + idx % 3
            m = 2 + idx % 4
            slices = [random_matrix(rng, n, n) for _ in range(m)]
            slices[idx % m] = [[int(i == j) for j in range(n)] for i in range(n)]
            v = dit_random(Tensor(slices), trials=5, seed=(seed, "nm", idx))
            if not v.all_singular:
                found += 1
                worst = max(worst, v.trials)
        ok = singular_ok == samples and found == nonmembers
        return ok, {"singular_samples": samples, "all_singular": singular_ok,
                    "nonmembers": nonmembers, "witness_found": found, "max_trials_used": worst}
    return _timed(13, "randomized determinant identity testing", body)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: groebner_verification,
    2: radicality,
    3: nonradicality,
    4: quadrics_suffice,
    5: degree_four_generation,
    6: vanishing_suite,
    7: fano_vanishing,
    8: product_equation_vanishing,
    9: cauchy_identity,
    10: lr_obstruction,
    11: group_invariance,
    12: pencil_span_dimension,
    13: dit_sanity,
}


def run_all(selected=None, echo: Callable[[str], None] | None = print) -> list[CriterionResult]:
    out = []
    for k in sorted(selected or CRITERIA):
        r = CRITERIA[k]()
        if echo is not None:
            echo(r.line())
        out.append(r)
    return out
