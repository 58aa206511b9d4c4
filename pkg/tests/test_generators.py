import random
import warnings
from math import comb

import pytest

from singideal.generators import (
    Family,
    FlatteningMode,
    FlatteningSpec,
    ProductFamily,
    block_cubics,
    candidate_basis,
    det_pencil_generators,
    expected_family_sizes,
    fano_minors,
    flattening,
    product_equations,
    quartic_products,
)
from singideal.linalg import rank_of_vectors
from singideal.poly import PolyRing, determinant, is_squarefree, monomial_divides
from singideal.verify import CompressionSpec, DegreeSpan, sample_sing, vanish_check


def test_pencil_m1():
    R = PolyRing.matrices(2, 1)
    gs = det_pencil_generators(2, 1, R)
    assert gs.family is Family.QUADRIC
    assert gs.elements == [determinant(R.matrix(1))]


def test_pencil_m2_mixed_generator():
    R = PolyRing.matrices(2, 2)
    x = R.x
    mixed = (x(1, 1, 1) * x(2, 2, 2) + x(2, 1, 1) * x(1, 2, 2)
             - x(1, 1, 2) * x(2, 2, 1) - x(2, 1, 2) * x(1, 2, 1))
    assert mixed in det_pencil_generators(2, 2, R).elements


@pytest.mark.parametrize("m", range(1, 6))
def test_pencil_count_and_rank(m):
    gens = det_pencil_generators(2, m).elements
    assert len(gens) == comb(m + 1, 2)
    assert rank_of_vectors(g.termdict for g in gens) == comb(m + 1, 2)


def test_pencil_rank_against_sympy():
    sympy = pytest.importorskip("sympy")
    gens = det_pencil_generators(2, 4).elements
    mons = sorted({mon for g in gens for mon in g.termdict})
    M = sympy.Matrix([[sympy.Rational(g.termdict.get(mon, 0)) for mon in mons] for g in gens])
    assert M.rank() == comb(5, 2)


def test_pencil_n3_degree():
    gens = det_pencil_generators(3, 2).elements
    assert len(gens) == comb(4, 3)
    assert all(g.degree == 3 and g.is_homogeneous() for g in gens)


def test_block_cubics_m2_empty():
    assert block_cubics(2).elements == []


def test_block_cubics_m3_shape():
    gs = block_cubics(3)
    assert gs.family is Family.BLOCK_CUBIC
    assert len(gs.elements) == 48
    for f in gs.elements:
        assert f.degree == 3 and f.is_homogeneous()
        assert all(is_squarefree(mon) for mon in f.termdict)
    assert len(gs.provenance) == len(gs.elements)


@pytest.mark.parametrize("m", [3, 4])
def test_block_cubics_match_slice_minors_modulo_quadrics(m):
    """In degree 3, quadrics + block cubics and quadrics + 3x3 slice minors span the same space."""
    quadrics = det_pencil_generators(2, m).elements
    cubics = block_cubics(m).elements
    minors = fano_minors(2, m).elements
    a = DegreeSpan(quadrics + cubics, 3)
    b = DegreeSpan(quadrics + minors, 3)
    assert a.rank == b.rank
    assert all(a.contains(f) for f in minors)
    assert all(b.contains(f) for f in cubics)
    assert a.rank > DegreeSpan(quadrics, 3).rank


def test_flattening_slice():
    R = PolyRing.matrices(2, 3)
    T = flattening(FlatteningSpec(FlatteningMode.SLICE, 2, 3), R)
    assert (T.rows, T.cols) == (3, 4)
    entries = [T[r, c] for r in range(3) for c in range(4)]
    assert len(set(entries)) == 12
    for k in range(1, 4):
        for i in (1, 2):
            for j in (1, 2):
                assert T[k - 1, (i - 1) * 2 + j - 1] == R.x(k, i, j)


def test_flattening_sides():
    R = PolyRing.matrices(2, 3)
    for mode in (FlatteningMode.ROW_SIDE, FlatteningMode.COL_SIDE):
        T = flattening(FlatteningSpec(mode, 2, 3), R)
        assert (T.rows, T.cols) == (2, 6)


def test_quartic_products_counts():
    assert len(quartic_products(2).elements) == 2
    assert len(quartic_products(3).elements) <= 18
    for m in (2, 3, 4):
        assert all(f.degree == 4 for f in quartic_products(m).elements)


@pytest.mark.parametrize("m, bad", [(2, 0), (3, 2), (4, 8), (5, 20)])
def test_quartic_leading_monomials(m, bad):
    # the non-square-free leaders are all redundant in the leading ideal
    G = candidate_basis(m)
    lms = [g.lm for g in G]
    offenders = [i for i, lm in enumerate(lms) if not is_squarefree(lm)]
    assert len(offenders) == bad
    for i in offenders:
        assert G[i].degree == 4
        assert any(j != i and is_squarefree(lms[j]) and monomial_divides(lms[j], lms[i])
                   for j in range(len(G)))


def test_candidate_basis_small_cases():
    R = PolyRing.matrices(2, 1)
    assert candidate_basis(1, R) == [determinant(R.matrix(1)).monic()]
    G2 = candidate_basis(2)
    assert len(G2) == 5
    assert [g.degree for g in G2] == [2, 2, 2, 4, 4]


def test_candidate_basis_deterministic_and_monic():
    a = [f.serialize() for f in candidate_basis(4)]
    b = [f.serialize() for f in candidate_basis(4)]
    assert a == b
    assert all(f.lc == 1 for f in candidate_basis(4))
    assert len(set(a)) == len(a)


def test_candidate_basis_order_variant():
    row = candidate_basis(3, PolyRing.matrices(2, 3, within="row"))
    col = candidate_basis(3, PolyRing.matrices(2, 3, within="col"))
    assert len(row) == len(col)


def test_fano_minor_counts():
    assert len(fano_minors(2, 3).elements) == 4
    assert all(f.degree == 3 for f in fano_minors(2, 3).elements)
    assert fano_minors(3, 6).elements == []
    gs = fano_minors(3, 7)
    assert len(gs.elements) == 36 == comb(7, 7) * comb(9, 7)
    assert all(f.degree == 7 for f in gs.elements)


def test_product_family_sizes():
    fam = ProductFamily(2, 3)
    assert fam.sizes == (4, 15, 15)
    assert fam.at(0, 0, 0).degree == 7
    fam = ProductFamily(3, 6)
    assert fam.sizes == (84, 816, 816)
    sizes = expected_family_sizes(3, 6)
    assert (sizes["product_slice"], sizes["product_side"]) == (84, 816)


def test_product_equations_stream():
    eqs = list(product_equations(2, 3, count=5))
    assert [e.index for e in eqs] == [(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3), (0, 0, 4)]
    sampled = list(product_equations(2, 3, sampler=random.Random(1), count=20))
    again = list(product_equations(2, 3, sampler=random.Random(1), count=20))
    assert [e.index for e in sampled] == [e.index for e in again]
    e = sampled[0]
    f = e.expand()
    assert f.degree == 7
    rng = random.Random(2)
    pt = [rng.randint(-5, 5) for _ in range(12)]
    assert f.evaluate(pt) == e.evaluate(pt)


def test_product_equations_too_few_slices():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert list(product_equations(3, 5)) == []
    assert caught


@pytest.mark.parametrize("m", [2, 3, 4])
def test_families_vanish_on_samples(m):
    G = candidate_basis(m)
    for s in (0, 1):
        for seed in range(3):
            assert vanish_check(G, sample_sing(CompressionSpec(2, m, s, seed=seed))).vanishes


def test_product_equations_vanish_n2():
    fam = ProductFamily(2, 3)
    for s in (0, 1):
        T = sample_sing(CompressionSpec(2, 3, s, seed=9))
        assert all(e.evaluate(T) == 0 for e in fam)


def test_manifest():
    man = block_cubics(3).manifest()
    assert man["family"] == "BlockCubic" and man["count"] == 48
    assert man["ring"]["within_matrix"] == "row-major"
