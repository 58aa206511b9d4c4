import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singideal.poly import (
    Poly,
    PolyMatrix,
    PolyRing,
    RingMismatchError,
    compare_monomials,
    determinant,
    generic_ring,
    is_squarefree,
    minors_of,
    numeric_determinant,
    parse_poly,
)
from singideal.verify import Tensor

R12 = PolyRing.matrices(2, 1)
R22 = PolyRing.matrices(2, 2)


def x(ring, k, i, j):
    return ring.x(k, i, j)


def perm_det(rows):
    """Leibniz expansion; independent of the library's DP."""
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term = term * rows[i][p[i]]
        total = total + term
    return total


# --- ordering --------------------------------------------------------------

def test_variable_order_slice_major_row_major():
    R = PolyRing.matrices(2, 2)
    names = [str(v) for v in R.variables]
    assert names[:4] == ["x[1][1][1]", "x[1][1][2]", "x[1][2][1]", "x[1][2][2]"]
    assert names[4] == "x[2][1][1]"
    assert compare_monomials(x(R, 1, 2, 2), x(R, 2, 1, 1)) == 1


def test_column_major_variant():
    R = PolyRing.matrices(2, 1, within="col")
    assert [str(v) for v in R.variables] == ["x[1][1][1]", "x[1][2][1]", "x[1][1][2]", "x[1][2][2]"]
    assert R.describe()["within_matrix"] == "col-major"


def test_compare_examples():
    a11, a12, a21, a22 = (x(R12, 1, i, j) for i in (1, 2) for j in (1, 2))
    assert compare_monomials(a12 * a21, a11 * a22) == 1
    assert compare_monomials(a11 * a11, a11 * a12) == 1
    assert compare_monomials(a11, a22 ** 3) == -1
    assert compare_monomials(a11 * a22, a11 * a22) == 0


def test_degrevlex_against_sympy():
    sympy = pytest.importorskip("sympy")
    R = PolyRing.matrices(2, 2)
    rng = random.Random(1)
    for _ in range(200):
        d = rng.randint(1, 4)
        mons = [tuple(sorted((rng.randrange(8) for _ in range(d)), reverse=True)) for _ in range(2)]
        ours = compare_monomials(R.one().mul_term(1, mons[0]), R.one().mul_term(1, mons[1]))
        e = [[0] * 8, [0] * 8]
        for k in range(2):
            for v in mons[k]:
                e[k][v] += 1
        key = sympy.polys.orderings.grevlex
        theirs = (key(tuple(e[0])) > key(tuple(e[1]))) - (key(tuple(e[0])) < key(tuple(e[1])))
        assert ours == theirs


def test_order_is_multiplicative():
    a11, a12, a21, a22 = (x(R12, 1, i, j) for i in (1, 2) for j in (1, 2))
    for c in (a11, a22, a12 * a21):
        assert compare_monomials(a12 * a21 * c, a11 * a22 * c) == 1


# --- arithmetic ------------------------------------------------------------

def test_arith_examples():
    a11, a22 = x(R12, 1, 1, 1), x(R12, 1, 2, 2)
    assert (a11 + (-a11)).is_zero()
    assert (a11 + a22) * (a11 - a22) == a11 ** 2 - a22 ** 2
    d = determinant(R12.matrix(1))
    assert d.scale(3).lm == d.lm
    assert d.scale(Fraction(1, 3)).lc == Fraction(-1, 3)


def test_zero_has_no_degree():
    assert R12.zero().degree is None
    assert R12.one().degree == 0
    with pytest.raises(ValueError):
        R12.zero().lm


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        x(R12, 1, 1, 1) + x(R22, 1, 1, 1)


def test_serialize_round_trip_and_format():
    f = x(R22, 1, 1, 1) * x(R22, 2, 2, 2) - Fraction(3, 2) * x(R22, 1, 2, 1) ** 2
    text = f.serialize()
    assert text == "-3/2*x[1][2][1]^2 + 1/1*x[1][1][1]^1*x[2][2][2]^1"
    assert parse_poly(R22, text) == f
    assert R22.zero().serialize() == "0"


def test_squarefree():
    a11, a12 = x(R12, 1, 1, 1), x(R12, 1, 1, 2)
    assert is_squarefree((a11 * a12).lm)
    assert not is_squarefree((a11 * a11).lm)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, ring=R22):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        d = draw(st.integers(0, 3))
        mon = tuple(sorted(draw(st.lists(st.integers(0, ring.ngens - 1), min_size=d, max_size=d)),
                           reverse=True))
        terms[mon] = draw(coeffs)
    return Poly(ring, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R22.zero()


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), st.lists(coeffs, min_size=8, max_size=8))
def test_evaluate_is_homomorphism(f, g, vals):
    assert (f * g).evaluate(vals) == f.evaluate(vals) * g.evaluate(vals)
    assert (f + g).evaluate(vals) == f.evaluate(vals) + g.evaluate(vals)


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_leading_monomial_of_product(f, g):
    if f and g:
        assert (f * g).lm == tuple(sorted(f.lm + g.lm, reverse=True))


# --- evaluation ------------------------------------------------------------

def test_evaluate_examples():
    d = determinant(R12.matrix(1))
    assert d.evaluate(Tensor([[[1, 0], [0, 1]]])) == 1
    assert d.evaluate(Tensor([[[2, 6], [1, 3]]])) == 0
    f = x(R22, 1, 1, 1) * x(R22, 2, 2, 2)
    assert f.evaluate(Tensor([[[2, 0], [0, 0]], [[0, 0], [0, 5]]])) == 10


def test_evaluate_shape_checked():
    with pytest.raises(ValueError):
        x(R22, 1, 1, 1).evaluate(Tensor([[[1, 0], [0, 1]]]))


# --- determinants ----------------------------------------------------------

def test_det_2x2():
    R = generic_ring("abcd")
    a, b, c, d = R.gens()
    assert determinant(PolyMatrix([[a, b], [c, d]])) == a * d - b * c


def test_det_equal_rows_is_zero():
    R = PolyRing.matrices(3, 1)
    M = R.matrix(1)
    rows = [[M[0, j] for j in range(3)], [M[1, j] for j in range(3)], [M[0, j] for j in range(3)]]
    assert determinant(PolyMatrix(rows)).is_zero()


def test_det_numeric_diag():
    R = generic_ring("a")
    assert determinant(PolyMatrix.from_numbers(R, [[1, 0, 0], [0, 2, 0], [0, 0, 3]])) == R.const(6)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_matches_leibniz(n):
    R = PolyRing.matrices(n, 1)
    M = R.matrix(1)
    rows = [[M[i, j] for j in range(n)] for i in range(n)]
    assert determinant(M) == perm_det(rows)


def test_det_block_matrix_matches_leibniz():
    R = PolyRing.matrices(2, 3)
    B = PolyMatrix.blocks([[R.matrix(1), R.matrix(2)], [R.matrix(3), None]])
    rows = [[B[i, j] for j in range(4)] for i in range(4)]
    assert determinant(B) == perm_det(rows)


def test_det_nonsquare():
    R = PolyRing.matrices(2, 1)
    with pytest.raises(ValueError):
        determinant(R.matrix(1).submatrix([0], [0, 1]))


small = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=50, deadline=None)
@given(small, small)
def test_det_multiplicative(A, B):
    R = generic_ring("a")
    MA, MB = PolyMatrix.from_numbers(R, A), PolyMatrix.from_numbers(R, B)
    assert determinant(MA * MB) == determinant(MA) * determinant(MB)
    assert numeric_determinant(A) == perm_det(A)


@settings(max_examples=30, deadline=None)
@given(small, st.integers(0, 2), st.integers(0, 2))
def test_det_alternating(A, i, j):
    R = generic_ring("a")
    B = [list(r) for r in A]
    if i != j:
        B[i], B[j] = B[j], B[i]
        assert determinant(PolyMatrix.from_numbers(R, B)) == -determinant(PolyMatrix.from_numbers(R, A))


def test_numeric_determinant_rational():
    assert numeric_determinant([[Fraction(1, 2), 1], [1, 4]]) == 1
    assert numeric_determinant([[1, 2], [2, 4]]) == 0


# --- minors ----------------------------------------------------------------

def test_minors_count_3x4():
    R = PolyRing.matrices(2, 3)
    from singideal.generators import FlatteningMode, FlatteningSpec, flattening

    T = flattening(FlatteningSpec(FlatteningMode.SLICE, 2, 3), R)
    ms = minors_of(T, 3)
    assert len(ms) == 4
    assert all(len(mi.rows) == 3 and len(mi.cols) == 3 for mi in ms)


def test_full_minor_is_determinant():
    R = PolyRing.matrices(3, 1)
    ms = minors_of(R.matrix(1), 3)
    assert [mi.poly for mi in ms] == [determinant(R.matrix(1))]


def test_minors_with_repeated_row_dropped():
    R = PolyRing.matrices(2, 3)
    from singideal.generators import FlatteningMode, FlatteningSpec, flattening

    T = flattening(FlatteningSpec(FlatteningMode.SLICE, 2, 3), R)
    rows = [[T[0, j] for j in range(4)], [T[1, j] for j in range(4)], [T[0, j] for j in range(4)]]
    assert minors_of(PolyMatrix(rows), 3) == []
    assert len(minors_of(PolyMatrix(rows), 2)) > 0


def test_minors_bad_size():
    with pytest.raises(ValueError):
        minors_of(R12.matrix(1), 3)
