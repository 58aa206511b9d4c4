import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singideal.generators import (
    FlatteningMode,
    FlatteningSpec,
    block_cubics,
    candidate_basis,
    det_pencil_generators,
    fano_minors,
    flattening,
    quartic_products,
)
from singideal.groebner import buchberger
from singideal.linalg import identity, inverse, matmul, matrix_rank
from singideal.poly import Poly, PolyRing, determinant
from singideal.verify import (
    CompressionSpec,
    GroupElement,
    PointEvaluator,
    Tensor,
    act,
    degreewise_membership,
    dit_random,
    random_group_element,
    sample_sing,
    stream_rng,
    vanish_check,
)


def test_tensor_validation_and_json():
    with pytest.raises(ValueError):
        Tensor([])
    with pytest.raises(ValueError):
        Tensor([[[1, 2], [3, 4]], [[1]]])
    T = Tensor([[[Fraction(1, 2), 0], [0, -3]]])
    assert Tensor.from_json(T.to_json()) == T
    assert T.to_json() == [[["1/2", "0/1"], ["0/1", "-3/1"]]]


def test_sample_deterministic():
    spec = CompressionSpec(2, 3, 0, seed=17)
    assert sample_sing(spec) == sample_sing(spec)
    assert sample_sing(spec) != sample_sing(CompressionSpec(2, 3, 0, seed=18))


def test_sample_bad_s():
    with pytest.raises(ValueError):
        CompressionSpec(2, 3, 2)
    with pytest.raises(ValueError):
        CompressionSpec(2, 3, -1)


def _stack_rows(T):
    return [row for A in T.slices for row in A]


def _stack_cols(T):
    return [sum((list(A[i]) for A in T.slices), []) for i in range(T.n)]


@pytest.mark.parametrize("seed", range(5))
def test_sample_branches_n2(seed):
    # s = 0: all slices kill a common vector, so the row spaces coincide
    T0 = sample_sing(CompressionSpec(2, 4, 0, seed=seed))
    assert matrix_rank(_stack_rows(T0)) == 1
    # s = n - 1: all slices land in a common line
    T1 = sample_sing(CompressionSpec(2, 4, 1, seed=seed))
    assert matrix_rank(_stack_cols(T1)) == 1


def test_sample_explicit_basis_change():
    P = [[1, 1], [0, 1]]
    Q = [[2, 0], [1, 1]]
    T = sample_sing(CompressionSpec(2, 3, 0, seed=1, basis_change=(P, Q)))
    Qi = inverse(Q)
    for A in T.slices:
        B = matmul(matmul(inverse(P), A), Qi)
        assert B[0][0] == 0 and B[1][0] == 0
    with pytest.raises(ValueError):
        CompressionSpec(2, 3, 0, basis_change=([[1, 1], [1, 1]], Q))


@pytest.mark.parametrize("s", [0, 1, 2])
def test_fano_minors_vanish_for_every_s(s):
    T = sample_sing(CompressionSpec(3, 7, s, seed=3))
    R = PolyRing.matrices(3, 7)
    flat = flattening(FlatteningSpec(FlatteningMode.SLICE, 3, 7), R)
    ev = PointEvaluator(R, T)
    numeric = [[ev.value(flat[r, c]) for c in range(9)] for r in range(7)]
    assert matrix_rank(numeric) <= 6
    assert vanish_check(fano_minors(3, 7, R).elements, T).vanishes


def test_vanish_check_examples():
    R = PolyRing.matrices(2, 1)
    d = determinant(R.matrix(1))
    r = vanish_check([d], Tensor([identity(2)]))
    assert not r.vanishes and r.witness == d and r.first_failure == 0 and r.value == 1
    assert vanish_check([], Tensor([identity(2)])).vanishes
    assert vanish_check(candidate_basis(3), sample_sing(CompressionSpec(2, 3, 0, seed=4)))


def test_vanish_check_ring_mismatch():
    with pytest.raises(ValueError):
        vanish_check(candidate_basis(3), Tensor([identity(2)] * 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7), min_size=12, max_size=12),
       st.integers(0, 47))
def test_scaled_evaluation_agrees(vals, idx):
    R = PolyRing.matrices(2, 3)
    T = Tensor([[vals[4 * k:4 * k + 2], vals[4 * k + 2:4 * k + 4]] for k in range(3)])
    ev = PointEvaluator(R, T)
    f = block_cubics(3, R).elements[idx]
    assert ev.scaled_value(f) == f.evaluate(T) * ev.scale ** f.degree
    assert ev.is_zero(f) == (f.evaluate(T) == 0)


# --- group action ----------------------------------------------------------

def test_act_identity():
    T = sample_sing(CompressionSpec(2, 3, 1, seed=2))
    assert act(GroupElement.identity(2, 3), T) == T


def test_act_permutation_permutes_slices():
    T = Tensor([[[1, 0], [0, 0]], [[0, 2], [0, 0]], [[0, 0], [3, 0]]])
    U = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    g = GroupElement(U, identity(2), identity(2))
    B = act(g, T)
    # B_j = sum_i U[i][j] A_i
    assert B.slices == (T.slices[2], T.slices[0], T.slices[1])


def test_act_inverse_round_trip():
    rng = stream_rng(0, "t")
    for idx in range(5):
        g = random_group_element(rng, 2, 3)
        T = sample_sing(CompressionSpec(2, 3, idx % 2, seed=idx))
        assert act(g.inverse(), act(g, T)) == T


def test_group_element_rejects_singular():
    with pytest.raises(ValueError):
        GroupElement([[1, 2], [2, 4]], identity(2), identity(2))


def test_vanishing_invariant_under_action():
    G = candidate_basis(3)
    rng = stream_rng(1, "inv")
    for idx in range(10):
        g = random_group_element(rng, 2, 3)
        T = sample_sing(CompressionSpec(2, 3, idx % 2, seed=(1, idx)))
        assert vanish_check(G, act(g, T)).vanishes
    generic = Tensor([[[1, 2], [3, 5]], [[0, 1], [1, 0]], [[2, 0], [0, 1]]])
    g = random_group_element(rng, 2, 3)
    assert vanish_check(G, generic).vanishes == vanish_check(G, act(g, generic)).vanishes is False


# --- degreewise membership -------------------------------------------------

def test_membership_examples():
    R = PolyRing.matrices(2, 3)
    quadrics = det_pencil_generators(2, 3, R).elements
    d1 = determinant(R.matrix(1))
    assert degreewise_membership(R.x(1, 1, 1) * d1, quadrics, 3)
    red = buchberger(quadrics).reducer()
    outside = next(f for f in block_cubics(3, R).elements if red.normal_form(f))
    assert not degreewise_membership(outside, quadrics, 3)
    cubics = block_cubics(3, R).elements
    assert all(degreewise_membership(f, quadrics + cubics, 4)
               for f in quartic_products(3, R).elements[:4])


def test_membership_requires_matching_degree():
    R = PolyRing.matrices(2, 2)
    with pytest.raises(ValueError):
        degreewise_membership(R.x(1, 1, 1), det_pencil_generators(2, 2, R).elements, 3)
    assert degreewise_membership(R.zero(), det_pencil_generators(2, 2, R).elements, 3)


def test_membership_oracles_agree_on_random_elements():
    R = PolyRing.matrices(2, 2)
    quadrics = det_pencil_generators(2, 2, R).elements
    red = buchberger(quadrics).reducer()
    rng = random.Random(8)
    gens = R.gens()
    for trial in range(30):
        d = 3 + trial % 2
        f = R.zero()
        for q in quadrics:
            mult = R.zero()
            for _ in range(2):
                mon = R.one()
                for _ in range(d - 2):
                    mon = mon * rng.choice(gens)
                mult = mult + rng.randint(-3, 3) * mon
            f = f + mult * q
        if trial % 3 == 0:
            noise = R.one()
            for _ in range(d):
                noise = noise * rng.choice(gens)
            f = f + noise
        if not f:
            continue
        assert (red.normal_form(f).is_zero()) == degreewise_membership(f, quadrics, d)


# --- DIT -------------------------------------------------------------------

def test_dit_examples():
    assert dit_random(Tensor.zeros(2, 3), 10).all_singular
    T = Tensor([identity(2), [[0, 0], [0, 0]], [[0, 0], [0, 0]]])
    v = dit_random(T, 5, seed=1)
    assert v.kind == "WitnessFound" and v.witness[0] != 0
    assert v.determinant == v.witness[0] ** 2
    with pytest.raises(ValueError):
        dit_random(T, 0)


@pytest.mark.parametrize("trials", [1, 5, 30])
def test_dit_on_samples(trials):
    for idx in range(6):
        n = 2 + idx % 2
        T = sample_sing(CompressionSpec(n, 3, idx % n, seed=idx))
        assert dit_random(T, trials, seed=idx).kind == "AllSingular"


def test_dit_to_json():
    v = dit_random(Tensor([identity(2)]), 3, seed=0)
    data = v.to_json()
    assert data["verdict"] == "WitnessFound" and data["trials"] == 1
    assert isinstance(data["determinant"], str)


def test_poly_evaluate_with_tensor_matches_mapping():
    R = PolyRing.matrices(2, 1)
    f = Poly(R, {(0, 3): 2, (1,): -1})
    T = Tensor([[[3, 1], [0, 2]]])
    assert f.evaluate(T) == 2 * 3 * 2 - 1
