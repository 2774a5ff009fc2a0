from __future__ import annotations

import random
from fractions import Fraction

import pytest

from g2orbits import case1, sampling
from g2orbits.fields import QuadField, squarefree_part
from g2orbits.g2rep import characters, delta, g1_membership
from g2orbits.linalg import Mat, SingularMatrixError

FIELDS = [QuadField(d) for d in (-1, 2, -2, 3, -3, 5, -5, 7, 10)]
Z = Fraction(0)


def test_delta_examples():
    assert delta(case1.W) == 1
    assert delta((0, 1, 0, 0, Fraction(5, 3), 0, 0)) == Fraction(-20, 3)
    for K in FIELDS:
        assert delta(case1.w_alpha(K)) == K.d


def test_block_builder_matches_d():
    a = sampling.rand_sl3(random.Random(0))
    z3 = Mat.zeros(3)
    assert case1.block_g(1, (0,) * 3, (0,) * 3, (0,) * 3, (0,) * 3, a, z3, z3, a.T.inverse()) == case1.d_mat(a)


def test_g_alpha_identities():
    for K in FIELDS:
        g = case1.g_alpha(K)
        assert g.sigma() == g @ case1.TAU
        assert case1.g_alpha_factored(K) == g
        assert g.apply(case1.W) == case1.w_alpha(K)
        assert case1.w_alpha(K) == (Z, Fraction(K.d, 2), Z, Z, Fraction(-1, 2), Z, Z)


def test_tau_and_h0():
    assert case1.TAU.det() == -1 and case1.NEG_TAU.det() == 1
    assert characters(case1.NEG_TAU) == (1, 1, 1)
    assert case1.H0.det() == 1 and g1_membership(case1.H0) == 1


def test_reduce_examples():
    _, y = case1.reduce_to_normal_form(case1.W)
    assert y == (0, 1, 0, 0, Fraction(-1, 4), 0, 0)
    for K in FIELDS:
        _, y = case1.reduce_to_normal_form(case1.w_alpha(K))
        assert y[4] == Fraction(-K.d, 4)


def test_reduce_starts_with_u1_on_e1_multiples():
    trace = []
    x = (Fraction(3),) + (Z,) * 6
    g, y = case1.reduce_to_normal_form(x, trace)
    assert trace[0][0] == "u1(1,0,0)"
    assert case1.u1(1, 0, 0).apply(x)[1] != 0
    assert g.act(x) == y


def test_reduce_uses_tau_swap():
    trace = []
    case1.reduce_to_normal_form((1, 0, 0, 0, 2, 3, 0), trace)
    assert trace[0][0] == "-tau"


def test_reduce_random_and_factor_membership():
    rng = random.Random(1)
    for _ in range(40):
        x = sampling.rand_vec7(rng, 100)
        trace = []
        g, y = case1.reduce_to_normal_form(x, trace)
        assert y == (0, 1, 0, 0, -delta(x) / 4, 0, 0)
        assert g.m.det() == 1 and g.act(x) == y
        for _name, m in trace:
            assert characters(m)[1] == 1


def test_reduce_rejects_unstable():
    with pytest.raises(case1.ReductionError):
        case1.reduce_to_normal_form((0, 1, 0, 0, 0, 0, 0))


def test_classify_examples():
    assert case1.classify(case1.W) == 1
    assert case1.classify(case1.w_alpha(QuadField(-1))) == -1
    assert case1.classify((0, 1, 0, 0, 2, 0, 0)) == -2
    with pytest.raises(case1.ReductionError):
        case1.classify((0,) * 7)


def test_same_orbit_examples():
    assert case1.same_orbit(case1.W, (0, 1, 0, 0, Fraction(-1, 4), 0, 0))
    w_m1 = case1.w_alpha(QuadField(-1))
    w_m4 = (Z, Fraction(-2), Z, Z, Fraction(-1, 2), Z, Z)  # d = -4 in the same formula
    assert case1.same_orbit(w_m1, w_m4)
    assert not case1.same_orbit(w_m1, case1.w_alpha(QuadField(2)))


def test_classify_constant_on_orbits():
    rng = random.Random(2)
    for _ in range(30):
        g = sampling.rand_g1_word(rng)
        x = sampling.rand_vec7(rng, 30)
        assert case1.classify(g.apply(x)) == case1.classify(x)


def test_su21_check_examples():
    K = QuadField(-1)
    assert case1.su21_check(Mat.identity(3))
    x = K(Fraction(3, 5), Fraction(4, 5))
    assert x.norm() == 1
    a = Mat.diag(x, 1 / (x * x.conjugate()), x.conjugate(), field=K)
    assert case1.su21_check(a)
    assert not case1.su21_check(Mat.diag(2, 1, Fraction(1, 2)))


def test_cayley_sampling():
    K = QuadField(-1)
    assert case1.su21_sample_cayley(K, Mat.zeros(3)) == Mat.identity(3)
    with pytest.raises(ValueError):
        case1.su21_sample_cayley(K, Mat.diag(1, 0, 0))
    rng = random.Random(3)
    for _ in range(10):
        assert case1.su21_check(sampling.rand_su21(rng, K))


def test_stabilizer_embed():
    K = QuadField(2)
    assert case1.stabilizer_embed(Mat.identity(3), K).m == Mat.identity(7)
    rng = random.Random(4)
    for K in FIELDS[:4]:
        for _ in range(5):
            g = case1.stabilizer_embed(sampling.rand_su21(rng, K), K)
            assert g.m.is_rational() and g.act(case1.w_alpha(K)) == case1.w_alpha(K)


def test_stabilizer_negative_control():
    K = QuadField(-1)
    a = Mat.diag(K(1, 1), 1 / K(1, 1), 1, field=K)  # in SL(3, K) but not unitary
    assert a.det() == 1 and not case1.su21_check(a)
    with pytest.raises(ValueError):
        case1.stabilizer_embed(a, K)
    g = case1.g_alpha(K) @ case1.d_mat(a) @ case1.g_alpha_inverse(K)
    assert not g.is_rational()


def test_classify_matches_delta_square_class():
    rng = random.Random(5)
    for _ in range(30):
        x = sampling.rand_vec7(rng, 50)
        assert case1.classify(x) == squarefree_part(delta(x))
