"""Seeded random inputs for the property checks and the verify battery."""

from __future__ import annotations

import random
from fractions import Fraction

from . import case1, case2
from .fields import QuadElem, QuadField
from .g2rep import delta
from .linalg import Mat, SingularMatrixError, cayley


def rand_rat(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q or not nonzero:
            return q


def rand_int_rat(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height))


def rand_quad(rng: random.Random, field: QuadField, height: int) -> QuadElem:
    return field(rand_rat(rng, height), rand_rat(rng, height))


def rand_invertible(rng: random.Random, n: int, height: int = 5) -> Mat:
    while True:
        m = Mat([[rand_rat(rng, height) for _ in range(n)] for _ in range(n)])
        if m.det():
            return m


def rand_sl3(rng: random.Random, height: int = 5) -> Mat:
    m = rand_invertible(rng, 3, height)
    dt = m.det()
    rows = [list(r) for r in m.rows]
    for r in rows:
        r[2] = r[2] / dt
    return Mat(rows)


def rand_vec7(rng: random.Random, height: int = 100) -> tuple:
    """Rational 7-vector with delta != 0, coordinate heights <= height."""
    while True:
        x = tuple(rand_rat(rng, height) for _ in range(7))
        if delta(x):
            return x


def rand_g1_generator(rng: random.Random, height: int = 4) -> Mat:
    kind = rng.choice(("u1", "u2", "d", "tau", "scalar"))
    if kind == "u1":
        return case1.u1(*(rand_rat(rng, height) for _ in range(3)))
    if kind == "u2":
        return case1.u2(*(rand_rat(rng, height) for _ in range(3)))
    if kind == "d":
        return case1.d_mat(rand_sl3(rng, height))
    if kind == "tau":
        return case1.TAU
    return Mat.identity(7) * rand_rat(rng, height, nonzero=True)


def rand_g1_word(rng: random.Random, length: int = 3, height: int = 4) -> Mat:
    g = Mat.identity(7)
    for _ in range(length):
        g = rand_g1_generator(rng, height) @ g
    return g


def rand_case2_word(rng: random.Random, length: int = 3, height: int = 4) -> case2.GroupElem2:
    g = case2.GroupElem2.identity()
    for _ in range(length):
        kind = rng.choice(("g1", "gl2", "d", "tau", "kernel"))
        if kind == "g1":
            step = case2.GroupElem2(rand_g1_generator(rng, height), Mat.identity(2))
        elif kind == "gl2":
            step = case2.GroupElem2(Mat.identity(7), rand_invertible(rng, 2, height))
        elif kind == "d":
            step = case2.d_pair(rand_invertible(rng, 2, height))
        elif kind == "tau":
            step = case2.TAU
        else:
            step = case2.kernel_element(rand_rat(rng, height, nonzero=True))
        g = step @ g
    return g


def rand_pair(rng: random.Random, height: int = 20) -> tuple:
    while True:
        x = (tuple(rand_rat(rng, height) for _ in range(7)),
             tuple(rand_rat(rng, height) for _ in range(7)))
        if case2.binary_form(x).disc:
            return x


def rand_skew_hermitian(rng: random.Random, field: QuadField, n: int, height: int = 3) -> Mat:
    """K with *K = -K: imaginary diagonal, K[j][i] = -sigma(K[i][j])."""
    k = [[field(0)] * n for _ in range(n)]
    for i in range(n):
        k[i][i] = field(0, rand_rat(rng, height))
        for j in range(i + 1, n):
            z = rand_quad(rng, field, height)
            k[i][j] = z
            k[j][i] = -z.conjugate()
    return Mat(k, field)


def rand_form_skew(rng: random.Random, field: QuadField, form: Mat, height: int = 3) -> Mat:
    """S with *S form = -form S, i.e. S = form^-1 K for skew-Hermitian K."""
    return form.inverse() @ rand_skew_hermitian(rng, field, form.nrows, height)


def rand_su21(rng: random.Random, field: QuadField, height: int = 3) -> Mat:
    while True:
        s = rand_form_skew(rng, field, case1.LAMBDA3, height)
        try:
            return case1.su21_sample_cayley(field, s)
        except SingularMatrixError:
            continue


def rand_unitary_H(rng: random.Random, field: QuadField, s, height: int = 3) -> Mat:
    form = case2.H(s)
    while True:
        sk = rand_form_skew(rng, field, form, height)
        try:
            return cayley(sk)
        except SingularMatrixError:
            continue


def rand_isotropic_diagonal(rng: random.Random, field: QuadField, height: int = 6) -> tuple:
    """(a, b) in k^x for which diag(-1/ab, a, b) is equivalent to diag(1, 1, -1).

    For imaginary K this excludes exactly a, b both negative.
    """
    while True:
        a = rand_rat(rng, height, nonzero=True)
        b = rand_rat(rng, height, nonzero=True)
        if field.d < 0 and a < 0 and b < 0:
            continue
        return a, b
