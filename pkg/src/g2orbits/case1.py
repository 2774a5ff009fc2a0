"""The prehomogeneous space (G1, W) with W = k^7.

Rational orbits of semistable vectors correspond to quadratic
extensions: the orbit of x is labelled by the square class of delta(x).
This module holds the explicit group elements used to move points
around, the reduction of a rational vector to the normal form
``t(0, 1, 0, 0, -delta/4, 0, 0)`` and the embedding of the special
unitary group SU(2,1) as the stabilizer of ``w_alpha``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fields import QuadField, squarefree_part
from .g2rep import GroupElem1, NotInG1Error, characters, delta, g1_membership
from .linalg import DimensionError, Mat, cayley

__all__ = [
    "LAMBDA3", "TAU", "NEG_TAU", "H0", "W", "block_g", "d_mat", "u1", "u2",
    "g_alpha", "g_alpha_factored", "w_alpha", "delta", "reduce_to_normal_form",
    "classify", "same_orbit", "su21_check", "su21_sample_cayley",
    "stabilizer_embed", "ReductionError",
]

_h = Fraction(1, 2)

LAMBDA3 = Mat.diag(1, 1, -1)

# the outer element: swaps <e2,e3,e4> with <e5,e6,e7> through LAMBDA3
TAU = Mat([
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, -1],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, -1, 0, 0, 0],
])
# det TAU = -1; -TAU has det 1 and trivial characters
NEG_TAU = -TAU

H0 = Mat([
    [0, -1, 0, 0, 1, 0, 0],
    [_h, _h, 0, 0, _h, 0, 0],
    [0, 0, _h, -_h, 0, -_h, -_h],
    [0, 0, _h, _h, 0, _h, -_h],
    [-_h, _h, 0, 0, _h, 0, 0],
    [0, 0, -_h, -_h, 0, _h, -_h],
    [0, 0, _h, -_h, 0, _h, _h],
])

W = tuple(Fraction(int(i == 0)) for i in range(7))


class ReductionError(ValueError):
    pass


def block_g(a, b1, b2, c1, c2, a1: Mat, a2: Mat, a3: Mat, a4: Mat) -> Mat:
    """Assemble the 1+3+3 block matrix g(a, b, c, A).

    ``b1, b2`` are row 3-vectors, ``c1, c2`` column 3-vectors.
    """
    rows = [[a, *b1, *b2]]
    for i in range(3):
        rows.append([c1[i], *a1.rows[i], *a2.rows[i]])
    for i in range(3):
        rows.append([c2[i], *a3.rows[i], *a4.rows[i]])
    return Mat(rows)


def d_mat(a: Mat) -> Mat:
    """d(A) = diag(1, A, tA^-1)."""
    if a.shape != (3, 3):
        raise DimensionError("d(A) needs a 3x3 matrix")
    return Mat.block_diag(Mat([[1]]), a, a.T.inverse())


def u1(a, b, c) -> Mat:
    return Mat([
        [1, 0, 0, 0, 2 * a, 2 * b, 2 * c],
        [a, 1, 0, 0, a * a, a * b, a * c],
        [b, 0, 1, 0, a * b, b * b, b * c],
        [c, 0, 0, 1, a * c, b * c, c * c],
        [0, 0, -c, b, 1, 0, 0],
        [0, c, 0, -a, 0, 1, 0],
        [0, -b, a, 0, 0, 0, 1],
    ])


def u2(d, e, f) -> Mat:
    return Mat([
        [1, 2 * d, 2 * e, 2 * f, 0, 0, 0],
        [0, 1, 0, 0, 0, f, -e],
        [0, 0, 1, 0, -f, 0, d],
        [0, 0, 0, 1, e, -d, 0],
        [d, d * d, d * e, d * f, 1, 0, 0],
        [e, d * e, e * e, e * f, 0, 1, 0],
        [f, d * f, e * f, f * f, 0, 0, 1],
    ])


@lru_cache(maxsize=None)
def g_alpha(field: QuadField) -> Mat:
    """The matrix with g^sigma = g TAU, written out entrywise."""
    a = field.alpha
    a2 = Fraction(field.d)
    return Mat([
        [0, -a, 0, 0, a, 0, 0],
        [a2 / 2, a2 / 2, 0, 0, a2 / 2, 0, 0],
        [0, 0, a / 2, -a / 2, 0, -a / 2, -a / 2],
        [0, 0, _h, _h, 0, _h, -_h],
        [-_h, _h, 0, 0, _h, 0, 0],
        [0, 0, -a / 2, -a / 2, 0, a / 2, -a / 2],
        [0, 0, a2 / 2, -a2 / 2, 0, a2 / 2, a2 / 2],
    ], field)


@lru_cache(maxsize=None)
def g_alpha_inverse(field: QuadField) -> Mat:
    return g_alpha(field).inverse()


def g_alpha_factored(field: QuadField) -> Mat:
    """alpha I7 . diag(1, a, 1, 1/a, 1/a, 1, a) . H0 -- cross-check of g_alpha."""
    a = field.alpha
    ai = 1 / a
    return (Mat.diag(1, a, 1, ai, ai, 1, a, field=field) @ H0) * a


def w_alpha(field: QuadField) -> tuple:
    return (Fraction(0), Fraction(field.d, 2), Fraction(0), Fraction(0),
            Fraction(-1, 2), Fraction(0), Fraction(0))


# -- reduction ----------------------------------------------------------------


def sl3_to_e1(v) -> Mat:
    """An A in SL(3) with A v = e1 (first nonzero coordinate as pivot)."""
    p = next((i for i, x in enumerate(v) if x), None)
    if p is None:
        raise ReductionError("cannot move the zero vector to e1")
    others = [i for i in range(3) if i != p]
    cols = [list(v), [int(r == others[0]) for r in range(3)], [int(r == others[1]) for r in range(3)]]
    m = Mat(cols).T
    dt = m.det()
    cols[2] = [x / dt for x in cols[2]]
    return Mat(cols).T.inverse()


def _require_g1(name: str, m: Mat) -> GroupElem1:
    c = g1_membership(m)
    if c is None:
        raise NotInG1Error(f"reduction factor {name} is not in G1")
    c, chi, chi_prime = characters(m, c=c)
    if chi != 1:
        raise ReductionError(f"reduction factor {name} rescales delta by {chi}")
    return GroupElem1(m, c, chi_prime)


def reduce_to_normal_form(x, trace: list | None = None) -> tuple[GroupElem1, tuple]:
    """Move a rational semistable x to ``t(0, 1, 0, 0, -delta(x)/4, 0, 0)``.

    Returns ``(g, y)`` with ``y = g x``; g lies in G1 and has determinant 1.
    If ``trace`` is a list, ``(name, matrix)`` pairs of the applied
    factors are appended to it in order.
    """
    x = tuple(Fraction(v) for v in x)
    if len(x) != 7:
        raise DimensionError("expected a 7-vector")
    dx = delta(x)
    if not dx:
        raise ReductionError("delta(x) = 0: the vector is not semistable")
    factors: list[tuple[str, Mat]] = []

    def step(name, m):
        nonlocal x
        factors.append((name, m))
        x = m.apply(x)

    if not any(x[1:]):
        step("u1(1,0,0)", u1(1, 0, 0))
    if not any(x[1:4]):
        step("-tau", NEG_TAU)
    step("d(A) to e1", d_mat(sl3_to_e1(x[1:4])))
    step(f"u2({-x[0] / 2},0,0)", u2(-x[0] / 2, 0, 0))
    if x[2] or x[3]:
        step("d(A) clear x3,x4", d_mat(Mat([[1, 0, 0], [-x[2], 1, 0], [-x[3], 0, 1]])))
    x5 = x[4]
    if not x5:
        raise ReductionError("x5 vanished on a semistable vector")
    if x[5] or x[6]:
        b = Mat([[1, 0, 0], [-x[5] / x5, 1, 0], [-x[6] / x5, 0, 1]])
        step("d(A) clear x6,x7", d_mat(b.T.inverse()))

    g = Mat.identity(7)
    elem = None
    for name, m in factors:
        fe = _require_g1(name, m)
        elem = fe if elem is None else fe @ elem
        g = m @ g
        if trace is not None:
            trace.append((name, m))
    if elem is None:
        elem = GroupElem1(g, Fraction(1), Fraction(1))
    if g.det() != 1:
        raise ReductionError("reduction product is not in SL(7)")
    target = (0, 1, 0, 0, -dx / 4, 0, 0)
    if x != tuple(Fraction(t) for t in target):
        raise ReductionError(f"reduction ended at {x}, expected {target}")
    return elem, x


def classify(x) -> int:
    """Square class of delta(x); 1 means the split orbit of w."""
    dx = delta(tuple(x))
    if not dx:
        raise ReductionError("delta(x) = 0: the vector is not semistable")
    return squarefree_part(dx)


def same_orbit(x, y) -> bool:
    cx, cy = classify(x), classify(y)
    _, rx = reduce_to_normal_form(x)
    _, ry = reduce_to_normal_form(y)
    if (squarefree_part(-4 * rx[4]) == squarefree_part(-4 * ry[4])) != (cx == cy):
        raise ArithmeticError("normal forms disagree with the square classes")
    return cx == cy


# -- SU(2,1) and the stabilizer of w_alpha -----------------------------------


def su21_check(a: Mat) -> bool:
    """det A = 1 and *A LAMBDA3 A = LAMBDA3."""
    if a.shape != (3, 3):
        return False
    return a.det() == 1 and a.star @ LAMBDA3 @ a == LAMBDA3


def is_lambda_skew(s: Mat, lam: Mat) -> bool:
    return s.star @ lam == -(lam @ s)


def su21_sample_cayley(field: QuadField, s: Mat) -> Mat:
    """Cayley transform of a LAMBDA3-skew S, corrected to determinant 1."""
    if s.shape != (3, 3):
        raise DimensionError("S must be 3x3")
    if not is_lambda_skew(s, LAMBDA3):
        raise ValueError("S is not skew for LAMBDA3: *S L != -L S")
    a0 = cayley(Mat(s.rows, field))
    t = 1 / a0.det()
    return a0 @ Mat.diag(1, 1, t, field=field)


def stabilizer_embed(a: Mat, field: QuadField) -> GroupElem1:
    """g_alpha d(A) g_alpha^-1 for A in SU(2,1): a rational element fixing w_alpha."""
    if not su21_check(a):
        raise ValueError("A is not in SU(2,1)")
    g = g_alpha(field) @ d_mat(a) @ g_alpha_inverse(field)
    if not g.is_rational():
        raise ArithmeticError("stabilizer element has irrational entries")
    wa = w_alpha(field)
    if g.apply(wa) != wa:
        raise ArithmeticError("stabilizer element does not fix w_alpha")
    c = g1_membership(g)
    if c is None:
        raise NotInG1Error("stabilizer element is not in G1")
    c, _chi, chi_prime = characters(g, c=c)
    return GroupElem1(g, c, chi_prime)
