"""The prehomogeneous space (G1 x GL(2), W (x) k^2).

A point is a pair ``(x1, x2)`` of 7-vectors, read as the linear form
``v1 x1 + v2 x2``.  ``(g1, g2)`` acts by ``x -> g1 M(v g2)``, i.e. on the
7x2 matrix ``X = [x1 x2]`` by ``X -> g1 X t(g2)``.  The binary quadratic
form ``F_x(v) = delta(v1 x1 + v2 x2)`` transforms by
``F_{gx}(v) = chi(g1) F_x(v g2)``; its splitting field labels the orbit up
to a norm class s in k^x / N(K^x), realised by the representative
``w_alpha(s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import case1
from .fields import (
    QuadElem,
    QuadField,
    is_norm,
    norm,
    norm_witness,
    rational_sqrt,
    squarefree_part,
    to_rational,
)
from .g2rep import GroupElem1, characters, delta, g1_membership
from .linalg import DimensionError, Mat, _norm_entry, hermitian_diagonalize, is_hermitian
from .cohomology import NormClass

LAMBDA2 = Mat.diag(1, -1)
TAU1 = case1.TAU
TAU2 = Mat([[0, 1], [1, 0]])
# diag(1, LAMBDA2): the 3x3 form sitting over the 2x2 one
LAMBDA12 = Mat.diag(1, 1, -1)

_E2 = tuple(Fraction(int(i == 1)) for i in range(7))
_E5 = tuple(Fraction(int(i == 4)) for i in range(7))
W = (_E2, _E5)


class SemistabilityError(ValueError):
    pass


# -- points, group elements, forms ------------------------------------------


def _pair(x) -> tuple[tuple, tuple]:
    x1, x2 = x
    if len(x1) != 7 or len(x2) != 7:
        raise DimensionError("a pair of 7-vectors is expected")
    return tuple(x1), tuple(x2)


def act(g1: Mat, g2: Mat, x) -> tuple[tuple, tuple]:
    x1, x2 = _pair(x)
    y1, y2 = g1.apply(x1), g1.apply(x2)
    (p, q), (r, t) = g2.rows
    return (
        tuple(_norm_entry(p * a + q * b) for a, b in zip(y1, y2)),
        tuple(_norm_entry(r * a + t * b) for a, b in zip(y1, y2)),
    )


@dataclass(frozen=True)
class GroupElem2:
    g1: Mat
    g2: Mat

    def __post_init__(self):
        if self.g1.shape != (7, 7) or self.g2.shape != (2, 2):
            raise DimensionError("expected a (7x7, 2x2) pair")

    def act(self, x):
        return act(self.g1, self.g2, x)

    def __matmul__(self, other: GroupElem2) -> GroupElem2:
        return GroupElem2(self.g1 @ other.g1, self.g2 @ other.g2)

    def inverse(self) -> GroupElem2:
        return GroupElem2(self.g1.inverse(), self.g2.inverse())

    def sigma(self) -> GroupElem2:
        return GroupElem2(self.g1.sigma(), self.g2.sigma())

    def is_rational(self) -> bool:
        return self.g1.is_rational() and self.g2.is_rational()

    def in_group(self) -> bool:
        return bool(self.g2.det()) and g1_membership(self.g1) is not None

    def g1_element(self) -> GroupElem1:
        c, _chi, chi_prime = characters(self.g1)
        return GroupElem1(self.g1, c, chi_prime)

    @classmethod
    def identity(cls) -> GroupElem2:
        return cls(Mat.identity(7), Mat.identity(2))


TAU = GroupElem2(TAU1, TAU2)


def kernel_element(t) -> GroupElem2:
    """(t^-1 I7, t I2), which acts trivially."""
    return GroupElem2(Mat.identity(7) * (1 / Fraction(t)), Mat.identity(2) * t)


@dataclass(frozen=True)
class BinForm:
    """A v1^2 + B v1 v2 + C v2^2."""

    A: object
    B: object
    C: object

    @property
    def disc(self):
        return self.B * self.B - 4 * self.A * self.C

    def __call__(self, v1, v2):
        return self.A * v1 * v1 + self.B * v1 * v2 + self.C * v2 * v2

    def compose(self, g2: Mat) -> BinForm:
        """The form v -> F(v g2)."""
        (p, q), (r, t) = g2.rows
        a, b, c = self.A, self.B, self.C
        return BinForm(
            a * p * p + b * p * q + c * q * q,
            2 * a * p * r + b * (p * t + q * r) + 2 * c * q * t,
            a * r * r + b * r * t + c * t * t,
        )

    def scale(self, k) -> BinForm:
        return BinForm(k * self.A, k * self.B, k * self.C)

    def is_semistable(self) -> bool:
        return bool(self.disc)


def binary_form(x) -> BinForm:
    x1, x2 = _pair(x)
    a = delta(x1)
    c = delta(x2)
    b = delta(tuple(p + q for p, q in zip(x1, x2))) - a - c
    return BinForm(a, b, c)


def splitting_class(x) -> int:
    """Square class of disc F_x; 1 is the split fibre."""
    disc = binary_form(x).disc
    if not disc:
        raise SemistabilityError("F_x is degenerate: the point is not semistable")
    return squarefree_part(to_rational(disc))


# -- constants ----------------------------------------------------------------


def d1(a: Mat) -> Mat:
    dt = a.det()
    return Mat.block_diag(Mat([[1]]), Mat([[1 / dt]]), a, Mat([[dt]]), a.T.inverse())


def d2(a: Mat) -> Mat:
    dt = a.det()
    return Mat.diag(dt, 1 / dt)


def d_pair(a: Mat) -> GroupElem2:
    """GL(2) embedded in the stabilizer of w."""
    if a.shape != (2, 2):
        raise DimensionError("d(A) needs a 2x2 matrix")
    return GroupElem2(d1(a), d2(a))


@lru_cache(maxsize=None)
def g_alpha(field: QuadField) -> GroupElem2:
    a = field.alpha
    return GroupElem2(case1.g_alpha(field), Mat([[1, 1], [a, -a]], field))


@lru_cache(maxsize=None)
def g_alpha_inverse(field: QuadField) -> GroupElem2:
    return GroupElem2(case1.g_alpha_inverse(field), g_alpha(field).g2.inverse())


def w_alpha(field: QuadField):
    return g_alpha(field).act(W)


def H(s) -> Mat:
    return Mat.diag(-Fraction(s), 1)


def h(s) -> Mat:
    return Mat.diag(-1 / Fraction(s), -1)


def H_bar(s) -> Mat:
    s = Fraction(s)
    return Mat.diag(1 / s, -s, 1)


def h_bar(s) -> Mat:
    s = Fraction(s)
    return Mat.diag(s, -1 / s, -1)


def w_of(s):
    s = Fraction(s)
    p, m = (1 + s) / 2, (1 - s) / 2
    z = Fraction(0)
    return ((z, z, p, m, z, z, z), (z, z, z, z, z, p, -m))


def A_of(s) -> Mat:
    s = Fraction(s)
    return Mat([
        [0, 0, 1],
        [(1 + s) / 2, (1 - 1 / s) / 2, 0],
        [(1 - s) / 2, (-1 - 1 / s) / 2, 0],
    ])


def A_of_product(s) -> Mat:
    """A(s) as the five-factor product it is built from."""
    s = Fraction(s)
    h_ = Fraction(1, 2)
    return (
        Mat([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        @ Mat([[h_, -h_, 0], [h_, h_, 0], [0, 0, 1]])
        @ Mat.diag(-1 / s, 1, 1)
        @ Mat([[1, 1, 0], [-1, 1, 0], [0, 0, 1]])
        @ Mat.diag(-s, 1, 1)
    )


def B1_of(s) -> Mat:
    return LAMBDA12 @ A_of(s).star.inverse() @ LAMBDA12


def B1_displayed(s) -> Mat:
    s = Fraction(s)
    return Mat([
        [0, 0, -1],
        [(1 + 1 / s) / 2, (1 - s) / 2, 0],
        [-(1 - 1 / s) / 2, (1 + s) / 2, 0],
    ])


def B2_of(s) -> Mat:
    return Mat.diag(Fraction(s), 1)


def B_of(s) -> GroupElem2:
    b1 = B1_of(s)
    return GroupElem2(Mat.block_diag(Mat([[1]]), b1, b1.star.inverse()), B2_of(s))


def representative(field: QuadField, s):
    """w_alpha(s) = g_alpha w(s); every coordinate is rational."""
    s = Fraction(s)
    if not s:
        raise ValueError("s must be nonzero")
    x1, x2 = g_alpha(field).act(w_of(s))
    if not all(isinstance(c, Fraction) for c in x1 + x2):
        raise ArithmeticError("w_alpha(s) has irrational coordinates")
    return x1, x2


def same_orbit_constructed(field: QuadField, s1, s2) -> bool:
    """Whether w_alpha(s1) and w_alpha(s2) share a rational orbit."""
    s1, s2 = Fraction(s1), Fraction(s2)
    if not s1 or not s2:
        raise ValueError("s must be nonzero")
    return is_norm(field, s1 / s2) or is_norm(field, s1 * s2)


def classify_constructed(x, g: GroupElem2, field: QuadField, s) -> NormClass:
    """Norm class of x, given a rational g with x = g w_alpha(s)."""
    if not g.is_rational() or not g.in_group():
        raise ValueError("g must be a rational element of G")
    if g.act(representative(field, s)) != _pair(x):
        raise ValueError("x is not g . w_alpha(s)")
    return NormClass(field, Fraction(s))


# -- explicit identities ------------------------------------------------------


def twist_identity_sides(s) -> tuple[GroupElem2, GroupElem2]:
    b = B_of(s)
    bi = b.inverse()
    lhs = bi @ TAU @ b.sigma() @ TAU
    return lhs, d_pair(h(s))


def verify_twist_identity(field: QuadField | None, s) -> bool:
    b = B_of(s)
    bi = b.inverse()
    plain = bi @ TAU @ b @ TAU
    twisted = bi @ TAU @ b.sigma() @ TAU
    return plain == twisted == d_pair(h(s))


def conjugate_identity_rhs(s) -> GroupElem2:
    """((1; 0, Hbar^-1; Hbar, 0), (0, 1/s; s, 0)), the value forced by (B, tau)."""
    s = Fraction(s)
    hb = H_bar(s)
    hbi = hb.inverse()
    rows = [[1] + [0] * 6]
    for i in range(3):
        rows.append([0, 0, 0, 0] + list(hbi.rows[i]))
    for i in range(3):
        rows.append([0] + list(hb.rows[i]) + [0, 0, 0])
    return GroupElem2(Mat(rows), Mat([[0, 1 / s], [s, 0]]))


def verify_conjugate_identity(field: QuadField | None, s) -> bool:
    b = B_of(s)
    return b.inverse() @ TAU @ b == conjugate_identity_rhs(s)


def verify_tau_conjugation(s) -> bool:
    """tau d(h(s)) tau = d(h(1/s))."""
    s = Fraction(s)
    return TAU @ d_pair(h(s)) @ TAU == d_pair(h(1 / s))


# -- Hermitian normalization ---------------------------------------------------


def _witness_value(a, b, x) -> Fraction:
    x1, x2, x3 = x
    return -norm(x1) / (a * b) + a * norm(x2) + b * norm(x3)


def is_witness(a, b, x) -> bool:
    return any(x) and _witness_value(a, b, x) == 0


def _norm_solution(field: QuadField, t, bound: int):
    """Some x with N(x) = t, searched through the squarefree part of t."""
    t = Fraction(t)
    m = squarefree_part(t)
    r = rational_sqrt(t / m)
    w = norm_witness(field, m, bound)
    return None if w is None or r is None else w * r


def _norms_by_height(field: QuadField, bound: int) -> list[tuple[int, Fraction, QuadElem]]:
    """(height, N(x), x) for integral x = p + q alpha, one x per norm value."""
    best: dict = {}
    for p in range(-bound, bound + 1):
        for q in range(0, bound + 1):
            hgt = max(abs(p), q)
            x = field(p, q)
            n = x.norm()
            if n not in best or best[n][0] > hgt:
                best[n] = (hgt, n, x)
    return sorted(best.values(), key=lambda e: (e[0], abs(e[1]), e[1]))


def find_isotropic_witness(a, b, field: QuadField, bound: int):
    """Nonzero (x1, x2, x3) in K^3 with -N(x1)/(ab) + a N(x2) + b N(x3) = 0.

    a and b are first replaced by their squarefree parts a0, b0 (the
    solution is rescaled back at the end).  x2, x3 then run over integral
    elements of height <= ``bound``, one per norm value, until
    t = a0 b0 (a0 N(x2) + b0 N(x3)) is a norm; x1 solves N(x1) = t.
    None means the box is exhausted, which proves nothing.
    """
    a, b = Fraction(a), Fraction(b)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if not a or not b:
        raise ValueError("a and b must be nonzero")
    if field.d < 0 and a < 0 and b < 0:
        # -1/ab < 0 as well: the form is definite and has no isotropic vector
        return None
    a0, b0 = squarefree_part(a), squarefree_part(b)
    ra, rb = rational_sqrt(a / a0), rational_sqrt(b / b0)
    table = _norms_by_height(field, bound)
    wbound = 2 * bound
    cache: dict = {}
    for i, (h2, n2, y2) in enumerate(table):
        for j, (h3, n3, y3) in enumerate(table):
            # visit pairs in order of max height
            if h3 > h2 or (h3 == h2 and j > i):
                continue
            for (m2, z2), (m3, z3) in (((n2, y2), (n3, y3)), ((n3, y3), (n2, y2))):
                if not m2 and not m3:
                    continue
                t = a0 * b0 * (a0 * m2 + b0 * m3)
                if t == 0:
                    x1 = field(0)
                else:
                    if t not in cache:
                        cache[t] = _norm_solution(field, t, wbound) if is_norm(field, t) else None
                    x1 = cache[t]
                    if x1 is None:
                        continue
                x = (field(0) + x1 * ra, z2 / (ra * rb), field(0) + z3 / (rb * rb))
                if is_witness(a, b, x):
                    return x
    return None


def normalize_hermitian(herm: Mat, field: QuadField, witness=None, bound: int = 20):
    """Find (A, s) with ``A H *A = diag(-s, 1)``.

    H is first diagonalized to diag(a, b) by ``hermitian_diagonalize``;
    a supplied witness refers to that diagonal form.  Without one, a
    witness is searched up to ``bound``.
    """
    if herm.shape != (2, 2) or not is_hermitian(herm):
        raise ValueError("expected a 2x2 Hermitian matrix")
    if not herm.det():
        raise ValueError("Hermitian matrix is degenerate")
    if witness is None and herm.is_diagonal() and herm[1, 1] == 1:
        return Mat.identity(2, field), -to_rational(herm[0, 0])
    p, dmat = hermitian_diagonalize(herm, field)
    a, b = (to_rational(x) for x in dmat.diagonal())
    if witness is None:
        witness = find_isotropic_witness(a, b, field, bound)
        if witness is None:
            raise LookupError(f"no isotropic witness within bound {bound}")
    x1, x2, x3 = (field(0) + x for x in witness)
    if not is_witness(a, b, (x1, x2, x3)):
        raise ValueError("invalid witness")
    if x1:
        z1, z2 = b * x3 / x1, a * x2 / x1
        m = Mat([[b * z2.conjugate(), -a * z1.conjugate()], [z1, z2]], field)
        s = -a * b
        total = m @ p
    else:
        z = x2 / x3
        c1 = Mat.diag(z, 1, field=field)
        rot = Mat([[1, 1], [-1, 1]])
        c2 = rot.inverse() @ Mat.diag(1 / b, 1) @ rot
        s = Fraction(1)
        total = c2 @ c1 @ p
    if total @ herm @ total.star != H(s):
        raise ArithmeticError("normalization failed to reach diag(-s, 1)")
    return total, s


# -- unitary groups and the stabilizer of w_alpha(s) ---------------------------


def u_H_check(a: Mat, field: QuadField, s) -> bool:
    """A invertible with *A H(s) A = H(s)."""
    if a.shape != (2, 2) or not a.det():
        return False
    hs = H(s)
    return a.star @ hs @ a == hs


def stabilizer_embed2(a: Mat, field: QuadField, s) -> GroupElem2:
    """(g_alpha B(s)) d(A) (g_alpha B(s))^-1 for A unitary for H(s)."""
    if not u_H_check(a, field, s):
        raise ValueError("A is not unitary for H(s)")
    b = B_of(s)
    conj = g_alpha(field) @ b
    conj_inv = b.inverse() @ g_alpha_inverse(field)
    g = conj @ d_pair(a) @ conj_inv
    if not g.is_rational():
        raise ArithmeticError("stabilizer element has irrational entries")
    ws = representative(field, s)
    if g.act(ws) != ws:
        raise ArithmeticError("stabilizer element does not fix w_alpha(s)")
    if not g.in_group():
        raise ArithmeticError("stabilizer element is not in G")
    return g
