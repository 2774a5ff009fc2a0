"""The exterior cube of the standard 7-dimensional representation.

Trivectors are stored in the basis ``e_ijk`` (i < j < k) in lexicographic
order 123, 124, ..., 567.  A matrix g acts through its third exterior
power, whose (I, J) entry is the 3x3 minor of g on rows I and columns J.
The group G1 is the set of g with ``g . wbar = c(g) wbar``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .linalg import DimensionError, Mat, _norm_entry

# zero-based triples
TRIPLES: tuple[tuple[int, int, int], ...] = tuple(combinations(range(7), 3))
TRIPLE_INDEX = {t: n for n, t in enumerate(TRIPLES)}


class NotInG1Error(ValueError):
    """The matrix does not rescale wbar."""


def _sort_sign(idx) -> tuple[int, tuple]:
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


@dataclass(frozen=True)
class TriVector:
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != 35:
            raise DimensionError("a trivector has 35 coordinates")
        object.__setattr__(self, "coords", tuple(_norm_entry(x) for x in self.coords))

    @classmethod
    def from_terms(cls, terms: dict) -> TriVector:
        """Build from ``{(i, j, k): coeff}`` with 1-based, unordered indices."""
        coords = [Fraction(0)] * 35
        for key, coef in terms.items():
            sign, t = _sort_sign([i - 1 for i in key])
            if len(set(t)) != 3 or not all(0 <= i < 7 for i in t):
                raise ValueError(f"bad basis index {key}")
            coords[TRIPLE_INDEX[t]] += sign * coef
        return cls(tuple(coords))

    def __getitem__(self, key):
        if isinstance(key, int):
            return self.coords[key]
        sign, t = _sort_sign([i - 1 for i in key])
        return sign * self.coords[TRIPLE_INDEX[t]]

    def __add__(self, other):
        return TriVector(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def scale(self, c) -> TriVector:
        return TriVector(tuple(c * x for x in self.coords))

    def __rmul__(self, c):
        return self.scale(c)

    def support(self) -> list[int]:
        return [n for n, x in enumerate(self.coords) if x]


# e234 + e567 + e1 ^ (e25 + e36 + e47)
W_BAR = TriVector.from_terms(
    {(2, 3, 4): 1, (5, 6, 7): 1, (1, 2, 5): 1, (1, 3, 6): 1, (1, 4, 7): 1}
)


def _minor(rows, I, J):
    (i0, i1, i2), (j0, j1, j2) = I, J
    r0, r1, r2 = rows[i0], rows[i1], rows[i2]
    a, b, c = r0[j0], r0[j1], r0[j2]
    d, e, f = r1[j0], r1[j1], r1[j2]
    g, h, i = r2[j0], r2[j1], r2[j2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _check7(g: Mat):
    if g.shape != (7, 7):
        raise DimensionError(f"expected a 7x7 matrix, got {g.shape}")


def exterior_cube(g: Mat) -> Mat:
    """The 35x35 matrix of the third exterior power of g."""
    _check7(g)
    rows = g.rows
    return Mat([[_minor(rows, I, J) for J in TRIPLES] for I in TRIPLES], g.field)


def wedge_action(g: Mat, omega: TriVector, cube: Mat | None = None) -> TriVector:
    """Apply g to a trivector; only the columns on omega's support are formed."""
    _check7(g)
    support = omega.support()
    if cube is not None:
        return TriVector(cube.apply(omega.coords))
    rows = g.rows
    out = []
    for I in TRIPLES:
        acc = Fraction(0)
        for n in support:
            m = _minor(rows, I, TRIPLES[n])
            if m:
                acc = acc + m * omega.coords[n]
        out.append(acc)
    return TriVector(tuple(out))


def g1_membership(g: Mat):
    """Return c with ``g . wbar == c * wbar``, or None if g is not in G1."""
    image = wedge_action(g, W_BAR)
    ref = next(n for n in W_BAR.support())
    c = _norm_entry(image.coords[ref] / W_BAR.coords[ref])
    if not c:
        return None
    for x, y in zip(image.coords, W_BAR.coords):
        if x != c * y:
            return None
    return c


def delta(x) -> object:
    """The relative invariant x1^2 - 4(x2 x5 + x3 x6 + x4 x7)."""
    if len(x) != 7:
        raise DimensionError("delta takes a 7-vector")
    return _norm_entry(x[0] * x[0] - 4 * (x[1] * x[4] + x[2] * x[5] + x[3] * x[6]))


E1 = tuple(Fraction(int(i == 0)) for i in range(7))


def characters(g: Mat, probe=E1, c=None) -> tuple:
    """``(c, chi, chi')`` of a G1 element.

    chi is read off from delta at the probe vector and chi' = c / chi.
    The relations c = chi'^3 and chi = chi'^2 are checked, not assumed.
    """
    if c is None:
        c = g1_membership(g)
        if c is None:
            raise NotInG1Error("matrix is not in G1")
    d0 = delta(probe)
    if not d0:
        raise ValueError("probe vector is not semistable")
    chi = _norm_entry(delta(g.apply(probe)) / d0)
    chi_prime = _norm_entry(c / chi)
    if c != chi_prime ** 3 or chi != chi_prime * chi_prime:
        raise ArithmeticError(f"character relations fail: c={c}, chi={chi}, chi'={chi_prime}")
    return c, chi, chi_prime


@dataclass(frozen=True)
class GroupElem1:
    """A verified element of G1 with its characters cached."""

    m: Mat
    c: object
    chi_prime: object
    _cube: list = field(default_factory=list, repr=False, compare=False)

    @classmethod
    def from_matrix(cls, m: Mat) -> GroupElem1:
        c, _chi, chi_prime = characters(m)
        return cls(m, c, chi_prime)

    @property
    def chi(self):
        return self.chi_prime * self.chi_prime

    @property
    def cube(self) -> Mat:
        if not self._cube:
            self._cube.append(exterior_cube(self.m))
        return self._cube[0]

    def __matmul__(self, other: GroupElem1) -> GroupElem1:
        return GroupElem1(self.m @ other.m, self.c * other.c, self.chi_prime * other.chi_prime)

    def act(self, x) -> tuple:
        return self.m.apply(x)

    def inverse(self) -> GroupElem1:
        return GroupElem1(self.m.inverse(), 1 / self.c, 1 / self.chi_prime)
