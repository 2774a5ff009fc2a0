"""Galois 1-cocycles for a quadratic extension K/k.

Gal(K/k) has one nontrivial element sigma, so a cocycle is the single
value ``h`` it takes at sigma, subject to ``h . phi(h) = 1`` where phi is
the sigma-action coming from the k-structure of the group:

* unitary type (matrix Lam with Lam^2 = 1):  phi(g) = Lam *g^-1 Lam
* norm-one torus:                           phi(x) = (x^sigma)^-1

Equivalence of cocycles uses ``h1 = g^-1 h2 phi(g)``.  A unitary
cocycle h corresponds to the Hermitian matrix ``h^-1 Lam``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import QuadElem, QuadField, is_norm, squarefree_part, to_rational
from .linalg import Mat, SingularMatrixError, hermitian_diagonalize, is_hermitian

UNITARY = "U"
SPECIAL_UNITARY = "SU"
TORUS = "T"


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class SigmaStructure:
    kind: str
    field: QuadField
    lam: Mat | None = None

    def __post_init__(self):
        if self.kind not in (UNITARY, SPECIAL_UNITARY, TORUS):
            raise ValueError(f"unknown structure kind {self.kind!r}")
        if self.kind == TORUS:
            if self.lam is not None:
                raise ValueError("torus structure takes no matrix")
            return
        lam = self.lam
        if lam is None or not lam.is_square():
            raise ValueError("unitary structure needs a square matrix")
        if not lam.is_rational() or not lam.is_diagonal() or lam @ lam != Mat.identity(lam.nrows):
            raise ValueError("structure matrix must be diagonal with entries +-1")

    @classmethod
    def unitary(cls, field: QuadField, lam: Mat, special: bool = False) -> SigmaStructure:
        return cls(SPECIAL_UNITARY if special else UNITARY, field, lam)

    @classmethod
    def torus(cls, field: QuadField) -> SigmaStructure:
        return cls(TORUS, field)

    @property
    def special(self) -> bool:
        return self.kind == SPECIAL_UNITARY

    def phi(self, g):
        """The sigma-twisted involution of the group's K-points."""
        if self.kind == TORUS:
            return 1 / g.conjugate()
        return self.lam @ g.inverse().star @ self.lam

    def identity(self):
        if self.kind == TORUS:
            return Fraction(1)
        return Mat.identity(self.lam.nrows, self.field)


@dataclass(frozen=True)
class Cocycle:
    structure: SigmaStructure
    h: object

    @property
    def field(self) -> QuadField:
        return self.structure.field


def _is_one(structure: SigmaStructure, x) -> bool:
    if structure.kind == TORUS:
        return x == 1
    return x == Mat.identity(structure.lam.nrows)


def verify_cocycle(structure: SigmaStructure, h) -> bool:
    """Whether ``h . phi(h) == 1`` (and det h = 1 for special unitary type)."""
    if structure.kind == TORUS:
        if not h:
            raise SingularMatrixError("cocycle value is zero")
        return _is_one(structure, h * structure.phi(h))
    if h.shape != structure.lam.shape:
        return False
    if not h.det():
        raise SingularMatrixError("cocycle value is singular")
    if structure.special and h.det() != 1:
        return False
    return _is_one(structure, h @ structure.phi(h))


def cocycle_to_hermitian(c: Cocycle) -> Mat:
    """The Hermitian matrix h^-1 Lam attached to a unitary cocycle."""
    s = c.structure
    if s.kind == TORUS:
        raise CocycleError("torus cocycles have no Hermitian matrix")
    if not verify_cocycle(s, c.h):
        raise CocycleError("cocycle condition fails")
    herm = c.h.inverse() @ s.lam
    assert is_hermitian(herm)
    return herm


def hermitian_to_cocycle(herm: Mat, structure: SigmaStructure) -> Cocycle:
    """Inverse of cocycle_to_hermitian: h = Lam H^-1."""
    if structure.kind == TORUS:
        raise CocycleError("torus structure has no Hermitian matrices")
    if herm.shape != structure.lam.shape:
        raise CocycleError("size mismatch with the structure matrix")
    if not is_hermitian(herm):
        raise CocycleError("matrix is not Hermitian")
    dh = herm.det()
    if not dh:
        raise CocycleError("Hermitian matrix is degenerate")
    if structure.special and dh != structure.lam.det():
        raise CocycleError(f"determinant must be {structure.lam.det()} for the special group")
    return Cocycle(structure, structure.lam @ herm.inverse())


def twist_equivalent_witness(structure: SigmaStructure, h1, h2, g) -> bool:
    """Check that g realizes ``h1 = g^-1 h2 phi(g)``."""
    if structure.kind == TORUS:
        return h1 == (1 / g) * h2 * structure.phi(g)
    try:
        gi = g.inverse()
    except SingularMatrixError:
        return False
    return h1 == gi @ h2 @ structure.phi(g)


# -- norm classes -------------------------------------------------------------


def _squarefree_candidates(limit: int):
    for m in range(1, limit + 1):
        if squarefree_part(m) == m:
            yield m
            yield -m


def canonical_norm_rep(field: QuadField, s) -> int:
    """Smallest squarefree m (by |m|, positive first) with s/m a norm.

    Rational squares are norms, so s is equivalent to its squarefree part
    and the search always stops by ``|squarefree_part(s)|``.  Inversion
    s -> 1/s does not move the class (1/s = s * N(1/s)).
    """
    s = Fraction(s)
    if s == 0:
        raise ValueError("zero has no norm class")
    for m in _squarefree_candidates(abs(squarefree_part(s))):
        if is_norm(field, s * m):
            return m
    raise AssertionError("unreachable: s is in its own class")


@dataclass(frozen=True)
class NormClass:
    """A class in k^x / N(K^x), compared through its canonical representative."""

    field: QuadField
    s: Fraction

    @property
    def rep(self) -> int:
        return canonical_norm_rep(self.field, self.s)

    def is_trivial(self) -> bool:
        return is_norm(self.field, self.s)

    def __eq__(self, other):
        if not isinstance(other, NormClass):
            return NotImplemented
        return self.field == other.field and is_norm(self.field, self.s / other.s)

    def __hash__(self):
        return hash((self.field, self.rep))


def torus_norm_class(c: Cocycle) -> NormClass:
    if c.structure.kind != TORUS:
        raise CocycleError("not a torus cocycle")
    h = c.h
    if isinstance(h, QuadElem) and not h.is_rational():
        raise CocycleError("torus cocycle must lie in k")
    s = to_rational(h)
    if not s:
        raise CocycleError("torus cocycle must be nonzero")
    return NormClass(c.field, s)


def determinant_cocycle(c: Cocycle) -> Cocycle:
    """Push a unitary cocycle to the torus by the determinant."""
    if c.structure.kind == TORUS:
        raise CocycleError("already a torus cocycle")
    if not verify_cocycle(c.structure, c.h):
        raise CocycleError("cocycle condition fails")
    dt = c.h.det()
    return Cocycle(SigmaStructure.torus(c.field), dt)


# -- Hermitian form invariants -----------------------------------------------


def hermitian_signature(herm: Mat, field: QuadField | None = None) -> tuple[int, int]:
    _, dmat = hermitian_diagonalize(herm, field)
    diag = [to_rational(x) for x in dmat.diagonal()]
    return sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0)


def hermitian_forms_equivalent(h1: Mat, h2: Mat, field: QuadField) -> bool:
    """Decide whether P h1 *P = h2 for some P in GL(n, K).

    Over Q, nondegenerate Hermitian forms are classified by dimension,
    determinant modulo norms and, when K is imaginary, the signature.
    """
    if h1.shape != h2.shape:
        return False
    d1, d2 = to_rational(h1.det()), to_rational(h2.det())
    if not d1 or not d2:
        raise ValueError("degenerate Hermitian matrix")
    if not is_norm(field, d1 / d2):
        return False
    if field.d < 0:
        return hermitian_signature(h1, field) == hermitian_signature(h2, field)
    return True
