"""Small dense exact matrices over Q or a quadratic field.

Entries are Fractions, or QuadElems when they have an irrational part;
an entry whose alpha-coefficient vanishes is stored as a plain Fraction
so that rational work never pays for quadratic arithmetic.  ``A.star``
is the conjugate transpose ``t(A^sigma)``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .fields import FieldMismatchError, QuadElem, QuadField


class SingularMatrixError(ArithmeticError):
    pass


class DimensionError(ValueError):
    pass


def _norm_entry(x):
    if type(x) is Fraction:
        return x
    if isinstance(x, QuadElem):
        return x.a if x.b == 0 else x
    if isinstance(x, Rational) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"unsupported matrix entry {x!r}")


def _merge_fields(f1, f2):
    if f1 is None:
        return f2
    if f2 is None or f1 == f2:
        return f1
    raise FieldMismatchError(f"{f1} vs {f2}")


def _is_zero(x) -> bool:
    return not x


class Mat:
    """Immutable exact matrix."""

    __slots__ = ("rows", "nrows", "ncols", "field", "_hash")

    def __init__(self, rows, field: QuadField | None = None):
        rows = tuple(tuple(_norm_entry(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        for r in rows:
            for x in r:
                if isinstance(x, QuadElem):
                    field = _merge_fields(field, x.field)
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self.field = field
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n: int, field=None) -> Mat:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, field=None) -> Mat:
        return cls([[0] * (n if m is None else m) for _ in range(n)], field)

    @classmethod
    def diag(cls, *entries, field=None) -> Mat:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def block_diag(cls, *blocks) -> Mat:
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        field = None
        r0 = c0 = 0
        for b in blocks:
            field = _merge_fields(field, b.field)
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls(out, field)

    @classmethod
    def column(cls, entries, field=None) -> Mat:
        return cls([[x] for x in entries], field)

    # -- basic protocol ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def submatrix(self, rows, cols) -> Mat:
        return Mat([[self.rows[i][j] for j in cols] for i in rows], self.field)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Mat([{body}])"

    # -- arithmetic --------------------------------------------------------

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_same_shape(other)
        return Mat(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            _merge_fields(self.field, other.field),
        )

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_same_shape(other)
        return Mat(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            _merge_fields(self.field, other.field),
        )

    def __neg__(self):
        return Mat([[-x for x in r] for r in self.rows], self.field)

    def __mul__(self, scalar):
        if isinstance(scalar, Mat):
            return NotImplemented
        field = self.field
        if isinstance(scalar, QuadElem):
            field = _merge_fields(field, scalar.field)
        return Mat([[scalar * x for x in r] for r in self.rows], field)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for c in cols:
                acc = Fraction(0)
                for k, x in nz:
                    y = c[k]
                    if y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Mat(out, _merge_fields(self.field, other.field))

    def apply(self, vec) -> tuple:
        """Matrix times a column given as a sequence."""
        if len(vec) != self.ncols:
            raise DimensionError(f"vector of length {len(vec)} for {self.shape} matrix")
        nzv = [(k, y) for k, y in enumerate(vec) if y]
        out = []
        for r in self.rows:
            acc = Fraction(0)
            for k, y in nzv:
                x = r[k]
                if x:
                    acc = acc + x * y
            out.append(_norm_entry(acc))
        return tuple(out)

    def __pow__(self, n: int):
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Mat.identity(self.nrows, self.field), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def T(self) -> Mat:
        return Mat(list(zip(*self.rows)), self.field)

    def sigma(self) -> Mat:
        """Entrywise Galois conjugate."""
        return Mat([[x.conjugate() for x in r] for r in self.rows], self.field)

    @property
    def star(self) -> Mat:
        """Conjugate transpose t(A^sigma)."""
        return Mat([[x.conjugate() for x in c] for c in zip(*self.rows)], self.field)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_diagonal(self) -> bool:
        return all(
            _is_zero(x) for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j
        )

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def is_rational(self) -> bool:
        return all(type(x) is Fraction for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self.is_square() and self == Mat.identity(self.nrows)

    # -- elimination -------------------------------------------------------

    def det(self):
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        n = self.nrows
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return _norm_entry(a * d - b * c)
        if n == 3:
            (a, b, c), (d, e, f), (g, h, i) = self.rows
            return _norm_entry(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
        m = [list(r) for r in self.rows]
        det = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k]), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                det = -det
            pk = m[k][k]
            det = det * pk
            inv = 1 / pk
            for i in range(k + 1, n):
                if m[i][k]:
                    f = m[i][k] * inv
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], m[k])]
        return _norm_entry(det)

    def inverse(self) -> Mat:
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.nrows
        m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k]), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            m[k], m[piv] = m[piv], m[k]
            inv = 1 / m[k][k]
            m[k] = [x * inv for x in m[k]]
            for i in range(n):
                if i != k and m[i][k]:
                    f = m[i][k]
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], m[k])]
        return Mat([r[n:] for r in m], self.field)


def as_mat(obj, field=None) -> Mat:
    return obj if isinstance(obj, Mat) else Mat(obj, field)


def conj_transpose(a: Mat) -> Mat:
    return a.star


def det(a: Mat):
    return a.det()


def inverse(a: Mat) -> Mat:
    return a.inverse()


def cayley(s: Mat) -> Mat:
    """(I + S)(I - S)^-1."""
    eye = Mat.identity(s.nrows, s.field)
    try:
        return (eye + s) @ (eye - s).inverse()
    except SingularMatrixError:
        raise SingularMatrixError("I - S is singular") from None


def is_hermitian(h: Mat) -> bool:
    return h.is_square() and h == h.star


def hermitian_diagonalize(h: Mat, field: QuadField | None = None) -> tuple[Mat, Mat]:
    """Congruence-diagonalize a nondegenerate Hermitian matrix.

    Returns ``(P, D)`` with ``P @ H @ P.star == D`` and D diagonal with
    rational entries.  When a pivot block has only zeros on its diagonal,
    the pivot row is replaced by ``e_k + e_j`` or ``e_k + alpha*e_j``,
    one of which always has nonzero H-norm.
    """
    if not is_hermitian(h):
        raise ValueError("matrix is not Hermitian")
    if not h.det():
        raise SingularMatrixError("Hermitian matrix is degenerate")
    field = _merge_fields(field, h.field)
    n = h.nrows
    m = h
    p = Mat.identity(n, field)

    def congruent(e: Mat):
        nonlocal m, p
        m = e @ m @ e.star
        p = e @ p

    for k in range(n):
        if not m[k, k]:
            j = next((j for j in range(k + 1, n) if m[j, j]), None)
            if j is not None:
                perm = list(range(n))
                perm[k], perm[j] = j, k
                congruent(Mat([[int(c == perm[r]) for c in range(n)] for r in range(n)], field))
            else:
                j = next(j for j in range(k + 1, n) if m[k, j])
                mkj = m[k, j]
                if (mkj + mkj.conjugate()) != 0:
                    c = 1
                else:
                    if field is None:
                        raise ValueError("zero pivot needs a quadratic field context")
                    c = field.alpha
                e = [[int(r == cc) for cc in range(n)] for r in range(n)]
                e[k][j] = c.conjugate() if isinstance(c, QuadElem) else c
                congruent(Mat(e, field))
        pk = m[k, k]
        rows = [[int(r == cc) for cc in range(n)] for r in range(n)]
        touched = False
        for i in range(k + 1, n):
            if m[i, k]:
                rows[i][k] = -m[i, k] / pk
                touched = True
        if touched:
            congruent(Mat(rows, field))
    if not m.is_diagonal() or not m.is_rational():
        raise AssertionError("diagonalization left a non-diagonal or irrational result")
    return p, m
