"""Exact arithmetic over Q and quadratic fields Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  A quadratic
field is identified by a squarefree integer ``d``; its elements are
:class:`QuadElem` instances ``a + b*alpha`` with ``alpha**2 == d``.

Also housed here: square classes, Hilbert symbols at every place of Q
and the local-global decision of whether a rational is a norm from a
quadratic field.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

INF = math.inf

DEFAULT_FACTOR_CEILING = 10**7
FACTOR_CEILING_ENV = "G2ORBITS_FACTOR_CEILING"


class FieldMismatchError(ValueError):
    """Raised when elements of two different quadratic fields meet."""


class FactorizationLimitError(ValueError):
    """Raised when trial division would have to go past the ceiling."""


# ---------------------------------------------------------------------------
# rationals

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rat(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints and Fractions pass through)."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational literal: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    m = _RAT_RE.match(text.replace("−", "-"))
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rat(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, m = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and m * m == q.denominator:
        return Fraction(n, m)
    return None


# ---------------------------------------------------------------------------
# factorization and square classes


def factor_ceiling() -> int:
    raw = os.environ.get(FACTOR_CEILING_ENV)
    if raw is None:
        return DEFAULT_FACTOR_CEILING
    value = int(raw)
    if value < 2:
        raise ValueError(f"{FACTOR_CEILING_ENV} must be >= 2")
    return value


def factorize(n: int, ceiling: int | None = None) -> dict[int, int]:
    """Factor ``|n|`` by trial division.

    Trial divisors never exceed ``ceiling``; if the remaining cofactor
    cannot be certified prime within that limit, FactorizationLimitError
    is raised instead of guessing.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    if ceiling is None:
        ceiling = factor_ceiling()
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if p > ceiling:
            raise FactorizationLimitError(
                f"cofactor {n} needs trial divisors above the ceiling {ceiling}"
            )
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=4096)
def _squarefree_int(n: int) -> int:
    sign = -1 if n < 0 else 1
    core = 1
    for p, e in factorize(n).items():
        if e % 2:
            core *= p
    return sign * core


def squarefree_part(q) -> int:
    """The squarefree integer representing the square class of ``q``.

    >>> squarefree_part(Fraction(45, 4))
    5
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no square class")
    return _squarefree_int(q.numerator * q.denominator)


def same_square_class(q1, q2) -> bool:
    return squarefree_part(q1) == squarefree_part(q2)


def _is_squarefree(n: int) -> bool:
    return n != 0 and _squarefree_int(n) == n


# ---------------------------------------------------------------------------
# quadratic fields


@dataclass(frozen=True)
class QuadField:
    """The field Q(alpha) with alpha**2 == d, d squarefree and not 0 or 1."""

    d: int

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int):
            raise TypeError(f"d must be an int, got {self.d!r}")
        if self.d in (0, 1) or not _is_squarefree(self.d):
            raise ValueError(f"d = {self.d} is not a squarefree integer other than 0, 1")

    @classmethod
    def from_square(cls, q) -> QuadField:
        """Field generated by sqrt(q) for any non-square rational q."""
        d = squarefree_part(q)
        if d == 1:
            raise ValueError(f"{q} is a square; Q(sqrt {q}) is not a quadratic field")
        return cls(d)

    @property
    def alpha(self) -> QuadElem:
        return QuadElem(self, 0, 1)

    def __call__(self, a=0, b=0) -> QuadElem:
        return QuadElem(self, a, b)

    def __str__(self):
        return f"Q(sqrt({self.d}))"


class QuadElem:
    """An element ``a + b*alpha`` of a quadratic field.

    Instances mix freely with ints and Fractions.  Equality and hashing
    agree with Fraction for elements with ``b == 0``.
    """

    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadField, a=0, b=0):
        self.field = field
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.a, other.b
        if isinstance(other, Rational):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElem(self.field, self.a + c[0], self.b + c[1])

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.field, -self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElem(self.field, self.a - c[0], self.b - c[1])

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElem(self.field, c[0] - self.a, c[1] - self.b)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        if not b:
            return QuadElem(self.field, self.a * a, self.b * a)
        return QuadElem(
            self.field,
            self.a * a + self.field.d * self.b * b,
            self.a * b + self.b * a,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadElem(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return self * other.inverse()
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division by zero in quadratic field")
            return QuadElem(self.field, self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElem(self.field, 1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuadElem:
        """The Galois conjugate sigma(a + b*alpha) = a - b*alpha."""
        return QuadElem(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.field == other.field and self.a == other.a and self.b == other.b
        if isinstance(other, Rational):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.field.d, self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadElem(d={self.field.d}, a={format_rat(self.a)}, b={format_rat(self.b)})"

    def __str__(self):
        if self.b == 0:
            return format_rat(self.a)
        b = format_rat(self.b)
        if self.a == 0:
            return f"{b}*a"
        sign = "-" if self.b < 0 else "+"
        return f"{format_rat(self.a)} {sign} {format_rat(abs(self.b))}*a"


def conj(x):
    """Galois conjugate of a field element; rationals are fixed."""
    return x.conjugate()


def is_rational(x) -> bool:
    return not isinstance(x, QuadElem) or x.b == 0


def to_rational(x) -> Fraction:
    if isinstance(x, QuadElem):
        return x.to_rational()
    return Fraction(x)


def norm(x) -> Fraction:
    if isinstance(x, QuadElem):
        return x.norm()
    return Fraction(x) ** 2


# ---------------------------------------------------------------------------
# Hilbert symbols and norms


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _split_p(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _as_int_in_class(q) -> int:
    q = Fraction(q)
    return q.numerator * q.denominator


def hilbert_symbol(a, b, p) -> int:
    """The Hilbert symbol (a, b)_p with p a prime or ``INF``.

    Returns +1 when ax^2 + by^2 = 1 is solvable over the completion of Q
    at p and -1 otherwise.
    """
    if Fraction(a) == 0 or Fraction(b) == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    a, b = _as_int_in_class(a), _as_int_in_class(b)
    if p == INF:
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"not a place of Q: {p!r}")
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= _legendre(u, p)
    if alpha % 2:
        sign *= _legendre(v, p)
    return sign


def relevant_places(*qs) -> list:
    """INF, 2 and every prime dividing a squarefree part of the inputs."""
    primes = {2}
    for q in qs:
        primes.update(factorize(squarefree_part(q)))
    return [INF] + sorted(primes)


def local_obstructions(field: QuadField, s) -> list:
    """Places where s fails to be a local norm from the given field."""
    s = Fraction(s)
    if s == 0:
        raise ValueError("zero is never a norm of a unit")
    return [p for p in relevant_places(field.d, s) if hilbert_symbol(field.d, s, p) == -1]


def is_norm(field: QuadField, s) -> bool:
    """Whether s lies in N(K^x) for K = Q(sqrt d), by the Hasse norm theorem."""
    return not local_obstructions(field, s)


def norm_witness(field: QuadField, s, bound: int) -> QuadElem | None:
    """Exhaustive search for x = a + b*alpha with N(x) = s.

    Covers every a, b whose numerators and denominators are bounded by
    ``bound`` in absolute value.  ``a`` is recovered from ``b`` as an
    exact square root, so the search is complete over that box.
    """
    s = Fraction(s)
    if s == 0:
        raise ValueError("zero is never a norm of a unit")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    seen = set()
    for q in range(1, bound + 1):
        for p in range(0, bound + 1):
            b = Fraction(p, q)
            if b in seen:
                continue
            seen.add(b)
            a = rational_sqrt(s + field.d * b * b)
            if a is None or a.numerator > bound or a.denominator > bound:
                continue
            return QuadElem(field, a, b)
    return None


def is_norm_oracle(field: QuadField, s, bound: int) -> bool | None:
    """True if a bounded brute-force search finds a norm witness, else None."""
    return True if norm_witness(field, s, bound) is not None else None
