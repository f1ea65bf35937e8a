"""Exact arithmetic in an imaginary quadratic field F = Q(sqrt(d)), d < 0.

Elements are stored in the integral basis (1, zeta) of the maximal order,
where zeta = delta/2 for even d and zeta = (1 + delta)/2 for odd d, with
delta = sqrt(d) on the principal branch (Im delta > 0).  All coordinates are
`fractions.Fraction`; the complex embedding is the only place floating point
enters, and it is opt-in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import FieldZeroDivision, ValidationError


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Discriminant:
    """A fundamental discriminant d < 0 of an imaginary quadratic field."""

    d: int

    def __post_init__(self):
        d = self.d
        if not isinstance(d, int):
            raise ValidationError("discriminant must be an integer")
        if d >= 0:
            raise ValidationError("discriminant must be negative, got %s" % d)
        if d % 4 == 0:
            q = d // 4
            if not _is_squarefree(q) or (q % 4) not in (2, 3):
                raise ValidationError("%d is not a fundamental discriminant" % d)
        elif d % 4 == 1:
            if not _is_squarefree(d):
                raise ValidationError("%d is not a fundamental discriminant" % d)
        else:
            raise ValidationError("%d is not 0 or 1 mod 4" % d)

    @property
    def zeta_trace(self) -> int:
        return 0 if self.d % 2 == 0 else 1

    @property
    def zeta_norm(self) -> int:
        if self.d % 2 == 0:
            return -self.d // 4
        return (1 - self.d) // 4

    @property
    def abs_delta_sq(self) -> int:
        """|delta|^2 = |d|."""
        return -self.d

    def abs_delta(self) -> float:
        return math.sqrt(-self.d)

    def zeta_complex(self) -> complex:
        """Complex embedding of zeta, with Im zeta = |delta|/2 > 0."""
        return complex(Fraction(self.zeta_trace, 2), math.sqrt(-self.d) / 2.0)

    def delta_complex(self) -> complex:
        return complex(0.0, math.sqrt(-self.d))


def zeta_data(disc: Discriminant) -> tuple[int, int]:
    """Trace and norm of the integral basis element zeta."""
    return disc.zeta_trace, disc.zeta_norm


def _coerce(disc: Discriminant, x) -> "FieldElement":
    if isinstance(x, FieldElement):
        if x.disc != disc:
            raise ValidationError("mixed discriminants %s and %s" % (x.disc.d, disc.d))
        return x
    if isinstance(x, Rational):
        return FieldElement(disc, Fraction(x), Fraction(0))
    raise TypeError("cannot coerce %r into the quadratic field" % (x,))


@dataclass(frozen=True)
class FieldElement:
    """a + b*zeta with rational a, b."""

    disc: Discriminant
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        o = _coerce(self.disc, other)
        return FieldElement(self.disc, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.disc, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-_coerce(self.disc, other))

    def __rsub__(self, other):
        return _coerce(self.disc, other) - self

    def __mul__(self, other):
        o = _coerce(self.disc, other)
        t, n = self.disc.zeta_trace, self.disc.zeta_norm
        # (a + b z)(c + e z) with z^2 = t z - n
        a, b, c, e = self.a, self.b, o.a, o.b
        return FieldElement(self.disc, a * c - b * e * n, a * e + b * c + b * e * t)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise FieldZeroDivision("inverse of 0 in Q(sqrt(%d))" % self.disc.d)
        c = self.conj()
        return FieldElement(self.disc, c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * _coerce(self.disc, other).inverse()

    def __rtruediv__(self, other):
        return _coerce(self.disc, other) * self.inverse()

    # -- field-specific maps -------------------------------------------------

    def conj(self) -> "FieldElement":
        t = self.disc.zeta_trace
        return FieldElement(self.disc, self.a + self.b * t, -self.b)

    def trace(self) -> Fraction:
        return 2 * self.a + self.b * self.disc.zeta_trace

    def norm(self) -> Fraction:
        t, n = self.disc.zeta_trace, self.disc.zeta_norm
        return self.a * self.a + self.a * self.b * t + self.b * self.b * n

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def rational_part(self) -> Fraction:
        """The value as a Fraction; raises if not rational."""
        if self.b != 0:
            raise ValidationError("element %s is not rational" % (self,))
        return self.a

    def __str__(self):
        return "%s + %s*zeta" % (self.a, self.b)


# -- constructors ------------------------------------------------------------

def zero(disc: Discriminant) -> FieldElement:
    return FieldElement(disc, Fraction(0), Fraction(0))


def one(disc: Discriminant) -> FieldElement:
    return FieldElement(disc, Fraction(1), Fraction(0))


def zeta(disc: Discriminant) -> FieldElement:
    return FieldElement(disc, Fraction(0), Fraction(1))


def delta(disc: Discriminant) -> FieldElement:
    """sqrt(d) expressed in the (1, zeta) basis: 2*zeta - tr(zeta)."""
    return FieldElement(disc, Fraction(-disc.zeta_trace), Fraction(2))


def from_pair(disc: Discriminant, a, b) -> FieldElement:
    return FieldElement(disc, Fraction(a), Fraction(b))


# -- embedding and membership -------------------------------------------------

def embed(x: FieldElement) -> complex:
    """Complex embedding with delta -> i*sqrt(|d|)  (double precision)."""
    zc = x.disc.zeta_complex()
    return complex(x.a) + complex(x.b) * zc


def embed_mp(x: FieldElement, mp):
    """Complex embedding using an mpmath context, for extended precision."""
    zc = mp.mpc(mp.mpf(x.disc.zeta_trace) / 2, mp.sqrt(-x.disc.d) / 2)
    return mp.mpc(x.a.numerator) / x.a.denominator + (mp.mpc(x.b.numerator) / x.b.denominator) * zc


def in_inverse_different(x: FieldElement) -> bool:
    """True iff delta * x is integral, i.e. x lies in the inverse different."""
    return (delta(x.disc) * x).is_integral()
