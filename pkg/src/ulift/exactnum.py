"""Exact complex numbers of the form (a + b*rt) + i*(c + e*rt), rt = sqrt(|d|).

This is the smallest ring containing Q, i and the embedded quadratic field,
closed under the geometric operations used by the embedding code.  It exists
so geometric identities can be certified exactly at rational sample points;
floating point is used everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import FieldZeroDivision
from .field import FieldElement


@dataclass(frozen=True)
class QuadComplex:
    """(a + b*rt) + i*(c + e*rt) with rt*rt = rad, all parts rational."""

    rad: int  # positive, squarefree-ish; equal to |d| in practice
    a: Fraction
    b: Fraction
    c: Fraction
    e: Fraction

    def _like(self, a, b, c, e):
        return QuadComplex(self.rad, Fraction(a), Fraction(b), Fraction(c), Fraction(e))

    def _coerce(self, other):
        if isinstance(other, QuadComplex):
            if other.rad != self.rad:
                raise ValueError("mixed radicands")
            return other
        if isinstance(other, Rational):
            return QuadComplex(self.rad, Fraction(other), Fraction(0), Fraction(0), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._like(self.a + o.a, self.b + o.b, self.c + o.c, self.e + o.e)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.a, -self.b, -self.c, -self.e)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        r = self.rad
        # real and imaginary parts in the basis (1, rt)
        a1, b1, c1, e1 = self.a, self.b, self.c, self.e
        a2, b2, c2, e2 = o.a, o.b, o.c, o.e
        # (R1 + i I1)(R2 + i I2) with R = a + b rt etc.
        ra = a1 * a2 + r * b1 * b2 - (c1 * c2 + r * e1 * e2)
        rb = a1 * b2 + b1 * a2 - (c1 * e2 + e1 * c2)
        ia = a1 * c2 + c1 * a2 + r * (b1 * e2 + e1 * b2)
        ib = a1 * e2 + e1 * a2 + b1 * c2 + c1 * b2
        return self._like(ra, rb, ia, ib)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadComplex":
        return self._like(self.a, self.b, -self.c, -self.e)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.e == 0

    def inverse(self) -> "QuadComplex":
        if self.is_zero():
            raise FieldZeroDivision("inverse of exact zero")
        # |z|^2 = zz* lies in Q(rt); divide out in two stages.
        m = self * self.conjugate()  # c == e == 0
        u, v = m.a, m.b  # u + v rt
        den = u * u - self.rad * v * v
        if den == 0:
            # u + v rt == 0 with rt irrational cannot happen unless both zero
            raise FieldZeroDivision("inverse of exact zero")
        inv_m = self._like(u / den, -v / den, 0, 0)
        return self.conjugate() * inv_m

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    @property
    def real_pair(self) -> tuple[Fraction, Fraction]:
        return self.a, self.b

    @property
    def imag_pair(self) -> tuple[Fraction, Fraction]:
        return self.c, self.e

    def to_complex(self) -> complex:
        import math

        rt = math.sqrt(self.rad)
        return complex(float(self.a) + float(self.b) * rt,
                       float(self.c) + float(self.e) * rt)


def qc_rational(rad: int, x) -> QuadComplex:
    return QuadComplex(rad, Fraction(x), Fraction(0), Fraction(0), Fraction(0))


def qc_i(rad: int) -> QuadComplex:
    return QuadComplex(rad, Fraction(0), Fraction(0), Fraction(1), Fraction(0))


def qc_embed(x: FieldElement) -> QuadComplex:
    """Exact image of a quadratic field element: Re in Q, Im in Q*rt."""
    rad = -x.disc.d
    t = x.disc.zeta_trace
    # zeta = t/2 + i*rt/2
    re = x.a + x.b * Fraction(t, 2)
    im_rt = x.b * Fraction(1, 2)
    return QuadComplex(rad, re, Fraction(0), Fraction(0), im_rt)
