"""Exact q-expansions of the classical level-one forms.

A `QSeries` is a truncated Laurent series sum_{n >= shift} c[n-shift] q^n,
known modulo O(q^prec).  Coefficients stay Python ints for everything built
here; `Fraction` coefficients are accepted anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class QSeries:
    __slots__ = ("shift", "coeffs", "prec")

    def __init__(self, shift, coeffs, prec):
        while coeffs and coeffs[0] == 0 and shift < prec:
            coeffs = coeffs[1:]
            shift += 1
        self.shift = shift
        self.coeffs = list(coeffs[: max(0, prec - shift)])
        self.prec = prec

    def __getitem__(self, n):
        if n >= self.prec:
            raise IndexError("coefficient of q^%d beyond truncation O(q^%d)" % (n, self.prec))
        if n < self.shift or n - self.shift >= len(self.coeffs):
            return 0
        return self.coeffs[n - self.shift]

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.shift + i, c

    @property
    def order(self):
        """Exponent of the lowest nonzero term (prec if identically zero)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.shift + i
        return self.prec

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(0, [other], self.prec)
        prec = min(self.prec, other.prec)
        lo = min(self.shift, other.shift)
        out = [0] * (prec - lo)
        for s in (self, other):
            for n, c in s.items():
                if n < prec:
                    out[n - lo] += c
        return QSeries(lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.shift, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(0, [other], self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries(self.shift, [c * other for c in self.coeffs], self.prec)
        prec = min(self.prec + other.shift, other.prec + self.shift)
        lo = self.shift + other.shift
        out = [0] * max(0, prec - lo)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            na = self.shift + i
            if na + other.shift >= prec:
                break
            for j, b in enumerate(other.coeffs):
                n = na + other.shift + j
                if n >= prec:
                    break
                if b != 0:
                    out[n - lo] += a * b
        return QSeries(lo, out, prec)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse of a series whose lowest coefficient is a unit (+-1) or Fraction."""
        lead = self.coeffs[0] if self.coeffs else 0
        if lead == 0:
            raise ZeroDivisionError("inverse of series with zero leading term")
        n_terms = self.prec - self.shift
        inv = [0] * n_terms
        lead_inv = Fraction(1, lead) if not isinstance(lead, Fraction) else 1 / lead
        if lead in (1, -1):
            lead_inv = lead  # stay integral
        inv[0] = lead_inv
        for n in range(1, n_terms):
            acc = 0
            for k in range(1, n + 1):
                a = self.coeffs[k] if k < len(self.coeffs) else 0
                if a != 0 and inv[n - k] != 0:
                    acc += a * inv[n - k]
            inv[n] = -lead_inv * acc
        return QSeries(-self.shift, inv, self.prec - 2 * self.shift)

    def __truediv__(self, other):
        return self * other.inverse()

    def __repr__(self):
        head = ", ".join("%s*q^%d" % (c, n) for n, c in list(self.items())[:6])
        return "QSeries(%s, ... + O(q^%d))" % (head, self.prec)


def divisor_sigma(n, k=1):
    """Sum of k-th powers of the divisors of n >= 1."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def eisenstein_e4(prec):
    return QSeries(0, [1] + [240 * divisor_sigma(n, 3) for n in range(1, prec)], prec)


def eisenstein_e6(prec):
    return QSeries(0, [1] + [-504 * divisor_sigma(n, 5) for n in range(1, prec)], prec)


def delta_cusp_form(prec):
    """(E4^3 - E6^2)/1728, exactly integral."""
    e4 = eisenstein_e4(prec + 1)
    e6 = eisenstein_e6(prec + 1)
    num = e4 * e4 * e4 - e6 * e6
    coeffs = []
    for n, c in num.items():
        q, r = divmod(c, 1728)
        if r:
            raise ArithmeticError("discriminant form coefficient not divisible by 1728")
        coeffs.append((n, q))
    out = [0] * (prec - 1)
    for n, c in coeffs:
        if 1 <= n < prec:
            out[n - 1] = c
    return QSeries(1, out, prec)


def j_function(prec):
    """q^-1 + 744 + 196884 q + ...  computed as E4^3 / Delta."""
    e4 = eisenstein_e4(prec + 2)
    num = e4 * e4 * e4
    return num * delta_cusp_form(prec + 2).inverse()


def e4sq_over_delta(prec):
    """q^-1 + 504 + ... , a weight -4 weakly holomorphic form."""
    e4 = eisenstein_e4(prec + 2)
    return (e4 * e4) * delta_cusp_form(prec + 2).inverse()


def faber_jm(m, prec):
    """The unique weight-0 level-one form q^-m + O(q), by the Faber recursion in j.

    faber_jm(1) is j - 744.
    """
    if m < 1:
        raise ValueError("index must be >= 1")
    work = max(prec, 2)
    j1 = j_function(work + m) - 744
    js = [j1]
    for k in range(2, m + 1):
        p = js[0] * js[k - 2]
        # kill the exponents -k+1 .. 0 using lower basis elements
        for i in range(k - 1, 0, -1):
            p = p - p[-i] * js[i - 1]
        p = p - p[0]
        js.append(p)
    out = js[m - 1]
    return QSeries(out.shift, out.coeffs, prec)
