"""Weil representation matrices, vector-valued q-series, classical builders,
and the residue pairing.

Series coefficients are exact rationals throughout; the representation
matrices are complex doubles (relations certified to 1e-9, which is all the
downstream code needs since every exact statement lives in the coefficients).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy

from . import qexp
from .errors import DomainError, ValidationError
from .lattice import DiscriminantGroup, HermitianLattice

TWO_PI = 2.0 * math.pi


def e_of(x) -> complex:
    """e(x) = exp(2 pi i x) for a rational or float argument."""
    if isinstance(x, Fraction):
        x = float(x)
    return cmath.exp(2j * math.pi * x)


# ---------------------------------------------------------------------------
# vector-valued q-series
# ---------------------------------------------------------------------------

REPS = ("rho_L", "dual", "scalar")


class VVForm:
    """A q-series with rational coefficients, indexed by discriminant cosets.

    coeffs maps (coset index, exponent) -> coefficient.  `qmax` records the
    truncation: exponents n < qmax are known, larger ones are not stored.
    """

    def __init__(self, weight, rep, coeffs, ncosets=1, qmax=None):
        if rep not in REPS:
            raise ValidationError("unknown representation marker %r" % rep)
        self.weight = Fraction(weight)
        self.rep = rep
        self.ncosets = int(ncosets)
        self.coeffs = {}
        for (beta, n), c in coeffs.items():
            beta = int(beta)
            if not 0 <= beta < self.ncosets:
                raise ValidationError("coset index %d out of range" % beta)
            n = Fraction(n)
            c = Fraction(c)
            if c != 0:
                self.coeffs[(beta, n)] = c
        if qmax is None:
            qmax = max((n for (_, n) in self.coeffs), default=Fraction(0)) + 1
        self.qmax = Fraction(qmax)

    def coefficient(self, n, beta=0) -> Fraction:
        n = Fraction(n)
        if n >= self.qmax:
            raise DomainError("coefficient at q^%s beyond truncation %s" % (n, self.qmax))
        return self.coeffs.get((int(beta), n), Fraction(0))

    @property
    def pole_order(self) -> Fraction:
        return min((n for (_, n) in self.coeffs), default=Fraction(0))

    def principal_part(self):
        """Sorted list of (coset, n, c) with n < 0."""
        out = [(b, n, c) for (b, n), c in self.coeffs.items() if n < 0]
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def nonneg_part(self):
        out = [(b, n, c) for (b, n), c in self.coeffs.items() if n >= 0]
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def __add__(self, other):
        if not isinstance(other, VVForm):
            return NotImplemented
        if (self.weight, self.rep, self.ncosets) != (other.weight, other.rep, other.ncosets):
            raise ValidationError("cannot add series of different weight/type")
        coeffs = dict(self.coeffs)
        for key, c in other.coeffs.items():
            coeffs[key] = coeffs.get(key, Fraction(0)) + c
        return VVForm(self.weight, self.rep, coeffs, self.ncosets,
                      qmax=min(self.qmax, other.qmax))

    def validate_support(self, group: DiscriminantGroup):
        """Check n = +-Q(beta) mod 1 per the representation marker."""
        if self.rep == "scalar":
            if self.ncosets != 1:
                raise ValidationError("scalar series must have a single component")
            for (_, n) in self.coeffs:
                if n.denominator != 1:
                    raise ValidationError("scalar series with fractional exponent %s" % n)
            return
        if self.ncosets != group.order:
            raise ValidationError("series has %d components, group has order %d"
                                  % (self.ncosets, group.order))
        sign = 1 if self.rep == "rho_L" else -1
        for (beta, n) in self.coeffs:
            want = (sign * group.q_values[beta]) % 1
            if (n - want) % 1 != 0:
                raise ValidationError(
                    "exponent %s on coset %d violates the support congruence" % (n, beta))

    def validate_symmetry(self, group: DiscriminantGroup):
        """c(n, beta) = c(n, -beta), required of inputs of weight 1 - m."""
        for (beta, n), c in self.coeffs.items():
            if self.rep == "scalar":
                return
            nb = group.neg_index(beta)
            if self.coeffs.get((nb, n), Fraction(0)) != c:
                raise ValidationError("coefficient symmetry fails at (n=%s, coset %d)"
                                      % (n, beta))

    def integral_principal_part(self) -> bool:
        return all(c.denominator == 1 for (_, n), c in self.coeffs.items() if n < 0)

    def component_value(self, beta, tau: complex) -> complex:
        acc = 0j
        for (b, n), c in self.coeffs.items():
            if b == beta:
                acc += float(c) * cmath.exp(2j * math.pi * float(n) * tau)
        return acc

    def __repr__(self):
        return "VVForm(weight=%s, rep=%s, %d coeffs, qmax=%s)" % (
            self.weight, self.rep, len(self.coeffs), self.qmax)


def _scalar_from_qseries(series: qexp.QSeries, weight) -> VVForm:
    coeffs = {(0, Fraction(n)): Fraction(c) for n, c in series.items()}
    return VVForm(weight, "scalar", coeffs, 1, qmax=Fraction(series.prec))


def scalar_builder(name: str, truncation: int) -> VVForm:
    """Exact q-expansions of the classical generators, to order q^truncation."""
    if truncation < 1:
        raise ValidationError("truncation must be >= 1")
    t = truncation
    if name == "E4":
        return _scalar_from_qseries(qexp.eisenstein_e4(t), 4)
    if name == "E6":
        return _scalar_from_qseries(qexp.eisenstein_e6(t), 6)
    if name == "Delta":
        return _scalar_from_qseries(qexp.delta_cusp_form(t), 12)
    if name == "j":
        return _scalar_from_qseries(qexp.j_function(t), 0)
    if name == "E4sq_over_Delta":
        return _scalar_from_qseries(qexp.e4sq_over_delta(t), -4)
    raise ValidationError("unknown builder %r" % name)


def jm_form(m: int, truncation: int) -> VVForm:
    """Weight-0 level-one form q^-m + O(q) (normalized: constant term zero)."""
    return _scalar_from_qseries(qexp.faber_jm(m, truncation), 0)


# ---------------------------------------------------------------------------
# Weil representation
# ---------------------------------------------------------------------------

SL2_S = ((0, -1), (1, 0))
SL2_T = ((1, 1), (0, 1))
_WORD_CAP = 10 ** 4


@dataclass
class WeilRep:
    dim: int
    m: int
    group: DiscriminantGroup
    t_mat: numpy.ndarray
    s_mat: numpy.ndarray

    def rho_T_power(self, n: int) -> numpy.ndarray:
        phases = [e_of((Fraction(n) * q) % 1) for q in self.group.q_values]
        return numpy.diag(numpy.array(phases, dtype=complex))


def weil_matrices(L: HermitianLattice) -> WeilRep:
    """The generator matrices: T diagonal with phases e(Q(gamma)); S the
    normalized character table times sqrt(i)^(2m-2), sqrt(i) = e(1/8)."""
    group = L.discriminant_group()
    m = L.m
    dim = group.order
    t = numpy.diag(numpy.array([e_of(q) for q in group.q_values], dtype=complex))
    prefactor = e_of(Fraction(2 * m - 2, 8) % 1) / math.sqrt(dim)
    s = numpy.zeros((dim, dim), dtype=complex)
    tg = L.zview().tgram
    n = len(tg)
    for i, gi in enumerate(group.cosets):
        for j, gj in enumerate(group.cosets):
            bval = sum(gi[a] * tg[a][b] * gj[b] for a in range(n) for b in range(n)) % 1
            s[i, j] = prefactor * e_of((-bval) % 1)
    return WeilRep(dim=dim, m=m, group=group, t_mat=t, s_mat=s)


def sl2_word(M):
    """Decompose M in SL2(Z) as a product of S and T powers (left to right)."""
    (a, b), (c, d) = M
    if a * d - b * c != 1:
        raise ValidationError("matrix does not have determinant 1")
    word = []
    steps = 0
    while c != 0:
        steps += 1
        if steps > _WORD_CAP:
            raise DomainError("word length cap exceeded")
        n = round(Fraction(a, c))
        word.append(("T", n))
        word.append(("S", 1))
        # M <- S^-1 T^-n M
        a, b, c, d = c, d, -(a - n * c), -(b - n * d)
    if a == 1:
        word.append(("T", b))
    else:
        word.append(("S", 2))
        word.append(("T", -b))
    return word


def rho_of(wr: WeilRep, M) -> numpy.ndarray:
    """rho(M) via the S,T word; word-independent up to roundoff."""
    out = numpy.eye(wr.dim, dtype=complex)
    for kind, n in sl2_word(M):
        if kind == "T":
            if n:
                out = out @ wr.rho_T_power(n)
        else:
            for _ in range(n):
                out = out @ wr.s_mat
    return out


def sl2_mul(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def moebius(M, tau: complex) -> complex:
    (a, b), (c, d) = M
    return (a * tau + b) / (c * tau + d)


def slash_check(f: VVForm, M, taus, weilrep: WeilRep | None = None,
                min_im: float = 0.2) -> float:
    """Max modulus of f(M tau) - phi(M,tau)^k rho(M) f(tau) over the samples.

    Measures how far the stored truncated expansion is from transforming like
    a form of its weight.  Samples too close to the real line are rejected.
    """
    (a, b), (c, d) = M
    if a * d - b * c != 1:
        raise ValidationError("matrix does not have determinant 1")
    if f.rep == "scalar":
        rho = numpy.eye(1, dtype=complex)
        dim = 1
    else:
        if weilrep is None:
            raise ValidationError("vector-valued slash check requires the representation")
        rho = rho_of(weilrep, M)
        dim = weilrep.dim
        if dim != f.ncosets:
            raise ValidationError("series components do not match the representation")
    worst = 0.0
    for tau in taus:
        tau = complex(tau)
        mtau = moebius(M, tau)
        if tau.imag < min_im or mtau.imag < min_im:
            raise DomainError("sample point too close to the real line")
        phi = (c * tau + d) ** float(f.weight) if f.weight.denominator == 1 else None
        if phi is None:
            raise ValidationError("slash check requires integer weight")
        left = numpy.array([f.component_value(i, mtau) for i in range(dim)])
        right = phi * (rho @ numpy.array([f.component_value(i, tau) for i in range(dim)]))
        worst = max(worst, float(numpy.max(numpy.abs(left - right))))
    return worst


# ---------------------------------------------------------------------------
# residue pairing and realizability
# ---------------------------------------------------------------------------

def residue_pair(f: VVForm, g) -> Fraction:
    """sum over n <= 0 of c_f(n, beta) * c_g(-n, beta), exact.

    f must be supported in n <= 0 (a Fourier polynomial); g in n >= 0.
    g may be a VVForm or a plain {(coset, n): coefficient} mapping.
    """
    if isinstance(g, VVForm):
        if g.ncosets != f.ncosets:
            raise ValidationError("mismatched discriminant groups (%d vs %d components)"
                                  % (f.ncosets, g.ncosets))
        gmap = g.coeffs
    else:
        gmap = {(int(b), Fraction(n)): Fraction(c) for (b, n), c in g.items()}
        for (b, _n) in gmap:
            if not 0 <= b < f.ncosets:
                raise ValidationError("mismatched discriminant groups")
    for (_, n) in gmap:
        if n < 0:
            raise ValidationError("second argument must be a power series (n >= 0)")
    acc = Fraction(0)
    for (beta, n), c in f.coeffs.items():
        if n > 0:
            continue
        acc += c * gmap.get((beta, -n), Fraction(0))
    return acc


@dataclass
class RealizabilityReport:
    pairings: list          # (basis index, Fraction)
    passed: bool

    def __bool__(self):
        return self.passed


def realizability_check(series, basis) -> RealizabilityReport:
    """Pair a candidate power series against weakly holomorphic forms.

    The series is realizable as a form of the dual weight exactly when every
    pairing vanishes; the report keeps the exact values so a failure shows
    which basis element obstructs.
    """
    pairings = []
    for i, f in enumerate(basis):
        if not f.integral_principal_part():
            raise ValidationError("basis element %d has a non-integral principal part" % i)
        cut = {k: c for k, c in f.coeffs.items() if k[1] <= 0}
        fcut = VVForm(f.weight, f.rep, cut, f.ncosets, qmax=Fraction(1))
        pairings.append((i, residue_pair(fcut, series)))
    return RealizabilityReport(pairings=pairings, passed=all(v == 0 for _, v in pairings))
