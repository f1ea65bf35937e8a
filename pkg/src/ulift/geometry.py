"""The Siegel domain, the tube domain, and the embedding between them.

Points can be processed in three numeric modes: complex doubles (default),
mpmath (``extended``), or the exact ring Q(i, sqrt|d|) (``exact``, available
when the input coordinates are rational pairs).  The geometric formulas are
written once against a small context object.

Conventions.  A Siegel point is (tau, sigma) with sigma the coordinate vector
of the definite block in its module basis.  Its canonical representative is
z = ell' - delta*<ell',ell>*tau*ell + sigma, of positive norm
<z,z> = 2|delta||<ell',ell>|^2 Im(tau) + <sigma,sigma>.  The tube image is
Z = tau*e3 - conj(zeta)*e4 + frak_z(sigma).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ValidationError
from .exactnum import QuadComplex, qc_embed, qc_i, qc_rational
from .field import FieldElement, delta, embed, embed_mp, zeta
from .intlinalg import fraction_content, fraction_lcm
from .lattice import CuspData, HermitianLattice


# ---------------------------------------------------------------------------
# numerics contexts
# ---------------------------------------------------------------------------

class _DoubleCtx:
    kind = "double"

    def __init__(self, disc):
        self.disc = disc

    def embed(self, x: FieldElement):
        return embed(x)

    def rational(self, x):
        return complex(float(Fraction(x)), 0.0)

    @property
    def i(self):
        return 1j

    def lift(self, value):
        if isinstance(value, tuple):
            return complex(float(Fraction(value[0])), float(Fraction(value[1])))
        return complex(value)

    def conj(self, x):
        return x.conjugate()

    def real(self, x):
        return complex(x).real

    def imag(self, x):
        return complex(x).imag

    def to_complex(self, x):
        return complex(x)


class _MPCtx:
    kind = "extended"

    def __init__(self, disc, dps=50):
        import mpmath

        self.mp = mpmath.mp.clone()
        self.mp.dps = dps
        self.disc = disc

    def embed(self, x: FieldElement):
        return embed_mp(x, self.mp)

    def rational(self, x):
        x = Fraction(x)
        return self.mp.mpc(x.numerator) / x.denominator

    @property
    def i(self):
        return self.mp.mpc(0, 1)

    def lift(self, value):
        if isinstance(value, tuple):
            return self.rational(value[0]) + self.i * self.rational(value[1])
        return self.mp.mpc(value)

    def conj(self, x):
        return self.mp.conj(x)

    def real(self, x):
        return self.mp.re(x)

    def imag(self, x):
        return self.mp.im(x)

    def to_complex(self, x):
        return complex(x)


class _ExactCtx:
    kind = "exact"

    def __init__(self, disc):
        self.disc = disc
        self.rad = -disc.d

    def embed(self, x: FieldElement):
        return qc_embed(x)

    def rational(self, x):
        return qc_rational(self.rad, Fraction(x))

    @property
    def i(self):
        return qc_i(self.rad)

    def lift(self, value):
        if isinstance(value, QuadComplex):
            return value
        if isinstance(value, tuple):
            return self.rational(value[0]) + self.i * self.rational(value[1])
        raise ValidationError("exact mode needs rational coordinate pairs")

    def conj(self, x):
        return x.conjugate()

    def real(self, x):
        return QuadComplex(self.rad, x.a, x.b, Fraction(0), Fraction(0))

    def imag(self, x):
        return QuadComplex(self.rad, x.c, x.e, Fraction(0), Fraction(0))

    def to_complex(self, x):
        return x.to_complex()


def numerics(disc, precision="double", dps=50):
    if precision == "double":
        return _DoubleCtx(disc)
    if precision == "extended":
        return _MPCtx(disc, dps)
    if precision == "exact":
        return _ExactCtx(disc)
    raise ValidationError("unknown precision %r" % precision)


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SiegelPoint:
    """tau plus the definite-block coordinates; entries are complex numbers or
    (re, im) rational pairs (the latter enable exact mode)."""

    tau: object
    sigma: tuple = ()


@dataclass(frozen=True)
class TubePoint:
    z1: object
    z2: object
    zdef: tuple    # the definite-block component, ambient coordinates (length 2r)
    x_l: tuple     # real vectors, ambient coordinates
    y_l: tuple


@dataclass(frozen=True)
class HeisenbergElement:
    """[h, t]: h rational, t an exact vector of the definite block (module basis)."""

    h: Fraction
    t: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "h", Fraction(self.h))


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _sigma_ambient(cusp: CuspData, sigma, ctx):
    """Complex coordinates (length r) of sigma in the lattice module basis."""
    if len(sigma) != len(cusp.ofbasis):
        raise ValidationError("sigma has %d coordinates, definite block has rank %d"
                              % (len(sigma), len(cusp.ofbasis)))
    r = cusp.L.rank
    out = [ctx.rational(0)] * r
    for sk, u in zip(sigma, cusp.ofbasis):
        s = ctx.lift(sk)
        for idx in range(r):
            out[idx] = out[idx] + s * ctx.embed(u[idx])
    return out


def herm_c(cusp: CuspData, x, y, ctx):
    """The hermitian form on complex coordinate vectors (conjugate-linear in y)."""
    acc = ctx.rational(0)
    for idx, xi in enumerate(x):
        for jdx, yj in enumerate(y):
            acc = acc + xi * ctx.conj(yj) * ctx.embed(cusp.L.hgram[idx][jdx])
    return acc


def _fvec_c(cusp, fvec, ctx):
    return [ctx.embed(c) for c in fvec]


def _sign_real_quad(a: Fraction, b: Fraction, rad: int) -> int:
    """Exact sign of a + b*sqrt(rad)."""
    if a == 0 and b == 0:
        return 0
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a^2 against b^2 rad
    lhs = a * a
    rhs = b * b * rad
    if lhs == rhs:
        return 0
    bigger_abs_a = lhs > rhs
    return (1 if a > 0 else -1) if bigger_abs_a else (1 if b > 0 else -1)


def siegel_norm(cusp: CuspData, pt: SiegelPoint, ctx=None):
    """<z, z> = 2 |delta| |<ell',ell>|^2 Im(tau) + <sigma, sigma> (a real scalar)."""
    ctx = ctx or numerics(cusp.L.disc)
    tau = ctx.lift(pt.tau)
    sig = _sigma_ambient(cusp, pt.sigma, ctx)
    snorm = cusp.s.norm()  # |<ell',ell>|^2, exact rational
    if ctx.kind == "exact":
        absd = QuadComplex(ctx.rad, Fraction(0), Fraction(1), Fraction(0), Fraction(0))
        term = ctx.rational(2 * snorm) * absd * ctx.imag(tau)
    else:
        term = ctx.rational(0) + 2.0 * float(snorm) * math.sqrt(-cusp.L.disc.d) * ctx.imag(tau)
    qsig = herm_c(cusp, sig, sig, ctx)
    return term + ctx.real(qsig)


def siegel_norm_positive(cusp: CuspData, pt: SiegelPoint, ctx=None) -> bool:
    ctx = ctx or numerics(cusp.L.disc)
    norm = siegel_norm(cusp, pt, ctx)
    if ctx.kind == "exact":
        return _sign_real_quad(norm.a, norm.b, ctx.rad) > 0
    return ctx.real(norm) > 0


def z_of(cusp: CuspData, pt: SiegelPoint, ctx=None):
    """The normalized representative z; rejects points outside the domain."""
    ctx = ctx or numerics(cusp.L.disc)
    if not siegel_norm_positive(cusp, pt, ctx):
        raise DomainError("point is outside the Siegel domain")
    tau = ctx.lift(pt.tau)
    sig = _sigma_ambient(cusp, pt.sigma, ctx)
    dl = ctx.embed(delta(cusp.L.disc))
    sc = ctx.embed(cusp.s)
    ell_c = _fvec_c(cusp, cusp.ell, ctx)
    ellp_c = _fvec_c(cusp, cusp.ellprime, ctx)
    return [ellp_c[idx] - dl * sc * tau * ell_c[idx] + sig[idx]
            for idx in range(cusp.L.rank)]


def to_real(cusp: CuspData, w, ctx):
    """Rewrite a complex module-coordinate vector as a real ambient vector.

    Each coordinate w_i = p + q * zeta decomposes against the real basis
    (v_i, zeta v_i); the result has length 2r.
    """
    zc = ctx.embed(zeta(cusp.L.disc))
    im_z = ctx.imag(zc)
    re_z = ctx.real(zc)
    out = []
    for wi in w:
        q = ctx.imag(wi) / im_z
        p = ctx.real(wi) - q * re_z
        out.append(p)
        out.append(q)
    return out


def b_mixed(cusp: CuspData, xrat, ygen):
    """Trace-form pairing of a rational ambient vector against a generic one."""
    tg = cusp.L.zview().tgram
    n = len(xrat)
    acc = None
    for i in range(n):
        xi = Fraction(xrat[i])
        if xi == 0:
            continue
        row = tg[i]
        for j in range(n):
            if row[j] == 0:
                continue
            term = ygen[j] * (xi * row[j])
            acc = term if acc is None else acc + term
    return 0 if acc is None else acc


def xl_yl(cusp: CuspData, pt: SiegelPoint, ctx=None):
    """The oriented real frame X_L = psi-hat z, Y_L = (-i psi)-hat z."""
    ctx = ctx or numerics(cusp.L.disc)
    z = z_of(cusp, pt, ctx)
    psi = (ctx.rational(1) / ctx.embed(cusp.s)) * ctx.rational(Fraction(1, 2))
    w = [psi * zi for zi in z]
    x_l = to_real(cusp, w, ctx)
    wi = [(ctx.rational(0) - ctx.i) * wj for wj in w]
    y_l = to_real(cusp, wi, ctx)
    return x_l, y_l


def embed_alpha(cusp: CuspData, pt: SiegelPoint, ctx=None) -> TubePoint:
    """Image of a Siegel point in the tube domain: Z = (tau, -conj(zeta), frak z)."""
    ctx = ctx or numerics(cusp.L.disc)
    tau = ctx.lift(pt.tau)
    zc = ctx.embed(zeta(cusp.L.disc))
    z2 = ctx.rational(0) - ctx.conj(zc)
    sig = _sigma_ambient(cusp, pt.sigma, ctx)
    psi = (ctx.rational(1) / ctx.embed(cusp.s)) * ctx.rational(Fraction(1, 2))
    w = [psi * si for si in sig]
    frak_x = to_real(cusp, w, ctx)
    frak_y = to_real(cusp, [(ctx.rational(0) - ctx.i) * wj for wj in w], ctx)
    zdef = tuple(a + ctx.i * b for a, b in zip(frak_x, frak_y))
    x_l, y_l = xl_yl(cusp, pt, ctx)
    return TubePoint(z1=tau, z2=z2, zdef=zdef, x_l=tuple(x_l), y_l=tuple(y_l))


def tube_y(cusp: CuspData, pt: SiegelPoint, ctx=None):
    """Imaginary part of the tube coordinate, as (y1, y2, y_def ambient vector)."""
    ctx = ctx or numerics(cusp.L.disc)
    tp = embed_alpha(cusp, pt, ctx)
    y1 = ctx.imag(tp.z1)
    y2 = ctx.imag(tp.z2)
    ydef = tuple(ctx.imag(c) for c in tp.zdef)
    return y1, y2, ydef


# ---------------------------------------------------------------------------
# Heisenberg group
# ---------------------------------------------------------------------------

def _dgram_herm(cusp: CuspData):
    """Hermitian Gram matrix of the definite module basis, exact."""
    basis = cusp.ofbasis
    return [[cusp.L.herm(u, v) for v in basis] for u in basis]


def heisenberg_compose(cusp: CuspData, g1: HeisenbergElement,
                       g2: HeisenbergElement) -> HeisenbergElement:
    """[h,t] o [h',t'] = [h + h' - Im<t,t'>/|delta|, t + t'], exactly.

    The central term is forced by composing the defining transformations:
    [0,t][0,t']v - [0,t+t']v = <v,ell> * i Im<t,t'> * ell, and [h,0] shifts by
    -<v,ell> delta h ell, so h = -Im<t,t'>/|delta|.  With this constant,
    compose followed by act agrees with acting twice.
    """
    if len(g1.t) != len(g2.t):
        raise ValidationError("mismatched Heisenberg vector lengths")
    if any(not isinstance(c, FieldElement) for c in g1.t + g2.t):
        raise ValidationError("Heisenberg vectors must be exact field-element tuples")
    gram = _dgram_herm(cusp)
    acc = None
    for i, a in enumerate(g1.t):
        for j, b in enumerate(g2.t):
            term = a * b.conj() * gram[i][j]
            acc = term if acc is None else acc + term
    # Im(x)/|delta| for x = a + b*zeta equals b/2, exactly
    corr = Fraction(0) if acc is None else -acc.b / 2
    t_new = tuple(a + b for a, b in zip(g1.t, g2.t))
    return HeisenbergElement(h=g1.h + g2.h + corr, t=t_new)


def heisenberg_act(cusp: CuspData, g: HeisenbergElement, pt: SiegelPoint,
                   ctx=None) -> SiegelPoint:
    """Action on (tau, sigma); the automorphy factor of these elements is 1."""
    ctx = ctx or numerics(cusp.L.disc)
    tau = ctx.lift(pt.tau)
    sigs = [ctx.lift(s) for s in pt.sigma]
    if len(g.t) != len(sigs):
        raise ValidationError("Heisenberg vector length does not match sigma")
    dl = ctx.embed(delta(cusp.L.disc))
    sc = ctx.embed(cusp.s)
    gram = _dgram_herm(cusp)
    # <sigma, t> and <t, t>
    st = ctx.rational(0)
    tt = ctx.rational(0)
    for i in range(len(sigs)):
        for j in range(len(g.t)):
            gij = ctx.embed(gram[i][j])
            st = st + sigs[i] * ctx.conj(ctx.embed(g.t[j])) * gij
            tt = tt + ctx.embed(g.t[i]) * ctx.conj(ctx.embed(g.t[j])) * gij
    tau_new = tau + ctx.rational(g.h) + st / (dl * sc) + tt / (dl * ctx.rational(2))
    sig_new = tuple(s + sc * ctx.embed(t) for s, t in zip(sigs, g.t))
    return SiegelPoint(tau=tau_new, sigma=sig_new)


def heisenberg_in_stabilizer(cusp: CuspData, g: HeisenbergElement) -> bool:
    """Does [h, t] map the lattice into itself?  Exact check on generators.

    [h,0]: v -> v - <v,ell> delta h ell;  [0,t]: v -> v + <v,ell> t - <v,t> ell
    - <v,ell> <t,t> ell / 2.
    """
    L = cusp.L
    r = L.rank
    dl = delta(L.disc)
    t_amb = None
    if g.t:
        # t as an F-vector in module coordinates
        t_amb = [None] * r
        acc = [FieldElement(L.disc, Fraction(0), Fraction(0))] * r
        for tk, u in zip(g.t, cusp.ofbasis):
            acc = [a + tk * ui for a, ui in zip(acc, u)]
        t_amb = tuple(acc)
    from .field import one, zero

    gens = []
    for i in range(r):
        e = [zero(L.disc)] * r
        e[i] = one(L.disc)
        gens.append(tuple(e))
        e2 = [zero(L.disc)] * r
        e2[i] = zeta(L.disc)
        gens.append(tuple(e2))
    for v in gens:
        vl = L.herm(v, cusp.ell)
        img = list(v)
        img = [c + (-(vl * dl * g.h)) * li for c, li in zip(img, cusp.ell)]
        if t_amb is not None:
            vt = L.herm(v, t_amb)
            tt = L.herm(t_amb, t_amb)
            img = [c + vl * ti for c, ti in zip(img, t_amb)]
            img = [c - (vt + vl * tt * Fraction(1, 2)) * li for c, li in zip(img, cusp.ell)]
        if not L.in_lattice(L.fvec_to_z(tuple(img))):
            return False
    return True


def translation_width(L: HermitianLattice, ell) -> Fraction:
    """Minimal N > 0 such that [N, 0] preserves the lattice.

    [h,0] v = v - <v,ell> delta h ell; the set of admissible h is a cyclic
    subgroup of Q computed exactly from the generators.
    """
    ellf = L.fvec(ell)
    dl = delta(L.disc)
    from .field import one, zero

    r = L.rank
    gens = []
    for i in range(r):
        e = [zero(L.disc)] * r
        e[i] = one(L.disc)
        gens.append(tuple(e))
        e2 = [zero(L.disc)] * r
        e2[i] = zeta(L.disc)
        gens.append(tuple(e2))
    steps = []
    for v in gens:
        w = L.scale_fvec(L.herm(v, ellf) * dl, ellf)
        wz = L.fvec_to_z(w)
        c = fraction_content(wz)
        if c is not None:
            steps.append(c)
    if not steps:
        raise ValidationError("vector pairs to zero with the whole lattice")
    return fraction_lcm(steps)


# ---------------------------------------------------------------------------
# cusp neighborhoods and the boundary limit
# ---------------------------------------------------------------------------

def cusp_neighborhood_contains(cusp: CuspData, C, pt: SiegelPoint) -> bool:
    """Strict inequality 2|delta||<ell',ell>|^2 Im tau + <sigma,sigma> > C."""
    if not C > 0:
        raise ValidationError("neighborhood parameter must be positive")
    ctx = numerics(cusp.L.disc)
    val = ctx.real(siegel_norm(cusp, pt, ctx))
    return val > float(C)


def boundary_limit_point(cusp: CuspData):
    """Projective frame coordinates of the limit of alpha(z(i t, sigma)) as t grows:
    (conj zeta, 0, 1, 0, 0...) against (e1, e2, e3, e4, definite block)."""
    zc = embed(zeta(cusp.L.disc))
    dzeros = tuple(0j for _ in range(2 * cusp.L.rank))
    return (zc.conjugate(), 0j, 1 + 0j, 0j, dzeros)


def frame_coords_complex(cusp: CuspData, vec):
    """Frame coordinates (e1..e4 coefficients, definite remainder) of a complex
    ambient vector, via trace-form pairings."""
    a1 = b_mixed(cusp, cusp.e2z, vec)
    a2 = b_mixed(cusp, cusp.e1z, vec)
    a3 = b_mixed(cusp, cusp.e4z, vec)
    a4 = b_mixed(cusp, cusp.e3z, vec)
    rest = tuple(v - a1 * complex(w1) - a2 * complex(w2) - a3 * complex(w3) - a4 * complex(w4)
                 for v, w1, w2, w3, w4 in zip(
                     [complex(v) for v in vec],
                     [float(x) for x in cusp.e1z], [float(x) for x in cusp.e2z],
                     [float(x) for x in cusp.e3z], [float(x) for x in cusp.e4z]))
    return complex(a1), complex(a2), complex(a3), complex(a4), rest


def z_l_vector(cusp: CuspData, pt: SiegelPoint, ctx=None):
    """The ambient complex vector X_L + i Y_L."""
    ctx = ctx or numerics(cusp.L.disc)
    x_l, y_l = xl_yl(cusp, pt, ctx)
    return [a + ctx.i * b for a, b in zip(x_l, y_l)]


# ---------------------------------------------------------------------------
# general unitary action (for stabilizer elements)
# ---------------------------------------------------------------------------

def is_isometry(L: HermitianLattice, gmat) -> bool:
    """Does the F-matrix g (acting on module coordinates) preserve the form?"""
    r = L.rank
    cols = [tuple(gmat[i][j] for i in range(r)) for j in range(r)]
    for i in range(r):
        for j in range(r):
            if L.herm(cols[i], cols[j]) != L.hgram[i][j]:
                return False
    return True


def _f_solve(L: HermitianLattice, columns, target_c, ctx):
    """Solve sum_k x_k * columns_k = target over the complex embedding."""
    r = L.rank
    import numpy

    A = numpy.array([[complex(embed(columns[k][i])) for k in range(r)]
                     for i in range(r)], dtype=complex)
    b = numpy.array([ctx.to_complex(t) for t in target_c], dtype=complex)
    return numpy.linalg.solve(A, b)


def unitary_act(cusp: CuspData, gmat, pt: SiegelPoint, ctx=None):
    """Apply a unitary matrix to a point: returns (image point, automorphy factor).

    The factor is the scalar j with g z(pt) = j * z(image); Heisenberg elements
    have j = 1 and are better served by `heisenberg_act`.
    """
    ctx = ctx or numerics(cusp.L.disc)
    L = cusp.L
    r = L.rank
    z = z_of(cusp, pt, ctx)
    w = [sum((ctx.embed(gmat[i][j]) * z[j] for j in range(r)), ctx.rational(0))
         for i in range(r)]
    ell_c = _fvec_c(cusp, cusp.ell, ctx)
    jfac = herm_c(cusp, w, ell_c, ctx) / ctx.embed(cusp.s)
    zprime = [wi / jfac for wi in w]
    columns = [cusp.ell, cusp.ellprime] + [tuple(u) for u in cusp.ofbasis]
    coords = _f_solve(L, columns, zprime, ctx)
    if abs(coords[1] - 1.0) > 1e-8:
        raise DomainError("normalized image does not have unit ell' component")
    dl = complex(embed(delta(L.disc)))
    sc = complex(embed(cusp.s))
    tau_new = -coords[0] / (dl * sc)
    sigma_new = tuple(coords[2 + k] for k in range(r - 2))
    return SiegelPoint(tau=complex(tau_new), sigma=sigma_new), ctx.to_complex(jfac)
