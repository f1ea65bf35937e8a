"""Borcherds product expansions: factor enumeration, numeric evaluation,
divisor bookkeeping, boundary behavior, and automorphy probes.

A built product stores, for a fixed chamber W, the Weyl vector and the list
of factors (lambda, coset, exponent, offset) with lambda chamber-positive.
Evaluation computes

    e(b(Z, rho)) * prod (1 - e(b(Z, lambda) + offset))^exponent

through logarithms.  Each factor is rearranged onto its convergent side: for
a point whose tube imaginary part has crossed some walls of W, the identity
(1 - e(A)) = -e(A) (1 - e(-A)) converts the stored factor into the one
attached to the adjacent chamber while shifting the Weyl term, so moduli stay
correct across chamber changes (the overall phase is defined up to the
unit-modulus constant of the expansion, which is pinned to 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .divisors import (WeylChamber, WeylVector, chamber_sign_value,
                       weyl_vector)
from .errors import ConvergenceError, DomainError, ValidationError
from .field import embed, zeta
from .geometry import (HeisenbergElement, SiegelPoint, heisenberg_act,
                       numerics, siegel_norm, tube_y, unitary_act)
from .lattice import CuspData
from .modforms import VVForm


@dataclass(frozen=True)
class Factor:
    lam3: Fraction
    lam4: Fraction
    lam_d: tuple        # ambient coordinates of the definite component
    beta: int
    exponent: int
    offset: Fraction    # in [0, 1)


@dataclass(frozen=True)
class DivisorTerm:
    n: Fraction
    orbit: tuple        # canonical unit-orbit label: sorted coset indices
    multiplicity: Fraction


@dataclass(frozen=True)
class Truncation:
    height: Fraction
    factor_floor: float
    pole_order: Fraction
    qmax: Fraction


@dataclass
class BorcherdsProduct:
    cusp: CuspData
    weight: Fraction
    c00: Fraction
    weyl: WeylVector
    chamber: WeylChamber
    factors: tuple
    divisor: tuple
    truncation: Truncation


@dataclass
class EvaluationResult:
    value: complex
    log_value: complex
    log_abs: float
    log_weyl: float        # real part contributed by the exponential prefactor
    factors_used: int
    factors_flipped: int
    tail_bound: float
    near_divisor: bool


def assemble_divisor(f: VVForm, cusp: CuspData):
    """The halved principal-part sum with unit-orbit identification.

    Each (n, beta) contributes c(n,beta)/2, doubled when 2*beta = 0; entries
    in one unit orbit accumulate on the orbit's canonical label.
    """
    acc = {}
    for beta, n, c in f.principal_part():
        if f.rep == "scalar":
            orbit = (0,)
            doubled = 2
        else:
            orbit = cusp.unit_orbits[beta]
            two_beta_zero = cusp.group.add_indices(beta, beta) == 0
            doubled = 2 if two_beta_zero else 1
        key = (n, orbit)
        acc[key] = acc.get(key, Fraction(0)) + Fraction(c) * doubled / 2
    out = [DivisorTerm(n=k[0], orbit=k[1], multiplicity=v)
           for k, v in acc.items() if v != 0]
    out.sort(key=lambda t: (t.n, t.orbit))
    return tuple(out)


def _validate_input_form(f: VVForm, cusp: CuspData):
    m = cusp.L.m
    if f.weight != 1 - m:
        raise ValidationError("input weight %s, expected %s" % (f.weight, 1 - m))
    if f.rep == "dual":
        raise ValidationError("input must transform under the lattice representation")
    if f.rep == "scalar" and cusp.group.order != 1:
        raise ValidationError("scalar input requires a unimodular lattice")
    if not f.integral_principal_part():
        raise ValidationError("principal part is not integral")
    f.validate_support(cusp.group)
    if f.rep != "scalar":
        f.validate_symmetry(cusp.group)


def build(f: VVForm, chamber: WeylChamber, cusp: CuspData, height=10,
          factor_floor=1e-16, weyl: WeylVector | None = None) -> BorcherdsProduct:
    """Enumerate the chamber-positive factor list of the product expansion.

    height bounds the two isotropic-frame coordinates of the enumerated dual
    vectors; the definite directions are complete.  The input form must carry
    coefficients up to the largest norm reachable at this height.
    """
    _validate_input_form(f, cusp)
    rho = weyl_vector(f, chamber, cusp, user_rho=weyl)
    n0 = f.pole_order
    height = Fraction(height)
    factors = []
    qhi = height * height
    for lam3, lam4, lam_d, vec in cusp.k_prime_vectors(height, n0, qhi):
        q = lam3 * lam4 + cusp.qform(lam_d)
        if q < n0:
            continue
        sign = chamber_sign_value(cusp, chamber, lam3, lam4, lam_d)
        if sign <= 0:
            continue
        key = cusp.k_class_key(vec)
        for beta in cusp.beta_by_class.get(key, []):
            if q >= f.qmax:
                raise ValidationError(
                    "factor of norm %s needs coefficients beyond the form's "
                    "truncation %s; rebuild the form with a larger order" % (q, f.qmax))
            c = f.coefficient(q, beta)
            if c == 0:
                continue
            if c.denominator != 1:
                raise ValidationError("factor exponent c(%s, %d) = %s is not an integer"
                                      % (q, beta, c))
            factors.append(Factor(lam3=lam3, lam4=lam4, lam_d=tuple(lam_d),
                                  beta=beta, exponent=int(c),
                                  offset=cusp.offset_of_coset[beta]))
    factors.sort(key=lambda fa: (fa.lam3, fa.lam4, fa.lam_d, fa.beta))
    c00 = f.coefficient(Fraction(0), 0) if f.qmax > 0 else Fraction(0)
    return BorcherdsProduct(
        cusp=cusp,
        weight=c00 / 2,
        c00=c00,
        weyl=rho,
        chamber=chamber,
        factors=tuple(factors),
        divisor=assemble_divisor(f, cusp),
        truncation=Truncation(height=height, factor_floor=float(factor_floor),
                              pole_order=n0, qmax=f.qmax),
    )


def convergence_bound(P: BorcherdsProduct) -> float:
    """Evaluation requires <z,z> strictly above 4 |<ell',ell>|^2 |n0|."""
    return 4.0 * float(P.cusp.s.norm()) * abs(float(P.truncation.pole_order))


def _point_pairing_data(P: BorcherdsProduct, pt: SiegelPoint, ctx):
    """tau, z2 and the ambient pairing vector w = tgram * frak_z at the point."""
    cusp = P.cusp
    tau = ctx.lift(pt.tau)
    z2 = ctx.rational(0) - ctx.conj(ctx.embed(zeta(cusp.L.disc)))
    from .geometry import embed_alpha

    tp = embed_alpha(cusp, pt, ctx)
    tg = cusp.L.zview().tgram
    n = len(tg)
    w = []
    for i in range(n):
        acc = ctx.rational(0)
        for j in range(n):
            if tg[i][j]:
                acc = acc + tp.zdef[j] * ctx.rational(tg[i][j])
        w.append(acc)
    return tau, z2, w


def _factor_phase(fa: Factor, tau, z2, w, ctx):
    acc = ctx.rational(fa.offset)
    if fa.lam4:
        acc = acc + tau * ctx.rational(fa.lam4)
    if fa.lam3:
        acc = acc + z2 * ctx.rational(fa.lam3)
    for j, c in enumerate(fa.lam_d):
        if c:
            acc = acc + w[j] * ctx.rational(c)
    return acc


def evaluate(P: BorcherdsProduct, pt: SiegelPoint, precision="double",
             factor_floor=None, dps=50) -> EvaluationResult:
    """Numeric value at a point of the convergence region.

    Factors whose modulus falls below the floor are dropped and charged to
    the tail bound; factors that ended up on the divergent side of their wall
    are rearranged onto the convergent side (see module docstring).
    """
    if precision not in ("double", "extended"):
        raise ValidationError("evaluation precision must be double or extended")
    cusp = P.cusp
    ctx = numerics(cusp.L.disc, precision, dps)
    floor_ = P.truncation.factor_floor if factor_floor is None else float(factor_floor)
    norm = siegel_norm(cusp, pt, ctx)
    norm_f = float(ctx.real(norm)) if ctx.kind != "exact" else float(norm.to_complex().real)
    gate = convergence_bound(P)
    if not norm_f > gate:
        raise ConvergenceError(
            "point has <z,z> = %.6g, needs > %.6g = 4|<ell',ell>|^2 |n0|"
            % (norm_f, gate))
    tau, z2, w = _point_pairing_data(P, pt, ctx)
    two_pi_i = 2j * math.pi if ctx.kind == "double" else ctx.i * ctx.rational(2) * ctx.mp.pi
    if ctx.kind == "double":
        logf = cmath.log
        expf = cmath.exp
        e_of = lambda a: cmath.exp(2j * math.pi * complex(a))
    else:
        mp = ctx.mp
        logf = mp.log
        expf = mp.exp
        e_of = lambda a: mp.exp(two_pi_i * a)
    # Weyl term
    wphase = ctx.rational(0)
    if P.weyl.rho4:
        wphase = wphase + tau * ctx.rational(P.weyl.rho4)
    if P.weyl.rho3:
        wphase = wphase + z2 * ctx.rational(P.weyl.rho3)
    for j, c in enumerate(P.weyl.rho_d):
        if c:
            wphase = wphase + w[j] * ctx.rational(c)
    total = two_pi_i * wphase
    log_weyl = float(total.real) if ctx.kind == "double" else float(ctx.mp.re(total))
    used = 0
    flipped = 0
    near = False
    floored = {}  # shell index -> sum of |exponent| * m / (1 - m) over dropped factors
    outer = []    # (|exponent|, modulus) of kept factors on the outermost shell
    hh = float(P.truncation.height)
    for fa in P.factors:
        a = _factor_phase(fa, tau, z2, w, ctx)
        x = e_of(a)
        if abs(x) > 1.0:
            # divergent side: (1 - e(A)) = -e(A) (1 - e(-A))
            flipped += 1
            total = total + fa.exponent * logf(-x)
            x = 1 / x
        ax = float(abs(x))
        if ax < floor_:
            shell_idx = max(abs(float(fa.lam3)), abs(float(fa.lam4)))
            key = math.ceil(shell_idx)
            floored[key] = floored.get(key, 0.0) + abs(fa.exponent) * ax / (1.0 - ax)
            continue
        one_minus = 1 - x
        if abs(one_minus) < 1e-12:
            near = True
            continue
        total = total + fa.exponent * logf(one_minus)
        used += 1
        if max(abs(float(fa.lam3)), abs(float(fa.lam4))) >= hh - 1:
            outer.append((abs(fa.exponent), ax))
    # tail estimate under geometric domination: the innermost fully dropped
    # shell bounds the dropped content (factor 2 covers the later shells), and
    # the outermost kept shell extrapolates the content beyond the box
    tail = 0.0
    if floored:
        tail += 2.0 * floored[min(floored)]
    if outer:
        smax = max(m_ for _, m_ in outer)
        s_sum = sum(e_ * m_ / (1.0 - m_) for e_, m_ in outer)
        if smax < 1.0:
            tail += s_sum * smax / (1.0 - smax)
    try:
        value = complex(expf(total)) if ctx.kind == "double" else expf(total)
    except OverflowError:
        value = complex(float("inf"), 0.0)
    log_value = complex(total) if ctx.kind == "double" else total
    log_abs = float(log_value.real) if ctx.kind == "double" else float(ctx.mp.re(total))
    return EvaluationResult(value=value, log_value=log_value, log_abs=log_abs,
                            log_weyl=log_weyl, factors_used=used,
                            factors_flipped=flipped, tail_bound=float(tail),
                            near_divisor=near)


def divisor_of(P: BorcherdsProduct):
    return P.divisor


def boundary_behavior(P: BorcherdsProduct) -> str:
    """'pole', 'zero' or 'finite' at the cusp, by the sign of the e4-component."""
    if P.weyl.rho4 < 0:
        return "pole"
    if P.weyl.rho4 > 0:
        return "zero"
    return "finite"


def boundary_factors(P: BorcherdsProduct):
    """The factors surviving the limit Im tau -> infinity (lam4 = 0)."""
    return [fa for fa in P.factors if fa.lam4 == 0]


def boundary_value(P: BorcherdsProduct, precision="double", dps=50):
    """Limit value at the cusp, when finite: e(conj(rho_ell)) times the product
    over lambda = kappa e3, kappa > 0, of (1 - e(-kappa conj(zeta) + offset)).

    Requires width 1 and a finite boundary classification.  Returns
    (value, factor_moduli).
    """
    cusp = P.cusp
    if cusp.width != 1:
        raise DomainError("boundary values are implemented for width 1 only")
    if boundary_behavior(P) != "finite":
        raise DomainError("product has a %s at the cusp" % boundary_behavior(P))
    if any(c != 0 for c in P.weyl.rho_d):
        raise DomainError("nonzero definite Weyl component; no constant limit")
    ctx = numerics(cusp.L.disc, precision, dps)
    z2 = ctx.rational(0) - ctx.conj(ctx.embed(zeta(cusp.L.disc)))

    def e_val(a):
        if ctx.kind == "double":
            return cmath.exp(2j * math.pi * complex(a))
        return ctx.mp.exp(ctx.i * ctx.rational(2) * ctx.mp.pi * a)

    for fa in boundary_factors(P):
        if any(c != 0 for c in fa.lam_d):
            raise DomainError(
                "definite-direction factor survives at the cusp; the limit is "
                "not a constant for this input")
    value = e_val(z2 * ctx.rational(-P.weyl.rho3))
    moduli = []
    for fa in boundary_factors(P):
        x = e_val(z2 * ctx.rational(fa.lam3) + ctx.rational(fa.offset))
        moduli.append(abs(x))
        value = value * (1 - x) ** fa.exponent
    return value, moduli


def automorphy_check(P: BorcherdsProduct, gammas, pts, precision="double"):
    """Max relative deviation of |product(gamma pt)| from |j|^weight |product(pt)|.

    gammas may be HeisenbergElements (automorphy factor 1) or unitary module
    matrices.  Images outside the convergence region are skipped and reported.
    """
    worst = 0.0
    skipped = []
    w = float(P.weight)
    for pt in pts:
        base = evaluate(P, pt, precision)
        for g in gammas:
            if isinstance(g, HeisenbergElement):
                img = heisenberg_act(P.cusp, g, pt)
                jmod = 1.0
            else:
                img, jf = unitary_act(P.cusp, g, pt)
                jmod = abs(complex(jf))
            try:
                other = evaluate(P, img, precision)
            except ConvergenceError:
                skipped.append((g, pt))
                continue
            dev = abs(math.exp(other.log_abs - base.log_abs - w * math.log(jmod)) - 1.0)
            worst = max(worst, dev)
    return worst, skipped


def vanishing_probe(P: BorcherdsProduct, path, limit_pt: SiegelPoint,
                    precision="double"):
    """Least-squares slope of log|product| against log(distance) along a path
    approaching a divisor point; near an order-k zero the slope is about k.

    The exponential prefactor is zero-free and varies strongly along typical
    paths, so it is divided out before the fit; the raw log moduli are
    returned alongside for monotonicity checks.
    """
    logs = []
    raw_logs = []
    dists = []
    for pt in path:
        res = evaluate(P, pt, precision)
        dist = abs(complex(pt.tau) - complex(limit_pt.tau))
        for a, b in zip(pt.sigma, limit_pt.sigma):
            dist += abs(complex(a) - complex(b))
        if dist <= 0:
            raise ValidationError("path point coincides with the limit")
        logs.append(res.log_abs - res.log_weyl)
        raw_logs.append(res.log_abs)
        dists.append(math.log(dist))
    n = len(path)
    if n < 2:
        raise ValidationError("need at least two path points")
    mx = sum(dists) / n
    my = sum(logs) / n
    sxx = sum((d - mx) ** 2 for d in dists)
    sxy = sum((d - mx) * (v - my) for d, v in zip(dists, logs))
    slope = sxy / sxx
    return slope, list(zip(dists, raw_logs))


def fourier_jacobi_coefficient(P: BorcherdsProduct, n: int, sigma, im_tau,
                               samples=64, precision="double",
                               factor_floor=1e-30) -> complex:
    """Numeric n-th coefficient of the expansion in e(tau), by discrete
    integration over one period of Re tau."""
    acc = 0j
    for k in range(samples):
        x = k / samples
        pt = SiegelPoint(tau=complex(x, im_tau), sigma=sigma)
        val = evaluate(P, pt, precision, factor_floor=factor_floor).value
        acc += val * cmath.exp(-2j * math.pi * n * complex(x, im_tau))
    return acc / samples


def product_multiset(P: BorcherdsProduct):
    """Factor multiset keyed by (lambda, coset, offset) with exponent values."""
    out = {}
    for fa in P.factors:
        key = (fa.lam3, fa.lam4, fa.lam_d, fa.beta, fa.offset)
        out[key] = out.get(key, 0) + fa.exponent
    return {k: v for k, v in out.items() if v != 0}
