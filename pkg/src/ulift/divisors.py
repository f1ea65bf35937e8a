"""Heegner divisors, Weyl chambers, and Weyl vectors.

A Heegner divisor of index (n, beta) is the locally finite sum of the
orthogonal complements of vectors of norm n in the coset beta.  A Weyl
chamber is represented by an interior sample of the imaginary tube
coordinate plus the index set cut out by a form's principal part; chamber
membership of a vector is decided by the sign of its pairing with the
sample.  Chambers whose closure contains the cusp use the limit sign rule
(the e4-coefficient decides whenever it is nonzero).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ValidationError, WeylVectorRequired
from .field import FieldElement, delta, embed
from .geometry import SiegelPoint, b_mixed, herm_c, numerics, tube_y, z_of, z_l_vector
from .lattice import CuspData
from .modforms import VVForm
from .qexp import divisor_sigma

WALL_TOL = 1e-10


@dataclass(frozen=True)
class HeegnerIndex:
    n: Fraction
    beta: int = 0

    def __post_init__(self):
        object.__setattr__(self, "n", Fraction(self.n))
        if self.n >= 0:
            raise ValidationError("Heegner index requires n < 0, got %s" % self.n)


@dataclass(frozen=True)
class WeylVector:
    rho3: Fraction
    rho4: Fraction
    rho_d: tuple = ()   # ambient rational coordinates of the definite component

    def __post_init__(self):
        object.__setattr__(self, "rho3", Fraction(self.rho3))
        object.__setattr__(self, "rho4", Fraction(self.rho4))
        object.__setattr__(self, "rho_d", tuple(Fraction(c) for c in self.rho_d))


@dataclass(frozen=True)
class WeylChamber:
    sample_y: tuple          # (y1, y2, ydef ambient tuple); y1 may be None at the cusp
    index_set: tuple         # sorted ((n, class_key), ...)
    at_cusp: bool = False


def chamber_sign_value(cusp: CuspData, chamber: WeylChamber, lam3, lam4, lam_d):
    """b(sample_Y, lambda) in the limit convention of the chamber."""
    y1, y2, ydef = chamber.sample_y
    if chamber.at_cusp and lam4 != 0:
        return float(lam4)
    finite = float(lam3) * float(y2)
    if any(c != 0 for c in lam_d):
        finite += float(b_mixed(cusp, lam_d, ydef)) if ydef else 0.0
    if chamber.at_cusp:
        return finite
    return float(lam4) * float(y1) + finite


def chamber_condition(cusp: CuspData, lam, chamber: WeylChamber) -> int:
    """Sign of the pairing of a K'-vector with the chamber; 0 is rejected."""
    lam3, lam4, lam_d = cusp.k_frame(tuple(Fraction(c) for c in lam))
    val = chamber_sign_value(cusp, chamber, lam3, lam4, lam_d)
    if abs(val) <= WALL_TOL:
        raise DomainError("vector lies on a wall of the chamber (pairing %.3e)" % val)
    return 1 if val > 0 else -1


def _index_set_of_form(cusp: CuspData, f: VVForm):
    pairs = set()
    for beta, n, _c in f.principal_part():
        if f.rep == "scalar":
            key = cusp.k_class_key(tuple(Fraction(0) for _ in range(2 * cusp.L.rank)))
        else:
            if not cusp.l0_mask[beta]:
                continue  # no wall data outside the width-divisible part
            key = cusp.p_class_of_coset[beta]
        pairs.add((n, key))
    return tuple(sorted(pairs))


def walls_of_index(cusp: CuspData, n, class_key, bound):
    """Vectors kappa in K' of norm n in the given class, within the bound."""
    out = []
    for lam3, lam4, lam_d, vec in cusp.k_prime_vectors(bound, Fraction(n), Fraction(n)):
        if cusp.k_class_key(vec) == class_key:
            out.append((lam3, lam4, lam_d, vec))
    return out


def chamber_of(f: VVForm, cusp: CuspData, pt: SiegelPoint, bound=None,
               tol=WALL_TOL) -> WeylChamber:
    """The chamber of the sample point w.r.t. the walls of f's principal part.

    Raises if the point lies on a wall (within tolerance) and names the wall
    vector.  The wall set is enumerated up to the bound, default
    max(8, 4|n0|) in the frame coordinates.
    """
    index_set = _index_set_of_form(cusp, f)
    if bound is None:
        n0 = min((n for n, _ in index_set), default=Fraction(-1))
        bound = max(8, int(4 * abs(n0)))
    y1, y2, ydef = tube_y(cusp, pt)
    sample = (float(y1), float(y2), tuple(float(c) for c in ydef))
    for n, key in index_set:
        for lam3, lam4, lam_d, vec in walls_of_index(cusp, n, key, bound):
            val = float(lam4) * sample[0] + float(lam3) * sample[1]
            if any(c != 0 for c in lam_d):
                val += float(b_mixed(cusp, lam_d, sample[2]))
            if abs(val) <= tol:
                raise DomainError("point lies on the wall of kappa = %s (index n=%s)"
                                  % (vec, n))
    return WeylChamber(sample_y=sample, index_set=index_set, at_cusp=False)


def cusp_chamber(f: VVForm, cusp: CuspData, sigma=(), ctx=None) -> WeylChamber:
    """The chamber adjacent to the cusp over the given definite coordinates:
    signs are taken in the limit of large Im tau."""
    index_set = _index_set_of_form(cusp, f)
    ctx = ctx or numerics(cusp.L.disc)
    probe = SiegelPoint(tau=1e6j, sigma=sigma)
    _y1, y2, ydef = tube_y(cusp, probe, ctx)
    sample = (None, float(y2), tuple(float(ctx.to_complex(c).real) if hasattr(c, 'to_complex')
                                     else float(c) for c in ydef))
    return WeylChamber(sample_y=sample, index_set=index_set, at_cusp=True)


def verify_topmost(cusp: CuspData, chamber: WeylChamber, bound=None) -> bool:
    """A chamber is 'topmost' when its sign on every wall matches the limit
    rule sign(kappa_4); chambers built by `cusp_chamber` qualify by fiat."""
    if chamber.at_cusp:
        return True
    if bound is None:
        n0 = min((n for n, _ in chamber.index_set), default=Fraction(-1))
        bound = max(8, int(4 * abs(n0)))
    for n, key in chamber.index_set:
        for lam3, lam4, lam_d, _vec in walls_of_index(cusp, n, key, bound):
            val = chamber_sign_value(cusp, chamber, lam3, lam4, lam_d)
            if lam4 == 0:
                continue
            if (val > 0) != (lam4 > 0):
                return False
    return True


def weyl_vector(f: VVForm, chamber: WeylChamber, cusp: CuspData,
                user_rho: WeylVector | None = None) -> WeylVector:
    """The Weyl vector of the product expansion on the chamber.

    Builtin rule: for a scalar input over a unimodular m = 1 lattice and a
    chamber adjacent to the cusp, the exponential prefactor is
    e(-(sum_{n<0} c(n) sigma_1(-n)) tau), i.e. rho = -sum c(n) sigma_1(-n) e4.
    Anything else requires a caller-supplied vector.
    """
    if user_rho is not None:
        if len(user_rho.rho_d) not in (0, 2 * cusp.L.rank):
            raise ValidationError("definite component must use ambient coordinates")
        return user_rho
    builtin_ok = (cusp.group.order == 1 and cusp.L.m == 1
                  and f.ncosets == 1 and verify_topmost(cusp, chamber))
    if not builtin_ok:
        raise WeylVectorRequired(
            "no builtin Weyl vector for this input; supply one explicitly")
    rho4 = Fraction(0)
    for _beta, n, c in f.principal_part():
        if n.denominator != 1:
            raise ValidationError("scalar principal part with fractional exponent")
        rho4 -= c * divisor_sigma(-int(n), 1)
    return WeylVector(rho3=Fraction(0), rho4=rho4, rho_d=())


# ---------------------------------------------------------------------------
# Heegner points
# ---------------------------------------------------------------------------

@dataclass
class HeegnerData:
    index: HeegnerIndex
    lambdas: list           # ambient coordinate tuples
    points: list            # SiegelPoints (m = 1 only)
    tau_exact: list         # FieldElements, parallel to points (m = 1 only)
    equations: list         # (lambda, C, A, Bs) with C + A tau + sum B_k s_k = 0


def heegner_points(cusp: CuspData, index: HeegnerIndex, bound=None,
                   min_im=Fraction(1, 4)) -> HeegnerData:
    """Solve for the support of the divisor of index (n, beta).

    For m = 1 each vector lambda contributes the single point
    tau = <ell', lambda> / (delta <ell',ell> <ell, lambda>), kept when its
    imaginary part exceeds min_im; the exact field value is retained.  For
    m >= 2 the affine equation of each hyperplane is returned instead.
    """
    L = cusp.L
    group = cusp.group
    n = index.n
    q = group.q_values[index.beta]
    if (n - q) % 1 != 0:
        raise ValidationError("index n=%s is incompatible with coset Q=%s mod 1" % (n, q))
    if bound is None:
        bound = max(8, int(4 * abs(n)))
    shift = group.cosets[index.beta]
    lambdas = cusp.lattice_norm_vectors(shift, n, Fraction(bound))
    data = HeegnerData(index=index, lambdas=lambdas, points=[], tau_exact=[], equations=[])
    dl = delta(L.disc)
    if L.m == 1:
        seen = set()
        for lam in lambdas:
            lf = L.z_to_fvec(lam)
            a = L.herm(L.fvec(cusp.ell), lf)        # <ell, lambda>
            cval = L.herm(L.fvec(cusp.ellprime), lf)  # <ell', lambda>
            if a.is_zero():
                continue
            tau_f = cval / (dl * cusp.s * a)
            tau_c = embed(tau_f)
            if tau_c.imag <= float(min_im):
                continue
            key = (tau_f.a, tau_f.b)
            if key in seen:
                continue
            seen.add(key)
            data.points.append(SiegelPoint(tau=tau_c))
            data.tau_exact.append(tau_f)
        order = sorted(range(len(data.points)),
                       key=lambda i: (data.points[i].tau.imag, data.points[i].tau.real))
        data.points = [data.points[i] for i in order]
        data.tau_exact = [data.tau_exact[i] for i in order]
    else:
        # <z, lambda> = C + A tau + sum_k B_k s_k with the coefficients below
        for lam in lambdas:
            lf = L.z_to_fvec(lam)
            a_coef = -(dl * cusp.s * L.herm(cusp.ell, lf))
            c_coef = L.herm(cusp.ellprime, lf)
            bs = [L.herm(tuple(u), lf) for u in cusp.ofbasis]
            data.equations.append((lam, c_coef, a_coef, bs))
    return data


def pullback_consistency(cusp: CuspData, lam, pt: SiegelPoint, ctx=None):
    """(|<lambda, z>|, |b(lambda, Z_L)|): the two sides vanish together."""
    ctx = ctx or numerics(cusp.L.disc)
    lam = tuple(Fraction(c) for c in lam)
    lam_f = cusp.L.z_to_fvec(lam)
    z = z_of(cusp, pt, ctx)
    lam_c = [ctx.embed(c) for c in lam_f]
    r1 = herm_c(cusp, lam_c, z, ctx)
    zl = z_l_vector(cusp, pt, ctx)
    r2 = b_mixed(cusp, lam, zl)
    return abs(ctx.to_complex(r1)), abs(complex(r2))
