"""Hermitian lattices over imaginary quadratic integers and their Z-lattice view.

A lattice is described by its Gram matrix over the field (conjugate-linear in
the second argument).  The underlying Z-module carries the trace bilinear form
`b = tr<.,.>` with quadratic form `Q(x) = <x,x> = b(x,x)/2`.  Everything in
this module is exact rational arithmetic.

Vectors appear in two shapes:
  * F-vectors: tuples of FieldElement, length r, coordinates in the module basis;
  * Z-coordinates: tuples of Fraction, length 2r, w.r.t. the interleaved basis
    (v1, zeta*v1, ..., vr, zeta*vr).  The interleaving is fixed so discriminant
    group labels are reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .errors import DomainError, ValidationError
from .field import (Discriminant, FieldElement, delta, embed, from_pair, one,
                    zeta, zero)
from .intlinalg import (extended_gcd_combo, fraction_content, frac_det,
                        frac_inv, frac_solve, integer_kernel, mat_vec,
                        smith_normal_form)

Vec = tuple  # alias for readability: tuple of Fraction (Z-coords)


def _as_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError("expected an integer, got %s" % x)
    return x.numerator


# ---------------------------------------------------------------------------
# hermitian lattice
# ---------------------------------------------------------------------------

class HermitianLattice:
    """Even hermitian lattice of signature (1, m) with integral Gram data."""

    def __init__(self, disc: Discriminant, hgram):
        self.disc = disc
        self.hgram = tuple(tuple(row) for row in hgram)
        self.rank = len(self.hgram)
        self.m = self.rank - 1
        self._validate()
        self._zview = None
        self._disc_group = None

    def _validate(self):
        d = self.disc
        r = self.rank
        if r < 1 or any(len(row) != r for row in self.hgram):
            raise ValidationError("gram matrix must be square of rank >= 1")
        dl = delta(d)
        for i in range(r):
            for j in range(r):
                x = self.hgram[i][j]
                if not isinstance(x, FieldElement) or x.disc != d:
                    raise ValidationError("gram entries must be field elements over d=%d" % d.d)
                if self.hgram[j][i] != x.conj():
                    raise ValidationError("gram matrix is not hermitian at (%d,%d)" % (i, j))
                if not (dl * x).is_integral():
                    raise ValidationError("gram entry (%d,%d) is outside the inverse different" % (i, j))
            diag = self.hgram[i][i]
            if not (diag.is_rational() and diag.a.denominator == 1):
                raise ValidationError("diagonal entry %d is not a rational integer (lattice not even)" % i)
        # nondegeneracy, exactly
        if self._field_det().is_zero():
            raise ValidationError("gram matrix is degenerate")
        # signature (1, m), numerically on the embedded hermitian matrix
        import numpy

        h = numpy.array([[embed(x) for x in row] for row in self.hgram], dtype=complex)
        eig = numpy.linalg.eigvalsh(h)
        pos = int((eig > 1e-12).sum())
        neg = int((eig < -1e-12).sum())
        if pos != 1 or neg != r - 1:
            raise ValidationError("signature is (%d,%d), expected (1,%d)" % (pos, neg, r - 1))

    def _field_det(self) -> FieldElement:
        r = self.rank
        if r == 1:
            return self.hgram[0][0]
        total = zero(self.disc)
        for perm in itertools.permutations(range(r)):
            sign = 1
            seen = list(perm)
            # parity via inversion count
            inv = sum(1 for i in range(r) for j in range(i + 1, r) if seen[i] > seen[j])
            sign = -1 if inv % 2 else 1
            term = one(self.disc)
            for i in range(r):
                term = term * self.hgram[i][perm[i]]
            total = total + (term if sign == 1 else -term)
        return total

    # -- forms -------------------------------------------------------------

    def herm(self, x, y) -> FieldElement:
        """<x, y> for F-vectors, linear in x and conjugate-linear in y."""
        acc = zero(self.disc)
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                acc = acc + xi * yj.conj() * self.hgram[i][j]
        return acc

    def qval(self, x) -> Fraction:
        return self.herm(x, x).rational_part()

    # -- F-vector helpers ----------------------------------------------------

    def fvec(self, entries) -> tuple:
        out = []
        for v in entries:
            if isinstance(v, FieldElement):
                out.append(v)
            else:
                out.append(from_pair(self.disc, v, 0))
        if len(out) != self.rank:
            raise ValidationError("vector length %d != rank %d" % (len(out), self.rank))
        return tuple(out)

    def scale_fvec(self, c: FieldElement, x) -> tuple:
        return tuple(c * xi for xi in x)

    def add_fvec(self, x, y) -> tuple:
        return tuple(xi + yi for xi, yi in zip(x, y))

    def fvec_to_z(self, x) -> Vec:
        coords = []
        for xi in x:
            coords.append(xi.a)
            coords.append(xi.b)
        return tuple(coords)

    def z_to_fvec(self, coords) -> tuple:
        out = []
        for i in range(self.rank):
            out.append(from_pair(self.disc, coords[2 * i], coords[2 * i + 1]))
        return tuple(out)

    # -- Z-lattice view ------------------------------------------------------

    def zview(self) -> "ZView":
        if self._zview is None:
            self._zview = trace_gram(self)
        return self._zview

    def bform(self, xz: Vec, yz: Vec) -> Fraction:
        t = self.zview().tgram
        n = len(xz)
        acc = Fraction(0)
        for i in range(n):
            if xz[i] == 0:
                continue
            row = t[i]
            acc += xz[i] * sum(row[j] * yz[j] for j in range(n) if yz[j] != 0)
        return acc

    def qform_z(self, xz: Vec) -> Fraction:
        return self.bform(xz, xz) / 2

    def discriminant_group(self) -> "DiscriminantGroup":
        if self._disc_group is None:
            _, self._disc_group = dual_and_discriminant(self)
        return self._disc_group

    def units(self):
        """The unit group of the order, as field elements."""
        d = self.disc
        if d.d == -4:
            z = zeta(d)
            return [one(d), -one(d), z, -z]
        if d.d == -3:
            z = zeta(d)
            us = [one(d)]
            for _ in range(5):
                us.append(us[-1] * z)
            return us
        return [one(d), -one(d)]

    def in_lattice(self, xz: Vec) -> bool:
        return all(Fraction(c).denominator == 1 for c in xz)

    def in_dual(self, xz: Vec) -> bool:
        t = self.zview().tgram
        n = len(xz)
        for i in range(n):
            if sum(t[i][j] * xz[j] for j in range(n)).denominator != 1:
                return False
        return True

    def __repr__(self):
        return "HermitianLattice(d=%d, rank=%d)" % (self.disc.d, self.rank)


@dataclass(frozen=True)
class ZView:
    """The trace-form view: interleaved generators and integer Gram matrix."""

    tgram: tuple
    det: int


def trace_gram(L: HermitianLattice) -> ZView:
    """Integer Gram matrix of b = tr<.,.> on (v1, zeta v1, ..., vr, zeta vr)."""
    r = L.rank
    z = zeta(L.disc)
    gens = []
    for i in range(r):
        e = [zero(L.disc)] * r
        e[i] = one(L.disc)
        gens.append(tuple(e))
        e2 = [zero(L.disc)] * r
        e2[i] = z
        gens.append(tuple(e2))
    n = 2 * r
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            val = L.herm(gens[i], gens[j]).trace()
            if val.denominator != 1:
                raise ValidationError("trace form is not integral; lattice data invalid")
            row.append(int(val))
        rows.append(tuple(row))
    tg = tuple(rows)
    det = int(frac_det([list(r_) for r_ in rows]))
    return ZView(tgram=tg, det=det)


# ---------------------------------------------------------------------------
# discriminant group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple
    cosets: tuple          # tuples of Fraction in [0,1)^{2r}, sorted, index 0 = zero
    q_values: tuple        # Q mod 1 per coset
    order: int
    _index: dict = dataclass_field(repr=False, hash=False, compare=False, default=None)

    def index_of(self, coords) -> int:
        key = tuple(Fraction(c) % 1 for c in coords)
        try:
            return self._index[key]
        except KeyError:
            raise ValidationError("coordinates do not represent a dual-lattice coset")

    def neg_index(self, i: int) -> int:
        return self.index_of(tuple(-c for c in self.cosets[i]))

    def add_indices(self, i: int, j: int) -> int:
        return self.index_of(tuple(a + b for a, b in zip(self.cosets[i], self.cosets[j])))


def _group_from_gram(tgram):
    """Cosets of dual/lattice for an integer Gram matrix, canonically ordered."""
    n = len(tgram)
    det = int(frac_det([list(r) for r in tgram]))
    if det == 0:
        raise ValidationError("degenerate bilinear form")
    diag, U, _V = smith_normal_form([list(r) for r in tgram])
    uinv = frac_inv([[Fraction(x) for x in row] for row in U])
    tinv = frac_inv([[Fraction(x) for x in row] for row in tgram])
    reps = []
    ranges = [range(d if d != 0 else 1) for d in diag]
    for combo in itertools.product(*ranges):
        y = mat_vec(uinv, [Fraction(c) for c in combo])
        x = mat_vec(tinv, y)
        reps.append(tuple(Fraction(c) % 1 for c in x))
    reps = sorted(set(reps))
    if len(reps) != abs(det):
        raise ArithmeticError("coset enumeration does not match |det|")
    qvals = []
    for v in reps:
        q = sum(v[i] * tgram[i][j] * v[j] for i in range(n) for j in range(n)) / 2
        qvals.append(Fraction(q) % 1)
    inv_factors = tuple(d for d in diag if d not in (0, 1))
    index = {v: i for i, v in enumerate(reps)}
    return DiscriminantGroup(invariant_factors=inv_factors, cosets=tuple(reps),
                             q_values=tuple(qvals), order=abs(det), _index=index)


def dual_and_discriminant(L: HermitianLattice):
    """Dual basis (columns of tgram^-1) and the discriminant group of L."""
    zv = L.zview()
    tinv = frac_inv([list(r) for r in zv.tgram])
    dual_basis = [tuple(tinv[i][j] for i in range(len(tinv))) for j in range(len(tinv))]
    group = _group_from_gram(zv.tgram)
    return dual_basis, group


# ---------------------------------------------------------------------------
# width, isotropic data
# ---------------------------------------------------------------------------

def _check_primitive_isotropic(L, ellz):
    if not L.in_lattice(ellz):
        raise ValidationError("isotropic vector is not in the lattice")
    ints = [int(c) for c in ellz]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g != 1:
        raise ValidationError("isotropic vector is not primitive")
    if L.qform_z(ellz) != 0:
        raise ValidationError("vector is not isotropic")


def width(L: HermitianLattice, ell) -> int:
    """Positive generator of the ideal tr<L, ell> in Z."""
    ellz = L.fvec_to_z(L.fvec(ell))
    _check_primitive_isotropic(L, ellz)
    zv = L.zview()
    n = len(ellz)
    vals = []
    for i in range(n):
        unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
        vals.append(int(L.bform(unit, ellz)))
    g, _ = extended_gcd_combo(vals)
    if g == 0:
        raise ValidationError("vector pairs to zero with the whole lattice")
    return g


# ---------------------------------------------------------------------------
# cusp data: hyperbolic basis, K, projections, enumeration frames
# ---------------------------------------------------------------------------

class CuspData:
    """Everything derived from the choice of an isotropic pair (ell, ell').

    Holds the four-vector frame e1..e4, the Lorentzian sublattice K with its
    dual and discriminant data, the definite block shared by K and the
    lattice, and the projection maps used by divisors and product expansions.
    """

    def __init__(self, L: HermitianLattice, ell, ellprime):
        self.L = L
        d = L.disc
        self.ell = L.fvec(ell)
        self.ellprime = L.fvec(ellprime)
        self.ellz = L.fvec_to_z(self.ell)
        self.ellpz = L.fvec_to_z(self.ellprime)
        _check_primitive_isotropic(L, self.ellz)
        if not L.in_dual(self.ellpz):
            raise ValidationError("second isotropic vector is not in the dual lattice")
        if L.qval(self.ellprime) != 0:
            raise ValidationError("second vector is not isotropic")
        self.s = L.herm(self.ellprime, self.ell)  # <ell', ell>
        if self.s.is_zero():
            raise ValidationError("<ell', ell> vanishes")
        zf = zeta(d)
        dl = delta(d)
        inv = (dl * self.s).inverse()
        self.e1 = self.ell
        self.e2 = L.scale_fvec(zf * inv, self.ellprime)
        self.e3 = L.scale_fvec(-zf, self.ell)
        self.e4 = L.scale_fvec(inv, self.ellprime)
        self.e1z = L.fvec_to_z(self.e1)
        self.e2z = L.fvec_to_z(self.e2)
        self.e3z = L.fvec_to_z(self.e3)
        self.e4z = L.fvec_to_z(self.e4)
        self._check_frame_gram()
        self.width = width(L, ell)
        self.f_vec = self._find_width_vector()
        self._build_k()
        self._build_definite()
        self._build_dual_frames()
        self._build_group_maps()

    # -- construction steps ---------------------------------------------------

    def _check_frame_gram(self):
        L = self.L
        es = [self.e1z, self.e2z, self.e3z, self.e4z]
        want = {(0, 1): 1, (2, 3): 1}
        for i in range(4):
            for j in range(i, 4):
                val = L.bform(es[i], es[j])
                expect = Fraction(want.get((i, j), 0))
                if val != expect:
                    raise RuntimeError(
                        "frame construction failed: b(e%d,e%d) = %s" % (i + 1, j + 1, val))

    def _find_width_vector(self):
        L = self.L
        n = 2 * L.rank
        vals = []
        for i in range(n):
            unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
            vals.append(int(L.bform(self.ellz, unit)))
        g, coeffs = extended_gcd_combo(vals)
        assert g == self.width
        return tuple(Fraction(c) for c in coeffs)

    def _build_k(self):
        L = self.L
        n = 2 * L.rank
        rows = []
        for target in (self.e1z, self.e2z):
            row = []
            for i in range(n):
                unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
                row.append(L.bform(unit, target))
            rows.append(row)
        self.k_basis = [tuple(Fraction(c) for c in col) for col in integer_kernel(rows)]
        k = len(self.k_basis)
        if k != 2 * L.rank - 2:
            # rank of K is 2m = 2r - 2: two independent constraints on 2r coordinates
            raise RuntimeError("unexpected K rank %d" % k)
        self.k_gram = [[_as_int(L.bform(a, b)) for b in self.k_basis] for a in self.k_basis]
        self.k_gram_inv = frac_inv(self.k_gram)
        self.k_dual_basis = []
        for j in range(k):
            vec = tuple(sum(self.k_gram_inv[i][j] * self.k_basis[i][t] for i in range(k))
                        for t in range(n))
            self.k_dual_basis.append(vec)
        self.k_group = _group_from_gram(self.k_gram)

    def _build_definite(self):
        L = self.L
        n = 2 * L.rank
        rows = []
        for target in (self.e1z, self.e2z, self.e3z, self.e4z):
            row = []
            for i in range(n):
                unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
                row.append(L.bform(unit, target))
            rows.append(row)
        self.d_basis = [tuple(Fraction(c) for c in col) for col in integer_kernel(rows)]
        self.d_gram = [[L.bform(a, b) for b in self.d_basis] for a in self.d_basis]
        # hyperbolic 4-block of the lattice: L intersected with the span of e1..e4
        drows = []
        for dvec in self.d_basis:
            row = []
            for i in range(n):
                unit = tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
                row.append(L.bform(unit, dvec))
            drows.append(row)
        self.span4_basis = [tuple(Fraction(c) for c in col) for col in integer_kernel(drows)] \
            if drows else [tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
                           for i in range(n)]
        self.ofbasis = self._find_of_basis()

    def _find_of_basis(self):
        """An O_F-basis (u_k) of the definite block: (u_1, zeta u_1, ...) spans it over Z.

        Bounded search over small integer combinations; adequate for the desk
        scale m <= 2 this package targets.  Raises if nothing is found.
        """
        L = self.L
        dim = len(self.d_basis)
        if dim == 0:
            return []
        if dim % 2:
            raise RuntimeError("definite block has odd Z-rank")
        half = dim // 2
        zf = zeta(L.disc)
        nn = 2 * L.rank
        dmat = [[self.d_basis[i][t] for i in range(dim)] for t in range(nn)]

        def zmul(vec):
            return L.fvec_to_z(L.scale_fvec(zf, L.z_to_fvec(vec)))

        def d_coords(vec):
            return frac_solve(dmat, list(vec))

        reach = 2 if half == 1 else 1
        candidates = []
        for coeffs in itertools.product(range(-reach, reach + 1), repeat=dim):
            if all(c == 0 for c in coeffs):
                continue
            u = tuple(sum(Fraction(c) * self.d_basis[i][t] for i, c in enumerate(coeffs))
                      for t in range(nn))
            candidates.append(u)

        chosen = []

        def det_ok(vectors):
            cols = [d_coords(v) for v in vectors]
            det = frac_det([[cols[j][i] for j in range(dim)] for i in range(dim)])
            return abs(det) == 1

        def extend():
            if len(chosen) == half:
                flat = []
                for u in chosen:
                    flat.append(u)
                    flat.append(zmul(u))
                return det_ok(flat)
            for u in candidates:
                chosen.append(u)
                if extend():
                    return True
                chosen.pop()
            return False

        if not extend():
            raise RuntimeError("could not find an O_F-basis of the definite block; "
                               "supply a lattice whose definite part is free in the "
                               "given coordinates")
        return [L.z_to_fvec(u) for u in chosen]

    def _build_dual_frames(self):
        L = self.L
        n = 2 * L.rank
        k = len(self.k_basis)
        # smallest positive multiples of e3 and e4 lying in K'
        p3 = [_as_int(self.L.bform(self.e3z, kb)) for kb in self.k_basis]
        p4 = [Fraction(self.L.bform(self.e4z, kb)) for kb in self.k_basis]
        g3 = 0
        for x in p3:
            g3 = math.gcd(g3, x)
        self.t3 = Fraction(1, g3)
        c4 = fraction_content(p4)
        if c4 is None:
            raise RuntimeError("e4 pairs to zero with K")
        self.t4 = c4
        # definite block of K': vectors of K' orthogonal to e3 and e4
        rows = []
        for target in (self.e3z, self.e4z):
            rows.append([L.bform(kd, target) for kd in self.k_dual_basis])
        self.kp_def_basis = []
        for col in integer_kernel(rows):
            vec = tuple(sum(Fraction(col[i]) * self.k_dual_basis[i][t] for i in range(k))
                        for t in range(n))
            self.kp_def_basis.append(vec)
        # cosets of K' modulo (Z t3 e3 + Z t4 e4 + definite block); coordinates
        # w.r.t. the dual basis are the pairings with the K basis
        sub = [tuple(self.t3 * c for c in self.e3z), tuple(self.t4 * c for c in self.e4z)]
        sub += self.kp_def_basis
        coords = [[_as_int(L.bform(v, kb)) for kb in self.k_basis] for v in sub]
        M = [[coords[j][i] for j in range(len(sub))] for i in range(k)]
        diag, U, _ = smith_normal_form(M)
        uinv = frac_inv([[Fraction(x) for x in row] for row in U])
        reps = []
        ranges = [range(abs(dd) if dd != 0 else 1) for dd in diag]
        for combo in itertools.product(*ranges):
            y = mat_vec(uinv, [Fraction(c) for c in combo])
            vec = tuple(sum(y[i] * self.k_dual_basis[i][t] for i in range(k))
                        for t in range(n))
            reps.append(vec)
        self.kp_mod_sub_reps = reps

    def _build_group_maps(self):
        L = self.L
        self.group = L.discriminant_group()
        n = 2 * L.rank
        self.l0_mask = []
        self.p_class_of_coset = []
        self.offset_of_coset = []
        for rep in self.group.cosets:
            pair = self.L.bform(rep, self.ellz)
            in_l0 = (pair / self.width).denominator == 1
            self.l0_mask.append(in_l0)
            if in_l0:
                pvec = self.project_p(rep)
                self.p_class_of_coset.append(self.k_class_key(pvec))
            else:
                self.p_class_of_coset.append(None)
            off = self.L.bform(rep, self.e2z) % 1
            self.offset_of_coset.append(off)
        self.beta_by_class = {}
        for idx, key in enumerate(self.p_class_of_coset):
            if key is not None:
                self.beta_by_class.setdefault(key, []).append(idx)
        # unit orbits of cosets, canonical label = sorted tuple of indices
        self.unit_orbits = []
        for idx, rep in enumerate(self.group.cosets):
            orbit = set()
            for u in L.units():
                uz = L.fvec_to_z(L.scale_fvec(u, L.z_to_fvec(rep)))
                orbit.add(self.group.index_of(uz))
            self.unit_orbits.append(tuple(sorted(orbit)))

    # -- frames and projections ----------------------------------------------

    def bform(self, x, y):
        return self.L.bform(x, y)

    def qform(self, x):
        return self.L.qform_z(x)

    def project_pk(self, x: Vec) -> Vec:
        """x - b(x,e1) e2: kills the e2-component (the isotropic-frame projection)."""
        a = self.L.bform(x, self.e1z)
        return tuple(xi - a * ei for xi, ei in zip(x, self.e2z))

    def k_component(self, x: Vec) -> Vec:
        """Component of x in the K-frame (e1 and e2 parts stripped)."""
        a = self.L.bform(x, self.e1z)
        b = self.L.bform(x, self.e2z)
        return tuple(xi - a * e2i - b * e1i
                     for xi, e2i, e1i in zip(x, self.e2z, self.e1z))

    def e_frame(self, x: Vec):
        """(a1, a2, a3, a4, xD): coefficients along e1..e4 plus the definite part."""
        a1 = self.L.bform(x, self.e2z)
        a2 = self.L.bform(x, self.e1z)
        a3 = self.L.bform(x, self.e4z)
        a4 = self.L.bform(x, self.e3z)
        xd = tuple(xi - a1 * w1 - a2 * w2 - a3 * w3 - a4 * w4
                   for xi, w1, w2, w3, w4 in zip(x, self.e1z, self.e2z, self.e3z, self.e4z))
        return a1, a2, a3, a4, xd

    def k_frame(self, x: Vec):
        """(x3, x4, xD) for x in the span of K."""
        x3 = self.L.bform(x, self.e4z)
        x4 = self.L.bform(x, self.e3z)
        xd = tuple(xi - x3 * w3 - x4 * w4 for xi, w3, w4 in zip(x, self.e3z, self.e4z))
        return x3, x4, xd

    def k_coords(self, x: Vec):
        """Coordinates of x in the K basis (x must lie in the span of K)."""
        pair = [self.L.bform(x, kb) for kb in self.k_basis]
        return mat_vec(self.k_gram_inv, pair)

    def k_class_key(self, x: Vec):
        """Class of x in K'/K, as K-basis coordinates mod 1."""
        return tuple(Fraction(c) % 1 for c in self.k_coords(x))

    def project_p(self, lam: Vec) -> Vec:
        """Projection to K' defined on vectors with b(lam, ell) divisible by the width."""
        a = self.L.bform(lam, self.ellz)
        t = a / self.width
        if t.denominator != 1:
            raise ValidationError("vector is outside L0': pairing with ell is %s, width %d"
                                  % (a, self.width))
        lam_k = self.k_component(lam)
        f_k = self.k_component(self.f_vec)
        return tuple(x - t * y for x, y in zip(lam_k, f_k))

    def coset_representatives(self, kappa: Vec):
        """The width-many dual-lattice classes lying over a K' vector kappa."""
        reps = []
        bkf = self.L.bform(kappa, self.f_vec)
        for b in range(self.width):
            vec = tuple(k - (bkf - b) * e / self.width
                        for k, e in zip(kappa, self.ellz))
            reps.append(vec)
        return reps

    # -- enumeration ----------------------------------------------------------

    def _definite_vectors(self, basis, shift, qlo, qhi):
        """All shift + integer combos of basis with qlo <= Q <= qhi (definite block)."""
        k = len(basis)
        if k == 0:
            q = self.qform(shift)
            return [shift] if qlo <= q <= qhi else []
        gram = [[self.bform(a, b) for b in basis] for a in basis]
        P = [[-gram[i][j] for j in range(k)] for i in range(k)]  # positive definite
        w = [self.bform(shift, b) for b in basis]
        q0 = self.qform(shift)
        # Q(shift + Bx) = q0 + w.x - 1/2 x^T P x ; complete the square
        mu = frac_solve(P, w)
        cmax = q0 + sum(wi * mi for wi, mi in zip(w, mu)) / 2
        # Q = cmax - E(x), E(x) = 1/2 (x-mu)^T P (x-mu) >= 0
        elo = cmax - qhi
        ehi = cmax - qlo
        if ehi < 0:
            return []
        elo = max(elo, Fraction(0))
        # exact LDL-style decomposition of 1/2 P
        M = [[P[i][j] / 2 for j in range(k)] for i in range(k)]
        qd = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                qd[i][j] = M[i][j]
        for i in range(k):
            for j in range(i + 1, k):
                qd[j][i] = qd[i][j]
                qd[i][j] = qd[i][j] / qd[i][i]
            for a in range(i + 1, k):
                for b in range(a, k):
                    qd[a][b] = qd[a][b] - qd[a][i] * qd[i][b]
        out = []
        xs = [0] * k

        def recurse(level, budget):
            # budget = remaining allowance for sum_{i<=level} terms
            if level < 0:
                vec = tuple(s + sum(xs[i] * basis[i][t] for i in range(k))
                            for t, s in enumerate(shift))
                q = self.qform(vec)
                if qlo <= q <= qhi:
                    out.append(vec)
                return
            center = mu[level] - sum(qd[level][j] * (xs[j] - mu[j])
                                     for j in range(level + 1, k))
            if budget < 0:
                return
            rad = math.sqrt(float(budget / qd[level][level])) + 1e-9
            lo = math.ceil(float(center) - rad - 1e-9)
            hi = math.floor(float(center) + rad + 1e-9)
            for v in range(lo, hi + 1):
                xs[level] = v
                used = qd[level][level] * (Fraction(v) - center) ** 2
                recurse(level - 1, budget - used)
            xs[level] = 0

        recurse(k - 1, ehi)
        return out

    def k_prime_vectors(self, bound, qlo, qhi):
        """All vectors of K' whose e3/e4 coordinates lie in [-bound, bound] and
        whose norm lies in [qlo, qhi].  Complete in the definite directions."""
        out = []
        for rep in self.kp_mod_sub_reps:
            r3, r4, rd = self.k_frame(rep)
            kmin = math.ceil(float((-bound - r3) / self.t3) - 1e-9)
            kmax = math.floor(float((bound - r3) / self.t3) + 1e-9)
            lmin = math.ceil(float((-bound - r4) / self.t4) - 1e-9)
            lmax = math.floor(float((bound - r4) / self.t4) + 1e-9)
            for a in range(kmin, kmax + 1):
                lam3 = r3 + a * self.t3
                if not (-bound <= lam3 <= bound):
                    continue
                for b in range(lmin, lmax + 1):
                    lam4 = r4 + b * self.t4
                    if not (-bound <= lam4 <= bound):
                        continue
                    hyp = lam3 * lam4
                    dlo = qlo - hyp
                    dhi = qhi - hyp
                    for dv in self._definite_vectors(self.kp_def_basis, rd, dlo, dhi):
                        vec = tuple(dvi + lam3 * e3 + lam4 * e4
                                    for dvi, e3, e4 in zip(dv, self.e3z, self.e4z))
                        out.append((lam3, lam4, dv, vec))
        return out

    def _lattice_block_reps(self):
        """Coset reps of L modulo (hyperbolic 4-block + definite block), cached."""
        if getattr(self, "_l_block_reps", None) is not None:
            return self._l_block_reps
        nn = 2 * self.L.rank
        sub = self.span4_basis + self.d_basis
        M = [[_as_int(sub[j][i]) for j in range(len(sub))] for i in range(nn)]
        diag, U, _ = smith_normal_form(M)
        uinv = frac_inv([[Fraction(x) for x in row] for row in U])
        reps = []
        ranges = [range(abs(dd) if dd != 0 else 1) for dd in diag]
        for combo in itertools.product(*ranges):
            y = mat_vec(uinv, [Fraction(c) for c in combo])
            reps.append(tuple(y))
        self._l_block_reps = reps
        return reps

    def lattice_norm_vectors(self, coset_coords, n, bound):
        """All lam in coset + L with Q(lam) = n, frame coordinates within bound."""
        L = self.L
        nn = 2 * L.rank
        shift0 = tuple(Fraction(c) for c in coset_coords)
        reps = self._lattice_block_reps()
        out = []
        k4 = len(self.span4_basis)
        if k4 != 4:
            raise RuntimeError("hyperbolic block has rank %d, expected 4" % k4)
        # map from span4 multipliers to e-frame coordinates
        emat = []
        for v in self.span4_basis:
            a1, a2, a3, a4, _ = self.e_frame(v)
            emat.append([a1, a2, a3, a4])
        einv = frac_inv([[emat[j][i] for j in range(k4)] for i in range(k4)])
        for rep in reps:
            start = tuple(si + ri for si, ri in zip(shift0, rep))
            sa1, sa2, sa3, sa4, sd = self.e_frame(start)
            svals = [sa1, sa2, sa3, sa4]
            # bound the integer multipliers via the inverse frame map
            limit = []
            for i in range(k4):
                row = einv[i]
                reach = sum(abs(row[j]) * (bound + abs(svals[j])) for j in range(k4))
                limit.append(int(math.floor(float(reach))) + 1)
            q_def0 = self.qform(sd)
            for combo in itertools.product(*[range(-l, l + 1) for l in limit]):
                coords = [svals[t] + sum(combo[j] * emat[j][t] for j in range(k4))
                          for t in range(4)]
                if any(abs(c) > bound for c in coords):
                    continue
                hyp = coords[0] * coords[1] + coords[2] * coords[3]
                target = n - hyp
                if not self.d_basis:
                    if target != q_def0:
                        continue
                    full = tuple(start[t] + sum(combo[j] * self.span4_basis[j][t]
                                                for j in range(k4))
                                 for t in range(nn))
                    if self.qform(full) == n:
                        out.append(full)
                    continue
                vec_h = tuple(start[t] + sum(combo[j] * self.span4_basis[j][t]
                                             for j in range(k4))
                              for t in range(nn))
                for dv in self._definite_vectors(self.d_basis, sd, target, target):
                    full = tuple(vi - sdi + dvi for vi, sdi, dvi in zip(vec_h, sd, dv))
                    if self.qform(full) == n:
                        out.append(full)
        return sorted(set(out))

    def __repr__(self):
        return "CuspData(d=%d, rank=%d, width=%d)" % (self.L.disc.d, self.L.rank, self.width)


def hyperbolic_basis(L: HermitianLattice, ell, ellprime) -> CuspData:
    """Build the full cusp frame from a primitive isotropic pair."""
    return CuspData(L, ell, ellprime)


def enumerate_norm_vectors(cusp: CuspData, coset_coords, n, height_bound):
    """Vectors of norm n in a dual-lattice coset, frame coordinates bounded.

    The definite directions are enumerated completely; the four isotropic-frame
    coordinates are restricted to [-height_bound, height_bound].
    """
    n = Fraction(n)
    q = cusp.L.qform_z(tuple(Fraction(c) for c in coset_coords))
    if (n - q) % 1 != 0:
        raise ValidationError("norm %s is incompatible with the coset (Q = %s mod 1)" % (n, q))
    return cusp.lattice_norm_vectors(coset_coords, n, Fraction(height_bound))


# ---------------------------------------------------------------------------
# convenience constructors
# ---------------------------------------------------------------------------

def hyperbolic_plane(disc: Discriminant) -> HermitianLattice:
    """The even unimodular plane: module basis (1, 0) and (0, 1/delta) inside
    F^2 with <(x,y),(x',y')> = x conj(y') + y conj(x')."""
    z0 = zero(disc)
    dinv = delta(disc).inverse()
    return HermitianLattice(disc, [[z0, -dinv], [dinv, z0]])


def hyperbolic_plane_cusp(disc: Discriminant, orientation=1) -> CuspData:
    """Standard cusp of the hyperbolic plane: ell = first generator, ell' the
    second (the 1/delta generator), so <ell', ell> = 1/delta; orientation=-1
    flips ell' and gives <ell', ell> = -1/delta."""
    L = hyperbolic_plane(disc)
    o = one(disc)
    return hyperbolic_basis(L, [o, zero(disc)], [zero(disc), orientation * o])


def diagonal_lattice(disc: Discriminant, diag_entries) -> HermitianLattice:
    """Diagonal hermitian form diag(c1, ..., cr) with integer entries."""
    r = len(diag_entries)
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            row.append(from_pair(disc, diag_entries[i] if i == j else 0, 0))
        rows.append(row)
    return HermitianLattice(disc, rows)


def find_isotropic_pair(L: HermitianLattice, bound=2):
    """Search small coordinates for a primitive isotropic ell in L and an
    isotropic ell' in L' with <ell', ell> != 0.  Desk-scale helper."""
    d = L.disc
    r = L.rank
    coeff_range = [from_pair(d, a, b)
                   for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)]
    ell = None
    for combo in itertools.product(coeff_range, repeat=r):
        vec = tuple(combo)
        if all(c.is_zero() for c in vec):
            continue
        if not L.herm(vec, vec).is_zero():
            continue
        z = L.fvec_to_z(vec)
        g = 0
        for c in z:
            g = math.gcd(g, int(c))
        if g == 1:
            ell = vec
            break
    if ell is None:
        raise DomainError("no primitive isotropic vector with coordinates up to %d" % bound)
    dual_basis, _ = dual_and_discriminant(L)
    for combo in itertools.product(range(-bound, bound + 1), repeat=2 * r):
        if all(c == 0 for c in combo):
            continue
        zc = tuple(sum(Fraction(combo[i]) * dual_basis[i][t] for i in range(2 * r))
                   for t in range(2 * r))
        fv = L.z_to_fvec(zc)
        if not L.herm(fv, fv).is_zero():
            continue
        if L.herm(fv, ell).is_zero():
            continue
        return ell, fv
    raise DomainError("no isotropic dual vector pairing with ell was found")
