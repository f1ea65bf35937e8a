import cmath
import math
import random
from fractions import Fraction

import pytest

from ulift.errors import DomainError, ValidationError
from ulift.field import Discriminant, from_pair, one, zero
from ulift.geometry import (HeisenbergElement, SiegelPoint, b_mixed,
                            boundary_limit_point, cusp_neighborhood_contains,
                            embed_alpha, frame_coords_complex, heisenberg_act,
                            heisenberg_compose, heisenberg_in_stabilizer,
                            numerics, siegel_norm, translation_width, tube_y,
                            xl_yl, z_of, z_l_vector)
from ulift.lattice import diagonal_lattice, hyperbolic_plane_cusp


def _bq(cusp, u, v):
    tg = cusp.L.zview().tgram
    n = len(u)
    return sum(u[i] * tg[i][j] * v[j] for i in range(n) for j in range(n))


def _random_point(cusp, rng, m):
    # choose sigma first, then tau high enough for the norm to be positive
    sigma = tuple(complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
                  for _ in range(m - 1))
    tau = complex(rng.uniform(-2, 2), rng.uniform(0.8, 4.0))
    pt = SiegelPoint(tau=tau, sigma=sigma)
    norm = siegel_norm(cusp, pt)
    if complex(norm).real <= 0.05:
        pt = SiegelPoint(tau=complex(tau.real, tau.imag + 3.0), sigma=sigma)
    return pt


@pytest.fixture(scope="module")
def m2_cusp(m2_pair):
    return m2_pair[1]


def test_z_norm_identity(cusp_h4, m2_cusp):
    rng = random.Random(11)
    for cusp, m in ((cusp_h4, 1), (m2_cusp, 2)):
        sn = float(cusp.s.norm())
        absd = math.sqrt(-cusp.L.disc.d)
        for _ in range(100):
            pt = _random_point(cusp, rng, m)
            z = z_of(cusp, pt)
            from ulift.geometry import herm_c

            ctx = numerics(cusp.L.disc)
            zz = complex(herm_c(cusp, z, z, ctx))
            sig = 0.0
            if pt.sigma:
                sigvec = z_of(cusp, SiegelPoint(tau=pt.tau, sigma=pt.sigma))
            want = complex(siegel_norm(cusp, pt))
            assert abs(zz - want) < 1e-12 * max(1.0, abs(want))
            assert zz.real > 0
            assert abs(zz.imag) < 1e-12


def test_z_of_examples(cusp_h4):
    # m = 1, tau = i: <z,z> = 2 |delta| |<ell',ell>|^2 = 2*2*(1/4) = 1
    val = complex(siegel_norm(cusp_h4, SiegelPoint(tau=1j)))
    assert abs(val - 1.0) < 1e-14
    # rejection outside the domain
    with pytest.raises(DomainError):
        z_of(cusp_h4, SiegelPoint(tau=-1j))


def test_embedding_invariants(cusp_h4, m2_cusp):
    rng = random.Random(5)
    for cusp, m in ((cusp_h4, 1), (m2_cusp, 2)):
        for _ in range(100):
            pt = _random_point(cusp, rng, m)
            zl = z_l_vector(cusp, pt)
            conj_zl = [c.conjugate() for c in zl]
            assert abs(_bq(cusp, zl, zl)) < 1e-10          # Q(Z_L) = 0
            assert _bq(cusp, zl, conj_zl).real > 1e-10     # positivity
            xl, yl = xl_yl(cusp, pt)
            assert abs(b_mixed(cusp, cusp.e1z, xl) - 1) < 1e-12
            assert abs(b_mixed(cusp, cusp.e1z, yl)) < 1e-12
            assert abs(_bq(cusp, xl, xl) - _bq(cusp, yl, yl)) < 1e-10
            assert abs(_bq(cusp, xl, yl)) < 1e-10
            tp = embed_alpha(cusp, pt)
            assert complex(tp.z1).imag > 0 and complex(tp.z2).imag > 0
            y1, y2, ydef = tube_y(cusp, pt)
            qy = float(y1) * float(y2) + float(_bq(cusp, ydef, ydef)) / 2
            assert qy > 0                                   # Q(Y) > 0


def test_exact_mode_identities(cusp_h4, m2_cusp):
    ctx1 = numerics(cusp_h4.L.disc, "exact")
    pts = [SiegelPoint(tau=(Fraction(1, 3), Fraction(5, 2))),
           SiegelPoint(tau=(Fraction(-2, 7), Fraction(3)))]
    for pt in pts:
        xl, yl = xl_yl(cusp_h4, pt, ctx1)
        d1 = _bq(cusp_h4, xl, xl) - _bq(cusp_h4, yl, yl)
        assert d1.is_zero()
        assert _bq(cusp_h4, xl, yl).is_zero()
    # m = 2 with exact rational sigma
    ctx2 = numerics(m2_cusp.L.disc, "exact")
    pt = SiegelPoint(tau=(Fraction(0), Fraction(4)),
                     sigma=((Fraction(1, 4), Fraction(1, 3)),))
    xl, yl = xl_yl(m2_cusp, pt, ctx2)
    assert (_bq(m2_cusp, xl, xl) - _bq(m2_cusp, yl, yl)).is_zero()
    assert _bq(m2_cusp, xl, yl).is_zero()
    assert (b_mixed(m2_cusp, m2_cusp.e1z, xl) - 1).is_zero()


def test_projective_scaling_equivariance(cusp_h4):
    # alpha(mu z) and mu alpha(z) agree projectively: Z_L is C-linear in z here
    pt = SiegelPoint(tau=0.4 + 1.7j)
    zl = z_l_vector(cusp_h4, pt)
    # frame coordinates normalized by the e2-coefficient are projective data
    a1, a2, a3, a4, _ = frame_coords_complex(cusp_h4, zl)
    mu = 0.7 - 1.2j
    scaled = [mu * c for c in zl]
    b1, b2, b3, b4, _ = frame_coords_complex(cusp_h4, scaled)
    assert abs(a3 / a1 - b3 / b1) < 1e-12
    assert abs(a4 / a1 - b4 / b1) < 1e-12


def test_cauchy_riemann_residuals(cusp_h4, m2_cusp):
    # central finite differences of the tube coordinates in tau and sigma
    h = 1e-4
    rng = random.Random(3)
    for cusp, m in ((cusp_h4, 1), (m2_cusp, 2)):
        for _ in range(50):
            pt = _random_point(cusp, rng, m)
            tau, sigma = pt.tau, pt.sigma

            def coords(t, s):
                tp = embed_alpha(cusp, SiegelPoint(tau=t, sigma=s))
                return [complex(tp.z1), complex(tp.z2)] + [complex(c) for c in tp.zdef]

            # tau direction
            dx = [(a - b) / (2 * h) for a, b in zip(coords(tau + h, sigma),
                                                    coords(tau - h, sigma))]
            dy = [(a - b) / (2 * h) for a, b in zip(coords(tau + 1j * h, sigma),
                                                    coords(tau - 1j * h, sigma))]
            for a, b in zip(dx, dy):
                assert abs(b - 1j * a) < 1e-6
            for k in range(len(sigma)):
                def shift(eps):
                    s = list(sigma)
                    s[k] += eps
                    return tuple(s)

                dx = [(a - b) / (2 * h) for a, b in zip(coords(tau, shift(h)),
                                                        coords(tau, shift(-h)))]
                dy = [(a - b) / (2 * h) for a, b in zip(coords(tau, shift(1j * h)),
                                                        coords(tau, shift(-1j * h)))]
                for a, b in zip(dx, dy):
                    assert abs(b - 1j * a) < 1e-6


def test_heisenberg_translation(cusp_h4):
    pt = SiegelPoint(tau=1.3 + 2j)
    out = heisenberg_act(cusp_h4, HeisenbergElement(h=Fraction(1)), pt)
    assert abs(complex(out.tau) - (pt.tau + 1)) < 1e-14
    ident = heisenberg_act(cusp_h4, HeisenbergElement(h=Fraction(0)), pt)
    assert abs(complex(ident.tau) - pt.tau) < 1e-14


def test_heisenberg_action_preserves_norm(m2_cusp, d4):
    rng = random.Random(9)
    for _ in range(20):
        pt = _random_point(m2_cusp, rng, 2)
        g = HeisenbergElement(h=Fraction(rng.randint(-2, 2), 2),
                              t=(from_pair(d4, rng.randint(-2, 2), rng.randint(-2, 2)),))
        img = heisenberg_act(m2_cusp, g, pt)
        a = complex(siegel_norm(m2_cusp, pt))
        b = complex(siegel_norm(m2_cusp, img))
        assert abs(a - b) < 1e-10


def test_heisenberg_group_law_matches_action(m2_cusp, d4):
    rng = random.Random(21)
    pt = SiegelPoint(tau=3j, sigma=(0.1 + 0.2j,))
    for _ in range(25):
        g1 = HeisenbergElement(h=Fraction(rng.randint(-3, 3), 2),
                               t=(from_pair(d4, rng.randint(-2, 2), rng.randint(-2, 2)),))
        g2 = HeisenbergElement(h=Fraction(rng.randint(-3, 3), 2),
                               t=(from_pair(d4, rng.randint(-2, 2), rng.randint(-2, 2)),))
        lhs = heisenberg_act(m2_cusp, g1, heisenberg_act(m2_cusp, g2, pt))
        rhs = heisenberg_act(m2_cusp, heisenberg_compose(m2_cusp, g1, g2), pt)
        assert abs(complex(lhs.tau) - complex(rhs.tau)) < 1e-12
        assert all(abs(complex(a) - complex(b)) < 1e-12
                   for a, b in zip(lhs.sigma, rhs.sigma))


def test_heisenberg_associativity(m2_cusp, d4):
    g1 = HeisenbergElement(h=Fraction(1), t=(from_pair(d4, 2, 0),))
    g2 = HeisenbergElement(h=Fraction(-1, 2), t=(from_pair(d4, 0, 1),))
    g3 = HeisenbergElement(h=Fraction(1, 3), t=(from_pair(d4, 1, -1),))
    a = heisenberg_compose(m2_cusp, heisenberg_compose(m2_cusp, g1, g2), g3)
    b = heisenberg_compose(m2_cusp, g1, heisenberg_compose(m2_cusp, g2, g3))
    assert a == b


def test_translation_width(cusp_h4, d4):
    assert translation_width(cusp_h4.L, [one(d4), zero(d4)]) == 1
    # membership of the defining transformation, exact
    assert heisenberg_in_stabilizer(cusp_h4, HeisenbergElement(h=Fraction(1)))
    assert not heisenberg_in_stabilizer(cusp_h4, HeisenbergElement(h=Fraction(1, 2)))


def test_translation_width_scaled_lattice(d4):
    # doubling the form halves the step: the transformation scales with the form
    L1 = diagonal_lattice(d4, [1, -1])
    L2 = diagonal_lattice(d4, [2, -2])
    n1 = translation_width(L1, [1, 1])
    n2 = translation_width(L2, [1, 1])
    assert n2 == n1 / 2
    for n in (n1, n2):
        assert n <= 1 and (1 / n).denominator == 1  # divides 1


def test_cusp_neighborhoods(cusp_h4):
    for C in (0.5, 1.0, 10.0):
        assert cusp_neighborhood_contains(cusp_h4, C, SiegelPoint(tau=1j * (2 * C + 1)))
    # eventually true for any C as Im tau grows
    assert not cusp_neighborhood_contains(cusp_h4, 5.0, SiegelPoint(tau=1j))
    # boundary equality is excluded: norm(tau = i) = 1 exactly
    assert not cusp_neighborhood_contains(cusp_h4, 1.0, SiegelPoint(tau=1j))
    # invariance under the integral translation
    g = HeisenbergElement(h=Fraction(1))
    for C in (0.5, 2.0):
        pt = SiegelPoint(tau=0.3 + 2.2j)
        assert cusp_neighborhood_contains(cusp_h4, C, pt) == \
            cusp_neighborhood_contains(cusp_h4, C, heisenberg_act(cusp_h4, g, pt))
    with pytest.raises(ValidationError):
        cusp_neighborhood_contains(cusp_h4, 0, SiegelPoint(tau=1j))


def test_boundary_limit(cusp_h4):
    limit = boundary_limit_point(cusp_h4)
    assert abs(limit[0] - (-1j)) < 1e-14  # conj(zeta) for d = -4
    assert limit[1] == 0 and limit[2] == 1 and limit[3] == 0

    def proj_dist(t, sigma=()):
        zl = z_l_vector(cusp_h4, SiegelPoint(tau=1j * t, sigma=sigma))
        a1, a2, a3, a4, rest = frame_coords_complex(cusp_h4, zl)
        vec = (a1 / a3, a2 / a3, 1.0, a4 / a3)
        return max(abs(v - w) for v, w in zip(vec, limit[:4]))

    d10, d100, d1000 = proj_dist(10), proj_dist(100), proj_dist(1000)
    assert d1000 < 1e-2
    assert d1000 < d100 < d10


def test_boundary_limit_independent_of_sigma(m2_pair):
    _, c2 = m2_pair
    zl1 = z_l_vector(c2, SiegelPoint(tau=4000j, sigma=(0.3 + 0.1j,)))
    zl2 = z_l_vector(c2, SiegelPoint(tau=4000j, sigma=(-0.4 + 0.2j,)))
    f1 = frame_coords_complex(c2, zl1)
    f2 = frame_coords_complex(c2, zl2)
    for a, b in zip(f1[:4], f2[:4]):
        assert abs(a / f1[2] - b / f2[2]) < 1e-3
