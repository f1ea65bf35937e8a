from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ulift.qexp import (QSeries, delta_cusp_form, divisor_sigma, e4sq_over_delta,
                        eisenstein_e4, eisenstein_e6, faber_jm, j_function)


def test_eisenstein_leading_terms():
    e4 = eisenstein_e4(6)
    assert [e4[n] for n in range(4)] == [1, 240, 2160, 6720]
    e6 = eisenstein_e6(6)
    assert [e6[n] for n in range(4)] == [1, -504, -16632, -122976]


def test_delta_expansion():
    d = delta_cusp_form(8)
    assert [d[n] for n in range(1, 7)] == [1, -24, 252, -1472, 4830, -6048]


def test_j_expansion():
    j = j_function(5)
    assert j[-1] == 1
    assert j[0] == 744
    assert j[1] == 196884
    assert j[2] == 21493760
    assert j[3] == 864299970


def test_e4sq_over_delta():
    f = e4sq_over_delta(4)
    assert f[-1] == 1
    assert f[0] == 504
    assert f[1] == 73764


def test_delta_times_quotient_is_exact():
    # coefficient-wise: Delta * (E4^2/Delta) = E4^2, to the truncation order
    n = 24
    lhs = delta_cusp_form(n + 2) * e4sq_over_delta(n + 2)
    e4 = eisenstein_e4(n)
    rhs = e4 * e4
    for k in range(n):
        assert lhs[k] == rhs[k]


def test_faber_normalization():
    for m in range(1, 7):
        jm = faber_jm(m, 4)
        assert jm[-m] == 1
        for k in range(-m + 1, 1):
            assert jm[k] == 0


def test_faber_j1_values():
    j1 = faber_jm(1, 3)
    assert j1[-1] == 1 and j1[0] == 0 and j1[1] == 196884


def test_faber_j2_against_square_oracle():
    # J2 = J1^2 - 2 c1(J1): its q-coefficient must be twice the q^2 one of J1
    j1 = faber_jm(1, 8)
    j2 = faber_jm(2, 8)
    sq = j1 * j1
    assert j2[1] == 2 * j1[2] == 42987520
    shifted = sq - 2 * j1[1]
    for k in range(-2, 6):
        assert shifted[k] == j2[k]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6),
       st.lists(st.integers(-9, 9), min_size=1, max_size=6),
       st.integers(-3, 3))
def test_series_ring_axioms(a, b, shift):
    prec = 9
    s = QSeries(shift, a, prec + shift)
    t = QSeries(shift, b, prec + shift)
    lhs = s * t
    rhs = t * s
    for n in range(2 * shift, min(lhs.prec, rhs.prec)):
        assert lhs[n] == rhs[n]
    u = (s + t) * s
    v = s * s + t * s
    for n in range(2 * shift, min(u.prec, v.prec)):
        assert u[n] == v[n]


def test_inverse_round_trip():
    d = delta_cusp_form(20)
    inv = d.inverse()
    prod = d * inv
    assert prod[0] == 1
    for n in range(1, prod.prec):
        assert prod[n] == 0


def test_divisor_sigma():
    assert [divisor_sigma(n) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]
    assert divisor_sigma(6) == 12
    assert divisor_sigma(4, 3) == 1 + 8 + 64


def test_truncation_guard():
    e4 = eisenstein_e4(5)
    with pytest.raises(IndexError):
        e4[5]
