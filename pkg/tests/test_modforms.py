from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ulift.errors import DomainError, ValidationError
from ulift.modforms import (SL2_S, SL2_T, VVForm, jm_form, realizability_check,
                            residue_pair, rho_of, scalar_builder, sl2_mul,
                            sl2_word, slash_check, weil_matrices)


def _relations(wr, tol=1e-9):
    I = np.eye(wr.dim)
    s4 = np.max(np.abs(np.linalg.matrix_power(wr.s_mat, 4) - I))
    st3 = np.max(np.abs(np.linalg.matrix_power(wr.s_mat @ wr.t_mat, 3)
                        - wr.s_mat @ wr.s_mat))
    uni = np.max(np.abs(wr.s_mat @ wr.s_mat.conj().T - I))
    tdiag = np.max(np.abs(wr.t_mat - np.diag(np.diag(wr.t_mat))))
    assert s4 < tol and st3 < tol and uni < tol and tdiag == 0


def test_weil_relations_three_lattices(lattice_h4, lattice_diag11, lattice_rank1_d3):
    for L in (lattice_h4, lattice_diag11, lattice_rank1_d3):
        _relations(weil_matrices(L))


def test_weil_t_phases(lattice_diag11):
    wr = weil_matrices(lattice_diag11)
    for i, q in enumerate(wr.group.q_values):
        import cmath, math

        assert abs(wr.t_mat[i, i] - cmath.exp(2j * math.pi * float(q))) < 1e-12


def test_weil_s_scalar_cases(lattice_h4, m2_pair):
    wr = weil_matrices(lattice_h4)
    assert wr.dim == 1
    assert abs(wr.s_mat[0, 0] - 1.0) < 1e-12  # m = 1: prefactor e(0)
    L2, _ = m2_pair
    wr2 = weil_matrices(L2)
    # m = 2 scaling: prefactor e(1/4) = i over sqrt(4)
    assert abs(wr2.s_mat[0, 0] - 0.5j) < 1e-12


def test_weil_s_entries_diag(lattice_diag11):
    # order 16, b-values half-integral: entries +-1/4 with prefactor e(0) = 1
    wr = weil_matrices(lattice_diag11)
    for i in range(16):
        for j in range(16):
            v = wr.s_mat[i, j]
            assert abs(abs(v) - 0.25) < 1e-12
            assert min(abs(v - 0.25), abs(v + 0.25)) < 1e-12


def test_rho_of_central_element(lattice_diag11):
    wr = weil_matrices(lattice_diag11)
    neg = rho_of(wr, ((-1, 0), (0, -1)))
    # (-1)^(m-1) = 1 for m = 1: pure permutation gamma -> -gamma
    perm = np.zeros((wr.dim, wr.dim), dtype=complex)
    for i in range(wr.dim):
        perm[wr.group.neg_index(i), i] = 1.0
    assert np.max(np.abs(neg - perm)) < 1e-9


def test_rho_powers_of_t(lattice_diag11):
    wr = weil_matrices(lattice_diag11)
    r = rho_of(wr, ((1, 5), (0, 1)))
    import cmath, math

    for i, q in enumerate(wr.group.q_values):
        assert abs(r[i, i] - cmath.exp(2j * math.pi * float(5 * q))) < 1e-9


def test_rho_s_fourth_power(lattice_rank1_d3):
    wr = weil_matrices(lattice_rank1_d3)
    r = rho_of(wr, SL2_S)
    assert np.max(np.abs(np.linalg.matrix_power(r, 4) - np.eye(wr.dim))) < 1e-9


sl2_elements = st.lists(st.tuples(st.sampled_from(["S", "T"]),
                                  st.integers(-3, 3)), min_size=1, max_size=6)


def _word_to_matrix(word):
    M = ((1, 0), (0, 1))
    for kind, n in word:
        if kind == "S":
            for _ in range(n):
                M = sl2_mul(M, SL2_S)
        else:
            M = sl2_mul(M, ((1, n), (0, 1)))
    return M


_REP_CACHE = {}


def _small_rep():
    if "rep" not in _REP_CACHE:
        from ulift.field import Discriminant
        from ulift.lattice import diagonal_lattice

        _REP_CACHE["rep"] = weil_matrices(diagonal_lattice(Discriminant(-3), [1]))
    return _REP_CACHE["rep"]


@settings(max_examples=80, deadline=None)
@given(sl2_elements, sl2_elements)
def test_rho_is_a_homomorphism(w1, w2):
    rep = _small_rep()
    A, B = _word_to_matrix(w1), _word_to_matrix(w2)
    lhs = rho_of(rep, A) @ rho_of(rep, B)
    rhs = rho_of(rep, sl2_mul(A, B))
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_sl2_word_reconstructs():
    for M in [((1, 0), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (5, 3)),
              ((-3, -1), (7, 2)), ((1, -4), (0, 1)), ((-1, 0), (0, -1))]:
        assert _word_to_matrix(sl2_word(M)) == M


def test_rho_rejects_non_unimodular(lattice_rank1_d3):
    wr = weil_matrices(lattice_rank1_d3)
    with pytest.raises(ValidationError):
        rho_of(wr, ((2, 0), (0, 1)))


# -- builders -------------------------------------------------------------------

def test_scalar_builders():
    delta = scalar_builder("Delta", 5)
    assert delta.coefficient(1) == 1 and delta.coefficient(2) == -24
    assert delta.coefficient(3) == 252
    f = scalar_builder("E4sq_over_Delta", 5)
    assert f.coefficient(-1) == 1 and f.coefficient(0) == 504
    j = scalar_builder("j", 5)
    assert j.coefficient(-1) == 1 and j.coefficient(0) == 744
    assert j.coefficient(1) == 196884
    with pytest.raises(ValidationError):
        scalar_builder("nope", 5)


def test_jm_builder():
    j1 = jm_form(1, 4)
    assert j1.weight == 0 and j1.coefficient(1) == 196884
    for m in range(1, 7):
        assert jm_form(m, 2).coefficient(0) == 0
    assert jm_form(2, 3).coefficient(1) == 42987520


def test_vvform_addition_and_pole_order():
    j1, j2 = jm_form(1, 6), jm_form(2, 6)
    s = j1 + j2
    assert s.pole_order == -2
    assert s.coefficient(-1) == 1 and s.coefficient(-2) == 1
    assert s.coefficient(1) == j1.coefficient(1) + j2.coefficient(1)
    with pytest.raises(ValidationError):
        j1 + scalar_builder("E4", 6)


def test_vvform_support_validation(m2_pair):
    L2, c2 = m2_pair
    group = c2.group
    ok = VVForm(-1, "rho_L", {(0, Fraction(1)): Fraction(2)}, group.order, qmax=2)
    ok.validate_support(group)
    bad = VVForm(-1, "rho_L", {(1, Fraction(1)): Fraction(2)}, group.order, qmax=2)
    with pytest.raises(ValidationError):
        bad.validate_support(group)  # coset 1 needs n = -1/4 mod 1
    dual_ok = VVForm(3, "dual", {(1, Fraction(1, 4)): Fraction(1)}, group.order, qmax=2)
    dual_ok.validate_support(group)


# -- residue pairing -------------------------------------------------------------

def _principal_cut(f):
    cut = {k: c for k, c in f.coeffs.items() if k[1] <= 0}
    return VVForm(f.weight, f.rep, cut, f.ncosets, qmax=Fraction(1))


def test_residue_pair_example():
    f = _principal_cut(scalar_builder("E4sq_over_Delta", 8))
    g = scalar_builder("E6", 8)
    assert residue_pair(f, g) == 0
    # single-term variant: only the pole, no constant
    fq = VVForm(-4, "scalar", {(0, Fraction(-1)): Fraction(1)}, 1, qmax=1)
    assert residue_pair(fq, g) == -504
    zero_series = VVForm(6, "scalar", {}, 1, qmax=4)
    assert residue_pair(f, zero_series) == 0


def test_residue_pair_rejects_mismatch():
    f = _principal_cut(scalar_builder("E4sq_over_Delta", 4))
    g = VVForm(6, "rho_L", {(1, Fraction(1)): Fraction(1)}, 3, qmax=4)
    with pytest.raises(ValidationError):
        residue_pair(f, g)
    with pytest.raises(ValidationError):
        residue_pair(f, {(0, Fraction(-1)): Fraction(1)})


@settings(max_examples=60, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20))
def test_residue_pair_bilinear(a, b):
    g = scalar_builder("E6", 6)
    f1 = VVForm(-4, "scalar", {(0, Fraction(-1)): Fraction(a), (0, Fraction(0)): Fraction(3)}, 1, qmax=1)
    f2 = VVForm(-4, "scalar", {(0, Fraction(-1)): Fraction(b), (0, Fraction(0)): Fraction(-1)}, 1, qmax=1)
    s = f1 + f2
    assert residue_pair(s, g) == residue_pair(f1, g) + residue_pair(f2, g)


def test_realizability_check():
    basis = [scalar_builder("E4sq_over_Delta", 8)]
    good = scalar_builder("E6", 8)
    rep = realizability_check(good, basis)
    assert rep.passed and rep.pairings == [(0, Fraction(0))]
    # perturbed constant term fails with the exact pairing value
    bad = VVForm(6, "scalar",
                 {(0, Fraction(n)): good.coefficient(n) for n in range(8)} |
                 {(0, Fraction(0)): Fraction(2)}, 1, qmax=8)
    rep2 = realizability_check(bad, basis)
    assert not rep2.passed
    assert rep2.pairings[0][1] == 504 * 2 + 1 * good.coefficient(1)
    assert realizability_check(good, []).passed  # vacuous


# -- slash checks -----------------------------------------------------------------

def test_slash_e4_under_s():
    e4 = scalar_builder("E4", 40)
    assert slash_check(e4, SL2_S, [2j]) < 1e-6
    assert slash_check(e4, ((1, 0), (0, 1)), [2j]) == 0
    assert slash_check(e4, SL2_T, [1.5j, 0.3 + 2j]) < 1e-12


def test_slash_rejects_low_points():
    e4 = scalar_builder("E4", 10)
    with pytest.raises(DomainError):
        slash_check(e4, SL2_S, [0.05j])
