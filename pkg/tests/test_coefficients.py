import itertools

import pytest
from hypothesis import given, settings, strategies as st

from _golden import case_beta, golden_n1, golden_n2
from g24star.closed_form import (SeqTuple, check_I_independence, closed_form_T, closed_form_T_naive,
                                 closed_form_table, d_factor, delta_factor, lambda_factor)
from g24star.errors import BadWeight, BoundExceeded
from g24star.exact_scalars import HBAR, HRational, hr_series_at_zero
from g24star.indices import MIXED_COL, MIXED_ROW, SLASH, mi_enumerate, row, unit
from g24star.oracle import ExplicitTable, oracle_T_linear_system, system_matrix
from g24star.recurrence import denominator, recurrence_T_table
from g24star.residuals import (denominator_identity, residual_cor32, residual_general_grassmann, residual_hs)
from g24star.ring import CoeffPoly

REC = recurrence_T_table(4)
ORA = oracle_T_linear_system(3)


def pairs(n):
    return [(a, b) for b in mi_enumerate(n) for a in mi_enumerate(n)]


weight3 = st.sampled_from(pairs(3))


# -- small orders against published values ----------------------------------

def test_order_zero_is_one():
    assert closed_form_T(0, (0,) * 4, (0,) * 4) == CoeffPoly.one()
    assert REC.get_T(0, (0,) * 4, (0,) * 4) == CoeffPoly.one()


@pytest.mark.parametrize("alpha,beta", pairs(1))
def test_order_one(alpha, beta):
    want = golden_n1(alpha, beta)
    assert closed_form_T(1, alpha, beta) == want
    assert REC.get_T(1, alpha, beta) == want
    assert ORA.get_T(1, alpha, beta) == want


@pytest.mark.parametrize("P,case", list(itertools.product(range(4), ("I", "II", "III", "IV"))))
def test_order_two_cases(P, case):
    beta = case_beta(P, case)
    for alpha in mi_enumerate(2):
        want = golden_n2(alpha, P, case)
        assert REC.get_T(2, alpha, beta) == want
        assert closed_form_T(2, alpha, beta) == want


def test_order_two_diagonal_example():
    # alpha = 2 e_Q, beta = 2 e_P: (h/2) tau_2^{-1} g_{Pbar Q}^2
    for P in range(4):
        for Q in range(4):
            t = closed_form_T(2, tuple(2 * x for x in unit(Q)), tuple(2 * x for x in unit(P)))
            assert t == CoeffPoly({(4 * P + Q,) * 2: HBAR / 2 / HRational.tau(2)})


def test_inadmissible_entries_absent():
    with pytest.raises(KeyError):
        REC[(2, (1, 1, 0, 0), (3, -1, 0, 0))]
    assert (2, (3, -1, 0, 0), (1, 1, 0, 0)) not in REC
    assert REC.get_T(2, (3, -1, 0, 0), (1, 1, 0, 0)).is_zero()


def test_bad_weight_and_bound():
    with pytest.raises(BadWeight):
        closed_form_T(2, (1, 0, 0, 0), (1, 1, 0, 0))
    with pytest.raises(BoundExceeded):
        closed_form_T(7, (7, 0, 0, 0), (7, 0, 0, 0))


# -- factor helpers ------------------------------------------------------------

def test_d_factor():
    for P in range(4):
        p = row(P) + 1
        assert [d_factor(X, P, p) for X in range(4)] == [int(X == P) for X in range(4)]
        other = 2 - row(P)  # the other row, 1-based
        assert d_factor(SLASH[P], P, other) == 1
        assert d_factor(MIXED_ROW[P], P, other) == -1


def test_tail_factors():
    P = 1
    seq = SeqTuple(J=(P, P), D=(0, 0), k=(row(P) + 1,) * 2)
    assert lambda_factor(2, MIXED_ROW[P], seq) == 0
    assert lambda_factor(1, MIXED_ROW[P], seq) == 0
    for I in range(4):
        assert delta_factor("I", I, 2, seq) == 0
        assert delta_factor("I", I, 1, seq) == int(I == P) + int(MIXED_COL[I] == P)


def test_denominator_and_oracle_determinant():
    tau1 = HRational.tau(1)
    beta = unit(0)
    M = system_matrix(1, beta, 0)
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    assert det == tau1 * (tau1 + 1)
    assert denominator(1, beta) == tau1 * (tau1 + 1)


@pytest.mark.parametrize("n", range(7))
def test_denominator_identity(n):
    assert all(denominator_identity(n, b) for b in mi_enumerate(n))


# -- three paths agree ------------------------------------------------------------

@pytest.mark.parametrize("n", range(4))
def test_three_paths_agree(n):
    for a, b in pairs(n):
        t = REC.get_T(n, a, b)
        assert closed_form_T(n, a, b) == t
        assert ORA.get_T(n, a, b) == t


@pytest.mark.parametrize("n", [1, 2])
def test_literal_closed_form_sum(n):
    for a, b in pairs(n):
        assert closed_form_T_naive(n, a, b) == REC.get_T(n, a, b)


def test_literal_closed_form_sum_order_three_sample():
    for a, b in pairs(3)[::97]:
        assert closed_form_T_naive(3, a, b) == REC.get_T(3, a, b)


@pytest.mark.parametrize("backend", ["numpy", "numba", "python"])
def test_vectorized_closed_form_table(backend):
    tab = closed_form_table(3, backend=backend)
    for n in range(4):
        for a, b in pairs(n)[::7]:
            assert tab.get_T(n, a, b) == REC.get_T(n, a, b)


@pytest.mark.parametrize("n", range(4))
def test_I_independence(n):
    assert check_I_independence(n)


@settings(max_examples=40)
@given(weight3)
def test_homogeneity_and_valuation(pair):
    t = REC.get_T(3, *pair)
    for mono, c in t.terms.items():
        assert len(mono) == 3
        assert hr_series_at_zero(c, 3)[:3] == [0, 0, 0]


# -- residuals ---------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 4))
def test_residuals_vanish(n):
    for I in range(4):
        for a, b in pairs(n):
            assert residual_cor32(n, I, a, b, REC).is_zero()
            assert residual_general_grassmann(2, 2, n, I, a, b, REC).is_zero()
            assert residual_hs(2, 2, n, I, a, b, REC).is_zero()


def test_residual_order_two_reproduces_lhs():
    # beta = 2 e_P, I = P: the left side is h sum g_{Pbar D} T^1
    P = 2
    beta = (0, 0, 2, 0)
    for alpha in mi_enumerate(2):
        from g24star.residuals import lhs_sum
        lhs = lhs_sum(REC, 2, P, alpha, beta)
        rhs_only = REC.get_T(2, alpha, beta).scale(HBAR * 2 * (HRational.tau(2) + 0))
        assert lhs == rhs_only


def test_residual_negative_control():
    zero = ExplicitTable({(0, (0,) * 4, (0,) * 4): CoeffPoly.one()}, n_max=1)
    for I in range(4):
        beta = unit(I)
        r = [f(1, I, unit(0), beta, zero) for f in (
            residual_cor32,
            lambda *a: residual_hs(2, 2, *a),
            lambda *a: residual_general_grassmann(2, 2, *a))]
        assert all(not x.is_zero() for x in r)


def test_residual_detects_perturbation():
    a, b = (1, 1, 0, 0), (1, 0, 0, 1)
    bad = ExplicitTable({k: REC.get_T(*k) for k in
                         [(n, x, y) for n in range(3) for x, y in pairs(n)]}, n_max=2)
    bad.entries[(2, a, b)] = bad.entries[(2, a, b)] + CoeffPoly.symbol(0, 0, HBAR ** 2)
    assert any(not residual_cor32(2, I, a, b, bad).is_zero() for I in range(4))
    assert any(not residual_hs(2, 2, 2, I, a, b, bad).is_zero() for I in range(4))


@settings(max_examples=15)
@given(st.integers(0, 3), st.lists(st.integers(0, 2), min_size=4, max_size=4),
       st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_general_residual_specializes(I, alpha, beta):
    # off-weight and random entries: the general p=q=2 residual equals the specialized one
    n = sum(beta)
    if n == 0 or n > 4 or sum(alpha) != n:
        return
    assert residual_general_grassmann(2, 2, n, I, alpha, beta, REC) == residual_cor32(n, I, alpha, beta, REC)
