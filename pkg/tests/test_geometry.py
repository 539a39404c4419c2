import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from g24star import expr as X
from g24star.errors import BadIndex, EvalSingular
from g24star.exact_scalars import GaussianRational as G
from g24star.expr import Evaluator, diff, eval_expr, to_string, wirtinger_d
from g24star.geometry import (D_bar, D_up, apply_multi_D, build_chart, curvature_constant,
                              curvature_from_metric, curvature_from_potential, hessian_from_det,
                              inv_metric_entry, log_det_first_deriv, metric_entry, parse_point,
                              potential_first_deriv, random_point, raised_curvature)
from g24star.indices import INDICES, CapIndex

C = build_chart(2, 2)
ORIGIN = {k: G(0) for k in range(4)}

# sympy oracle: z and zbar as independent symbols
_z = sp.symbols("z0:4")
_w = sp.symbols("w0:4")
_B = sp.eye(2) + sp.Matrix(2, 2, _w).T * sp.Matrix(2, 2, _z)
_PHI = sp.log(_B.det())


def _subs(pt):
    out = {}
    for k, v in pt.items():
        re, im = sp.Rational(str(v.re)), sp.Rational(str(v.im))
        out[_z[k]] = re + sp.I * im
        out[_w[k]] = re - sp.I * im
    return out


def _as_gaussian(v):
    v = sp.nsimplify(sp.expand(sp.simplify(v)))
    return G(str(sp.re(v)), str(sp.im(v)))


points = st.builds(lambda s: random_point(random.Random(s), 4), st.integers(0, 10 ** 6))


def test_B_entries():
    # b_{i'bar j'} = delta + zbar^{1i'} z^{1j'} + zbar^{2i'} z^{2j'}
    pt = random_point(random.Random(3), 4)
    ev = Evaluator(pt)
    for a in range(2):
        for b in range(2):
            want = G(int(a == b)) + pt[a].conjugate() * pt[b] + pt[2 + a].conjugate() * pt[2 + b]
            assert ev(C.B[a][b]) == want


def test_cp_n_det():
    c = build_chart(1, 3)
    pt = {0: G(1), 1: G(0, 2), 2: G("1/2")}
    assert eval_expr(c.detB, pt) == 1 + 1 + 4 + Fraction(1, 4)


def test_detB_single_entry():
    assert eval_expr(C.detB, {0: G(1), 1: G(0), 2: G(0), 3: G(0)}) == 2


def test_metric_at_origin_is_identity():
    ev = Evaluator(ORIGIN)
    for D in range(4):
        for Xb in range(4):
            assert ev(metric_entry(C, D, Xb)) == int(D == Xb)
            assert ev(inv_metric_entry(C, Xb, D)) == int(D == Xb)


def test_metric_single_entry_value():
    pt = {0: G(1), 1: G(0), 2: G(0), 3: G(0)}
    assert eval_expr(metric_entry(C, CapIndex(1, 1), CapIndex(1, 1)), pt) == Fraction(1, 4)


def test_first_derivatives_vanish_at_origin():
    for J in range(4):
        for barred in (False, True):
            assert eval_expr(potential_first_deriv(C, J, barred), ORIGIN) == 0


def test_wirtinger_basics():
    z0, w0 = X.z(0), X.zb(0)
    assert diff(z0 * w0, ("z", 0)) is w0
    assert diff(X.const(7), ("z", 1)) is X.ZERO
    assert eval_expr(X.const(7), ORIGIN) == 7
    # d_{zbar^{jj'}} b_{k'bar l'} = delta_{j'k'} z^{jl'}
    for j in range(2):
        for jp in range(2):
            for kp in range(2):
                for lp in range(2):
                    d = wirtinger_d(C.B[kp][lp], ("zb", 2 * j + jp))
                    want = X.z(2 * j + lp) if jp == kp else X.ZERO
                    pt = random_point(random.Random(j + 2 * jp), 4)
                    assert eval_expr(d, pt) == eval_expr(want, pt)


def test_quotient_and_power_rules():
    pt = random_point(random.Random(11), 4)
    e = X.div(X.z(0) ** 3, X.const(1) + X.zb(1) * X.z(1))
    sym = _z[0] ** 3 / (1 + _w[1] * _z[1])
    for v, s in ((("z", 0), _z[0]), (("z", 1), _z[1]), (("zb", 1), _w[1])):
        assert eval_expr(diff(e, v), pt) == _as_gaussian(sp.diff(sym, s).subs(_subs(pt)))


def test_to_string_roundtrip_shape():
    assert "z[1,1]" in to_string(X.z(0) * X.zb(3))


@settings(max_examples=4)
@given(points)
def test_metric_matches_sympy_hessian(pt):
    ev = Evaluator(pt)
    s = _subs(pt)
    for I in range(4):
        for J in range(4):
            want = _as_gaussian(sp.diff(_PHI, _z[I], _w[J]).subs(s))
            assert ev(C.metric[I][J]) == want


@settings(max_examples=5)
@given(points)
def test_first_derivative_paths_agree(pt):
    ev = Evaluator(pt)
    for J in range(4):
        for barred in (False, True):
            assert ev.raw(potential_first_deriv(C, J, barred)) == ev.raw(log_det_first_deriv(C, J, barred))


@settings(max_examples=5)
@given(points)
def test_hessian_hermitian_inverse(pt):
    ev = Evaluator(pt)
    for I in range(4):
        for J in range(4):
            assert ev(hessian_from_det(C, I, J)) == ev(C.metric[I][J])
            assert ev(C.metric[I][J]) == ev(C.metric[J][I]).conjugate()
            prod = sum((ev(C.metric[I][k]) * ev(C.inv_metric[k][J]) for k in range(4)), G(0))
            assert prod == int(I == J)


@settings(max_examples=5)
@given(points)
def test_second_derivative_identity(pt):
    ev = Evaluator(pt)
    for I in range(4):
        for J in range(4):
            i, ip = divmod(I, 2)
            j, jp = divmod(J, 2)
            for barred, v in ((False, "z"), (True, "zb")):
                lhs = diff(potential_first_deriv(C, J, barred), (v, I))
                rhs = potential_first_deriv(C, 2 * i + jp, barred) * potential_first_deriv(C, 2 * j + ip, barred)
                assert ev(lhs) == -ev(rhs)


def test_kronecker_inverse_matches_adjugate():
    k = build_chart(2, 2, inverse="kronecker")
    for seed in range(3):
        ev = Evaluator(random_point(random.Random(seed), 4))
        for a in range(4):
            for b in range(4):
                assert ev(k.inv_metric[a][b]) == ev(C.inv_metric[a][b])


def test_D_operators_kill_the_wrong_side():
    a = X.z(0) * X.z(3) + X.z(1) ** 2
    b = X.zb(2) * X.zb(0)
    for k in range(4):
        assert D_up(C, k, a) is X.ZERO
        assert D_bar(C, k, b) is X.ZERO
    assert apply_multi_D(C, (1, -1, 0, 0), False, X.zb(0)) is X.ZERO


def test_curvature_constant_examples():
    I = CapIndex.parse
    assert curvature_constant(I("11'"), I("11'"), I("11'"), I("11'")) == -2
    assert curvature_constant(I("11'"), I("12'"), I("21'"), I("22'")) == -1
    assert all(curvature_constant(I("11'"), I("11'"), I("22'"), L) == 0 for L in INDICES)


def test_curvature_constant_brute_force_and_symmetry():
    def d(a, b):
        return int(a == b)
    for A in INDICES:
        for B in INDICES:
            for K in INDICES:
                for L in INDICES:
                    want = (-d(A.i, B.i) * d(K.i, L.i) * d(A.ip, K.ip) * d(B.ip, L.ip)
                            - d(A.i, K.i) * d(B.i, L.i) * d(A.ip, B.ip) * d(K.ip, L.ip))
                    v = curvature_constant(A, B, K, L)
                    assert v == want and v in (-2, -1, 0)
                    assert v == curvature_constant(L, B, K, A) == curvature_constant(A, K, B, L)


@pytest.mark.parametrize("seed", [None, 5])
def test_raised_curvature_is_constant(seed):
    pt = ORIGIN if seed is None else random_point(random.Random(seed), 4)
    ev = Evaluator(pt)
    for a in range(4):
        for b in range(4):
            for k in range(4):
                for l in range(4):
                    want = curvature_constant(INDICES[a], INDICES[b], INDICES[k], INDICES[l])
                    assert ev(raised_curvature(C, a, b, k, l)) == want


def test_curvature_paths_and_symmetry():
    ev = Evaluator(random_point(random.Random(8), 4))
    for I in range(4):
        for P in range(4):
            for L in range(4):
                for Q in range(4):
                    v = ev(curvature_from_potential(C, I, P, L, Q))
                    assert v == ev(curvature_from_metric(C, I, P, L, Q))
                    assert v == ev(curvature_from_potential(C, L, P, I, Q))


def test_singular_evaluation():
    with pytest.raises(EvalSingular):
        eval_expr(X.div(X.ONE, X.z(0)), ORIGIN)


def test_float_mode_close_to_exact():
    pt = random_point(random.Random(2), 4)
    for I in range(4):
        exact = complex(eval_expr(C.inv_metric[I][(I + 1) % 4], pt))
        approx = eval_expr(C.inv_metric[I][(I + 1) % 4], pt, mode="float")
        assert abs(approx - exact) <= 1e-12 * max(1.0, abs(exact))


def test_parse_point():
    pt = parse_point({"z[1,2]": ["0.5", "-1/3"], "z[2,1]": ["2", "0"]})
    assert pt[1] == G("1/2", "-1/3") and pt[2] == G(2) and pt[0] == 0
    with pytest.raises(BadIndex):
        parse_point({"z[3,1]": ["1", "0"]})
    with pytest.raises(BadIndex):
        parse_point({"w[1,1]": ["1", "0"]})
