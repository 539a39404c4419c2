"""Named verification suites.  Each returns a list of (check name, passed)."""
from __future__ import annotations

import random

from . import expr as X
from .closed_form import check_I_independence, closed_form_T
from .errors import EvalSingular
from .expr import Evaluator, add, diff, mul
from .fock import build_T_n, matrix_element
from .geometry import (build_chart, curvature_constant, hessian_from_det, potential_first_deriv,
                       raised_curvature, random_point)
from .indices import INDICES, mi_enumerate
from .oracle import oracle_T_linear_system
from .recurrence import recurrence_T_table
from .residuals import denominator_identity, residual_cor32, residual_general_grassmann, residual_hs
from .star import (HSeries, c1_antisymmetric_part, c1_contraction, series_equal, star_coeff_form,
                   star_direct_form, verify_associativity, verify_separation, verify_unit)

SUITES = ("recurrence", "hs-residual", "i-independence", "fock", "geometry", "star-axioms")


def suite_recurrence(n: int = 4, **_) -> list:
    T = recurrence_T_table(n)
    O = oracle_T_linear_system(n)
    out = []
    for k in range(n + 1):
        pairs = [(a, b) for b in mi_enumerate(k) for a in mi_enumerate(k)]
        out.append((f"closed form = recurrence, n={k}",
                    all(closed_form_T(k, a, b) == T.get_T(k, a, b) for a, b in pairs)))
        out.append((f"linear-system oracle = recurrence, n={k}",
                    all(O.get_T(k, a, b) == T.get_T(k, a, b) for a, b in pairs)))
        if k >= 1:
            out.append((f"recurrence residual zero for every I, n={k}",
                        all(residual_cor32(k, I, a, b, T).is_zero() for I in range(4) for a, b in pairs)))
    out.append((f"denominator symmetry identity for n<={max(n, 6)}",
                all(denominator_identity(k, b) for k in range(max(n, 6) + 1) for b in mi_enumerate(k))))
    return out


def suite_hs_residual(n: int = 4, **_) -> list:
    T = recurrence_T_table(n)
    out = []
    for k in range(1, n + 1):
        pairs = [(a, b) for b in mi_enumerate(k) for a in mi_enumerate(k)]
        out.append((f"general Grassmannian residual zero, n={k}",
                    all(residual_general_grassmann(2, 2, k, I, a, b, T).is_zero()
                        for I in range(4) for a, b in pairs)))
        out.append((f"locally symmetric residual zero, n={k}",
                    all(residual_hs(2, 2, k, I, a, b, T).is_zero() for I in range(4) for a, b in pairs)))
    return out


def suite_i_independence(n: int = 3, **_) -> list:
    return [(f"reference index independence, n={k}", check_I_independence(k)) for k in range(n + 1)]


def suite_fock(n: int = 4, **_) -> list:
    T = recurrence_T_table(n)
    out = []
    for k in range(n + 1):
        F = build_T_n(k)
        out.append((f"Fock matrix elements = recurrence, n={k}",
                    all(matrix_element(F, a, b) == T.get_T(k, a, b)
                        for b in mi_enumerate(k) for a in mi_enumerate(k))))
    return out


def geometry_points(c, rng: random.Random, count: int) -> list:
    pts = []
    while len(pts) < count:
        pt = random_point(rng, c.N)
        try:
            ev = Evaluator(pt)
            ev.raw(c.detB)
            for row_ in c.inv_metric:
                for e in row_:
                    ev.raw(e)
        except EvalSingular:
            continue
        pts.append(pt)
    return pts


def suite_geometry(seed: int = 0, points: int = 5, **_) -> list:
    c = build_chart(2, 2)
    rng = random.Random(seed)
    pts = geometry_points(c, rng, points)
    N = c.N
    hess = metric_ok = a3 = inv = curv = True
    for pt in pts:
        ev = Evaluator(pt)
        for I in range(N):
            for J in range(N):
                if ev.raw(hessian_from_det(c, I, J)) != ev.raw(c.metric[I][J]):
                    hess = False
                if ev(c.metric[I][J]) != ev(c.metric[J][I]).conjugate():
                    metric_ok = False
                i, ip = divmod(I, 2)
                j, jp = divmod(J, 2)
                for barred, v in ((False, "z"), (True, "zb")):
                    lhs = diff(potential_first_deriv(c, J, barred), (v, I))
                    rhs = X.neg(mul(potential_first_deriv(c, 2 * i + jp, barred),
                                    potential_first_deriv(c, 2 * j + ip, barred)))
                    if ev.raw(lhs) != ev.raw(rhs):
                        a3 = False
                prod = ev(add(*[mul(c.metric[I][x], c.inv_metric[x][J]) for x in range(N)]))
                if prod != (1 if I == J else 0):
                    inv = False
        for I in range(N):
            for J in range(N):
                for K in range(N):
                    for L in range(N):
                        want = curvature_constant(INDICES[I], INDICES[J], INDICES[K], INDICES[L])
                        if ev(raised_curvature(c, I, J, K, L)) != want:
                            curv = False
    return [("metric = Hessian of log det B", hess), ("metric Hermitian", metric_ok),
            ("second-derivative identity (both sides)", a3), ("g g^-1 = Id", inv),
            ("raised curvature = constants on all 256 tuples", curv)]


# polynomial corpus for the star checks; z(k)/zb(k) use 0-based psi positions
def star_corpus():
    z, zb = X.z, X.zb
    return [
        (z(0), zb(0)),
        (z(0) * zb(3), zb(1) * z(2)),
        (z(1) * z(2), zb(0) * zb(3)),
        (z(0) * zb(0) + 1, z(3) * zb(3)),
        (zb(2) * z(0) * z(1), zb(1)),
        (z(3), zb(2) * zb(2)),
        (z(0) * z(0) * zb(1), z(2) * zb(3) + zb(0)),
        (X.const((1, 2)) * z(1) + zb(1), z(0) * zb(2)),
        (z(2) * zb(2) * zb(0), z(1) + zb(3)),
        (z(0) * zb(3) - z(3) * zb(0), z(1) * zb(1)),
    ]


def holomorphic_corpus():
    z = X.z
    return [z(0), z(1) * z(2), z(3) * z(3) + z(0), X.const(3) * z(2) - z(1) * z(0), z(0) * z(1) * z(3)]


def suite_star_axioms(order: int = 3, seed: int = 0, points: int = 3, **_) -> list:
    c = build_chart(2, 2)
    rng = random.Random(seed)
    corpus = star_corpus()
    out = []
    out.append((f"unit laws through order {order}",
                all(verify_unit(c, f, order, rng) and verify_unit(c, g, order, rng) for f, g in corpus)))
    sep = True
    for (f, g), a in zip(corpus, holomorphic_corpus() * 2):
        b = _conj_var(a)
        if not verify_separation(c, a, f, order, rng, side="left"):
            sep = False
        if not verify_separation(c, b, g, order, rng, side="right"):
            sep = False
    out.append((f"separation of variables through order {order} on {len(corpus)} pairs", sep))
    pts = [random_point(rng, c.N) for _ in range(points)]
    out.append(("coefficient form = direct form through order 2",
                all(series_equal(star_coeff_form(c, f, g, 2), star_direct_form(c, f, g, 2), pts)
                    for f, g in corpus)))
    triples = [(f, g, corpus[(i + 3) % len(corpus)][0]) for i, (f, g) in enumerate(corpus[:3])]
    out.append((f"associativity through order 2 on {len(triples)} triples x {points} points",
                all(verify_associativity(c, f, g, h, 2, pts) for f, g, h in triples)))
    out += suite_c1(seed=seed, points=points)
    return out


def _conj_var(e):
    """Antiholomorphic partner of a holomorphic corpus entry (swap z -> zb)."""
    if e.op == X.VAR:
        return X.zb(e.data[1])
    if e.op == X.CONST:
        return e
    if e.op == X.ADD:
        return add(*[_conj_var(a) for a in e.args])
    if e.op == X.MUL:
        return mul(*[_conj_var(a) for a in e.args])
    if e.op == X.POW:
        return X.power(_conj_var(e.args[0]), e.data)
    return X.div(_conj_var(e.args[0]), _conj_var(e.args[1]))


def suite_c1(seed: int = 0, points: int = 5, **_) -> list:
    c = build_chart(2, 2)
    rng = random.Random(seed + 1)
    pts = [random_point(rng, c.N) for _ in range(points)]
    corpus = star_corpus()
    match = anti = leib = True
    for idx, (f, g) in enumerate(corpus[:6]):
        h = corpus[(idx + 1) % len(corpus)][1]
        A = c1_antisymmetric_part(c, f, g)
        if not series_equal(HSeries([A]), HSeries([c1_contraction(c, f, g)]), pts):
            match = False
        if not series_equal(HSeries([A]), HSeries([X.neg(c1_antisymmetric_part(c, g, f))]), pts):
            anti = False
        # {f, g h} = {f, g} h + g {f, h}
        lhs = c1_antisymmetric_part(c, f, mul(g, h))
        rhs = add(mul(A, h), mul(g, c1_antisymmetric_part(c, f, h)))
        if not series_equal(HSeries([lhs]), HSeries([rhs]), pts):
            leib = False
    return [("first-order antisymmetric part = metric contraction", match),
            ("first-order antisymmetric part is antisymmetric", anti),
            ("first-order antisymmetric part satisfies Leibniz", leib)]


def run_suite(name: str, n: int = 4, order: int = 3, seed: int = 0) -> list:
    fn = {
        "recurrence": suite_recurrence,
        "hs-residual": suite_hs_residual,
        "i-independence": suite_i_independence,
        "fock": suite_fock,
        "geometry": suite_geometry,
        "star-axioms": suite_star_axioms,
    }[name]
    if name == "i-independence":
        return fn(n=min(n, 4))
    return fn(n=n, order=order, seed=seed)
