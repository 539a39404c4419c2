"""The star product on G_{2,4} as a truncated hbar series of expressions.

Two evaluators are provided:

* ``star_coeff_form``: f * g = sum_n sum_{alpha,beta} T^n_{alpha,beta} (D^alpha f)(D^{beta*} g),
  with T^n from the recurrence and the metric symbols replaced by chart expressions.
* ``star_direct_form``: the explicit sum over J_l, Y_l, k_l with the Upsilon factors.

Each rational function of hbar is expanded at hbar = 0, so the k-th entry of
the returned series is the coefficient C_k(f, g).

First-order convention: C_1(f, g) = g^{m lbar} d_lbar f d_m g, so the
antisymmetric part is C_1(f,g) - C_1(g,f) = g^{m lbar}(d_lbar f d_m g - d_lbar g d_m f).
No relation to a particular normalization of the symplectic form is assumed.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import expr as X
from .errors import BoundExceeded, EvalSingular, UnsupportedShape
from .exact_scalars import GaussianRational, HRational, ONE as H_ONE, to_rational
from .expr import Evaluator, Expr, add, diff, mul
from .geometry import GrassmannChart, apply_multi_D, build_chart, random_point
from .indices import MIXED_COL, MIXED_ROW, SLASH, col, mi_enumerate, mk, row
from .recurrence import recurrence_T_table

MAX_ORDER = 3


@dataclass
class HSeries:
    """Coefficients C_0..C_N of a truncated hbar series."""

    coeffs: list

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k) -> Expr:
        return self.coeffs[k]

    def __add__(self, other: "HSeries") -> "HSeries":
        return HSeries([add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HSeries") -> "HSeries":
        return HSeries([add(a, X.neg(b)) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "HSeries":
        return HSeries([mul(X.as_expr(c), a) for a in self.coeffs])

    def evaluate(self, point, mode: str = "exact") -> list:
        ev = Evaluator(point, mode)
        return [ev(e) for e in self.coeffs]

    def at_hbar(self, point, h, mode: str = "float"):
        """sum_k h^k C_k at the point."""
        vals = self.evaluate(point, mode)
        if mode == "float":
            h = h if isinstance(h, (int, float, complex)) else float(to_rational(h))
        else:
            h = GaussianRational(to_rational(h))
        total = 0
        hk = 1
        for v in vals:
            total = total + v * hk
            hk = hk * h
        return total


def _check(c: GrassmannChart, N: int):
    if c.p != 2 or c.q != 2:
        raise UnsupportedShape("the star product is implemented for p = q = 2")
    if N > MAX_ORDER:
        raise BoundExceeded(f"order {N} exceeds the desk bound {MAX_ORDER}")
    if N < 0:
        raise ValueError("order must be nonnegative")


def _mono_expr(c: GrassmannChart, mono: tuple) -> Expr:
    key = ("mono", mono)
    hit = c._cache.get(key)
    if hit is None:
        # symbol g_{Xbar D} has the value metric[D][X]
        hit = mul(*[c.metric[s % 4][s // 4] for s in mono]) if mono else X.ONE
        c._cache[key] = hit
    return hit


@lru_cache(maxsize=None)
def _series(h: HRational, N: int) -> tuple:
    return tuple(h.series(N))


def _accumulate(c, groups: dict, f: Expr, g: Expr, N: int) -> HSeries:
    """groups: (alpha, beta) -> {mono: HRational}."""
    out = [[] for _ in range(N + 1)]
    for (alpha, beta), terms in groups.items():
        Df = apply_multi_D(c, alpha, False, f)
        if Df is X.ZERO:
            continue
        Dg = apply_multi_D(c, beta, True, g)
        if Dg is X.ZERO:
            continue
        fg = mul(Df, Dg)
        per_k = [[] for _ in range(N + 1)]
        for mono, h in terms.items():
            s = _series(h, N)
            me = _mono_expr(c, mono)
            for k in range(N + 1):
                if s[k] != 0:
                    per_k[k].append(mul(X.const(s[k]), me))
        for k in range(N + 1):
            if per_k[k]:
                out[k].append(mul(add(*per_k[k]), fg))
    return HSeries([add(*terms) for terms in out])


def star_coeff_form(c: GrassmannChart, f: Expr, g: Expr, N: int) -> HSeries:
    _check(c, N)
    table = recurrence_T_table(N)
    groups = {}
    for n in range(N + 1):
        for beta in mi_enumerate(n):
            for alpha in mi_enumerate(n):
                t = table.get_T(n, alpha, beta)
                if t:
                    groups[(alpha, beta)] = t.terms
    return _accumulate(c, groups, f, g, N)


def _step_d(J: int, k0: int) -> tuple:
    d = [0, 0, 0, 0]
    d[J] += 1
    if k0 != row(J):
        d[SLASH[J]] += 1
        d[MIXED_ROW[J]] -= 1
    return tuple(d)


@lru_cache(maxsize=None)
def direct_terms(n: int, I: int = 0) -> tuple:
    """All terms of order n of the explicit formula, grouped as ((alpha, beta), mono, HRational)."""
    acc = defaultdict(lambda: HRational.const(0))
    a_pair = (I, MIXED_COL[I])
    b_pair = (SLASH[I], MIXED_ROW[I])
    for seq in product(range(8), repeat=n):
        Js = [s >> 1 for s in seq]
        ks = [s & 1 for s in seq]
        ds = [_step_d(J, k) for J, k in zip(Js, ks)]
        # theta on sums over m = 1..r-1 for r = 1..n
        prefix = [0, 0, 0, 0]
        ok = True
        for r in range(n):
            if min(prefix) < 0:
                ok = False
                break
            prefix = [p + d for p, d in zip(prefix, ds[r])]
        if not ok:
            continue
        beta = tuple(prefix)
        if min(beta) < 0:
            continue  # D^{beta*} with a negative entry is zero
        scalar = H_ONE
        for l in range(1, n + 1):
            J, k = Js[l - 1], ks[l - 1]
            jr = MIXED_ROW[J]
            dsum = sum(ds[m][jr] for m in range(l))
            sa = sum(int(Js[m] in a_pair) for m in range(l))
            sb = sum(int(Js[m] in b_pair) for m in range(l))
            tau = HRational.tau(l)
            ups = (tau * int(J >> 1 == k) + (1 + dsum)) / (tau * l + (l + 2 * sa * sb))
            scalar = scalar * ups / tau
        if scalar.is_zero():
            continue
        Xs = [mk(k, col(J)) for J, k in zip(Js, ks)]
        for Ys in product(range(4), repeat=n):
            alpha = [0, 0, 0, 0]
            for Y in Ys:
                alpha[Y] += 1
            mono = tuple(sorted(4 * Xs[l] + Ys[l] for l in range(n)))
            acc[(tuple(alpha), beta, mono)] = acc[(tuple(alpha), beta, mono)] + scalar
    return tuple((k, v) for k, v in acc.items() if not v.is_zero())


def star_direct_form(c: GrassmannChart, f: Expr, g: Expr, N: int, I: int = 0) -> HSeries:
    _check(c, N)
    groups: dict = {}
    for n in range(N + 1):
        for (alpha, beta, mono), h in direct_terms(n, I):
            groups.setdefault((alpha, beta), {})[mono] = h
    return _accumulate(c, groups, f, g, N)


def star_series_coeffwise(c, F: HSeries, G: HSeries, N: int, star=star_coeff_form) -> HSeries:
    """Star product of two hbar series, truncated at order N."""
    out = [[] for _ in range(N + 1)]
    for i, a in enumerate(F.coeffs[:N + 1]):
        for j, b in enumerate(G.coeffs[:N + 1 - i]):
            if a is X.ZERO or b is X.ZERO:
                continue
            s = star(c, a, b, N - i - j)
            for k, e in enumerate(s.coeffs):
                out[i + j + k].append(e)
    return HSeries([add(*t) for t in out])


def c1_antisymmetric_part(c: GrassmannChart, f: Expr, g: Expr) -> Expr:
    """C_1(f,g) - C_1(g,f) from the coefficient form."""
    return add(star_coeff_form(c, f, g, 1)[1], X.neg(star_coeff_form(c, g, f, 1)[1]))


def c1_contraction(c: GrassmannChart, f: Expr, g: Expr) -> Expr:
    """g^{m lbar}(d_lbar f d_m g - d_lbar g d_m f), straight from the inverse metric."""
    terms = []
    for m in range(c.N):
        for l in range(c.N):
            gi = c.inv_metric[l][m]  # g^{m lbar} = g^{lbar m}
            a = mul(diff(f, ("zb", l)), diff(g, ("z", m)))
            b = mul(diff(g, ("zb", l)), diff(f, ("z", m)))
            terms.append(mul(gi, add(a, X.neg(b))))
    return add(*terms)


# ---------------------------------------------------------------------------
# verification by exact evaluation at random points

def _points(c: GrassmannChart, rng: random.Random, count: int, exprs=()):
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 50 * count:
            raise EvalSingular("could not find regular points")
        pt = random_point(rng, c.N)
        ev = Evaluator(pt)
        try:
            ev.raw(c.detB)
            for e in exprs:
                ev.raw(e)
        except EvalSingular:
            continue
        out.append(pt)
    return out


def _all_zero(exprs, points) -> bool:
    for pt in points:
        ev = Evaluator(pt)
        for e in exprs:
            if e is X.ZERO:
                continue
            try:
                v = ev.raw(e)
            except EvalSingular:
                raise
            if v[0] != 0 or v[1] != 0:
                return False
    return True


def series_equal(A: HSeries, B: HSeries, points) -> bool:
    return _all_zero([add(a, X.neg(b)) for a, b in zip(A.coeffs, B.coeffs)], points)


def verify_unit(c: GrassmannChart, f: Expr, N: int, rng=None, n_points: int = 3) -> bool:
    rng = rng or random.Random(0)
    pts = _points(c, rng, n_points)
    target = HSeries([f] + [X.ZERO] * N)
    return (series_equal(star_coeff_form(c, f, X.ONE, N), target, pts)
            and series_equal(star_coeff_form(c, X.ONE, f, N), target, pts))


def verify_separation(c: GrassmannChart, a: Expr, f: Expr, N: int, rng=None, n_points: int = 3,
                      side: str = "left") -> bool:
    """a * f = a f for holomorphic a (side="left"), or f * a = f a for antiholomorphic a (side="right")."""
    rng = rng or random.Random(0)
    if side == "left":
        if not a.is_holomorphic():
            raise ValueError("left separation needs a holomorphic function")
        s = star_coeff_form(c, a, f, N)
    else:
        if not a.is_antiholomorphic():
            raise ValueError("right separation needs an antiholomorphic function")
        s = star_coeff_form(c, f, a, N)
    pts = _points(c, rng, n_points)
    return series_equal(s, HSeries([mul(a, f)] + [X.ZERO] * N), pts)


def associativity_defect(c: GrassmannChart, f: Expr, g: Expr, h: Expr, N: int) -> HSeries:
    fg = star_coeff_form(c, f, g, N)
    gh = star_coeff_form(c, g, h, N)
    left = star_series_coeffwise(c, fg, HSeries([h] + [X.ZERO] * N), N)
    right = star_series_coeffwise(c, HSeries([f] + [X.ZERO] * N), gh, N)
    return left - right


def verify_associativity(c: GrassmannChart, f: Expr, g: Expr, h: Expr, N: int, points=None,
                         rng=None, n_points: int = 3) -> bool:
    if N > 2:
        raise BoundExceeded("associativity is checked through order 2")
    if points is None:
        points = _points(c, rng or random.Random(0), n_points)
    return _all_zero(associativity_defect(c, f, g, h, N).coeffs, points)


def default_chart() -> GrassmannChart:
    return build_chart(2, 2)
