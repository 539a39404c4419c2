"""Kähler geometry of the standard chart of G_{p,p+q}(C).

The chart coordinate z^{ii'} (i in 1..q, i' in 1..p) is the variable at 0-based
position ``p*(i-1) + (i'-1)``.  With B = Id_p + Z^dagger Z and A = Id_q + Z Z^dagger
the potential is Phi = log det B and

    g_{ii', jj'bar} = a^{jbar i} b^{i' j'bar},

where a and b are the inverse matrices.  ``metric[D][X]`` holds g_{D Xbar};
the coefficient ring symbol g_{Xbar D} is resolved to the same entry.
``inv_metric[X][E]`` holds g^{Xbar E}, so that sum_X g_{D Xbar} g^{Xbar E} = delta.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import expr as X
from .errors import BadIndex, EvalSingular
from .exact_scalars import GaussianRational
from .expr import Evaluator, Expr, add, diff, div, mul, neg


def _det(m: list[list[Expr]]) -> Expr:
    """Laplace expansion along rows, memoized on the remaining column set."""
    n = len(m)
    if n == 0:
        return X.ONE
    memo: dict = {}

    def go(r: int, cols: tuple) -> Expr:
        if r == n:
            return X.ONE
        hit = memo.get(cols)
        if hit is not None:
            return hit
        terms = []
        for pos, c in enumerate(cols):
            entry = m[r][c]
            if entry is X.ZERO:
                continue
            sub = go(r + 1, cols[:pos] + cols[pos + 1:])
            t = mul(entry, sub)
            terms.append(neg(t) if pos % 2 else t)
        out = add(*terms)
        memo[cols] = out
        return out

    return go(0, tuple(range(n)))


def _inverse(m: list[list[Expr]]) -> tuple[list[list[Expr]], Expr]:
    """Adjugate over determinant."""
    n = len(m)
    det = _det(m)
    inv = [[X.ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = _det(minor)
            if (i + j) % 2:
                cof = neg(cof)
            inv[i][j] = div(cof, det)
    return inv, det


@dataclass
class GrassmannChart:
    p: int
    q: int
    Z: list
    Zb: list
    B: list
    A: list
    detB: Expr
    Binv: list
    Ainv: list
    metric: list
    inv_metric: list
    inverse_method: str
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def N(self) -> int:
        return self.p * self.q

    def pos(self, I) -> int:
        """0-based psi position of a CapIndex or an int code."""
        if isinstance(I, int):
            if not 0 <= I < self.N:
                raise BadIndex(f"index code {I} out of range")
            return I
        if not (1 <= I.i <= self.q and 1 <= I.ip <= self.p):
            raise BadIndex(f"{I} out of range for p={self.p}, q={self.q}")
        return self.p * (I.i - 1) + (I.ip - 1)

    def split(self, k: int) -> tuple[int, int]:
        """0-based (i, i') of a psi position."""
        return divmod(k, self.p)

    # aliases used in the docs
    @property
    def metricMatrix(self):
        return self.metric

    @property
    def invMetricMatrix(self):
        return self.inv_metric


def build_chart(p: int = 2, q: int = 2, inverse: str = "adjugate") -> GrassmannChart:
    """Build the chart matrices.

    ``inverse`` selects how g^{-1} is formed: "adjugate" inverts the qp x qp
    metric matrix directly; "kronecker" uses the factorization of g as a
    tensor product, g^{Xbar E} = A[e][x] B[x'][e'], which is polynomial.
    """
    return _build_chart(p, q, inverse)


@lru_cache(maxsize=None)
def _build_chart(p: int, q: int, inverse: str) -> GrassmannChart:
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    Z = [[X.z(p * i + ip) for ip in range(p)] for i in range(q)]
    Zb = [[X.zb(p * i + ip) for ip in range(p)] for i in range(q)]
    B = [[add(X.ONE if a == b else X.ZERO, *[mul(Zb[m][a], Z[m][b]) for m in range(q)])
          for b in range(p)] for a in range(p)]
    A = [[add(X.ONE if a == b else X.ZERO, *[mul(Z[a][m], Zb[b][m]) for m in range(p)])
          for b in range(q)] for a in range(q)]
    Binv, detB = _inverse(B)
    Ainv, _ = _inverse(A)
    N = p * q
    metric = [[X.ZERO] * N for _ in range(N)]
    for D in range(N):
        i, ip = divmod(D, p)
        for Xi in range(N):
            j, jp = divmod(Xi, p)
            metric[D][Xi] = mul(Ainv[j][i], Binv[ip][jp])
    if inverse == "adjugate":
        inv_metric, _ = _inverse(metric)
    elif inverse == "kronecker":
        inv_metric = [[X.ZERO] * N for _ in range(N)]
        for Xi in range(N):
            x, xp = divmod(Xi, p)
            for E in range(N):
                e, ep = divmod(E, p)
                inv_metric[Xi][E] = mul(A[e][x], B[xp][ep])
    else:
        raise ValueError(f"unknown inverse method {inverse!r}")
    return GrassmannChart(p, q, Z, Zb, B, A, detB, Binv, Ainv, metric, inv_metric, inverse)


# ---------------------------------------------------------------------------
# potential and metric

def potential_first_deriv(c: GrassmannChart, J, barred: bool) -> Expr:
    """d_J Phi (barred=False) or d_{Jbar} Phi (barred=True), from the closed form."""
    k = c.pos(J)
    j, jp = c.split(k)
    if barred:
        return add(*[mul(c.Z[j][l], c.Binv[l][jp]) for l in range(c.p)])
    return add(*[mul(c.Zb[j][l], c.Binv[jp][l]) for l in range(c.p)])


def log_det_first_deriv(c: GrassmannChart, J, barred: bool) -> Expr:
    """Same quantity computed as d(det B)/det B, used as an independent check."""
    k = c.pos(J)
    v = ("zb", k) if barred else ("z", k)
    return div(diff(c.detB, v), c.detB)


def hessian_from_det(c: GrassmannChart, I, Jbar) -> Expr:
    """d_I d_{Jbar} log det B via the quotient rule on det B."""
    return diff(log_det_first_deriv(c, Jbar, True), ("z", c.pos(I)))


def metric_entry(c: GrassmannChart, D, Xbar) -> Expr:
    """g_{D Xbar}; this is the value of the ring symbol g_{Xbar D}."""
    return c.metric[c.pos(D)][c.pos(Xbar)]


def inv_metric_entry(c: GrassmannChart, Kbar, L) -> Expr:
    """g^{Kbar L}."""
    return c.inv_metric[c.pos(Kbar)][c.pos(L)]


# ---------------------------------------------------------------------------
# the operators D^k = g^{k lbar} d_lbar and D^{kbar} = g^{kbar l} d_l

def D_up(c: GrassmannChart, k, e: Expr) -> Expr:
    k = c.pos(k)
    key = ("up", k, e)
    hit = c._cache.get(key)
    if hit is not None:
        return hit
    terms = []
    for l in range(c.N):
        d = diff(e, ("zb", l))
        if d is not X.ZERO:
            # g^{k lbar} = g^{lbar k}
            terms.append(mul(c.inv_metric[l][k], d))
    out = add(*terms)
    c._cache[key] = out
    return out


def D_bar(c: GrassmannChart, k, e: Expr) -> Expr:
    k = c.pos(k)
    key = ("bar", k, e)
    hit = c._cache.get(key)
    if hit is not None:
        return hit
    terms = []
    for l in range(c.N):
        d = diff(e, ("z", l))
        if d is not X.ZERO:
            terms.append(mul(c.inv_metric[k][l], d))
    out = add(*terms)
    c._cache[key] = out
    return out


def apply_multi_D(c: GrassmannChart, alpha, barred: bool, e: Expr) -> Expr:
    """(D^1)^{a_1} ... (D^N)^{a_N} e, rightmost factor applied first; zero if any a_k < 0."""
    if any(a < 0 for a in alpha):
        return X.ZERO
    key = ("multi", tuple(alpha), barred, e)
    hit = c._cache.get(key)
    if hit is not None:
        return hit
    op = D_bar if barred else D_up
    out = e
    for k in range(len(alpha) - 1, -1, -1):
        for _ in range(alpha[k]):
            if out is X.ZERO:
                break
            out = op(c, k, out)
    c._cache[key] = out
    return out


# ---------------------------------------------------------------------------
# curvature

def curvature_constant(I, J, K, L) -> int:
    """-d_ij d_kl d_i'k' d_j'l' - d_ik d_jl d_i'j' d_k'l' for CapIndex arguments."""
    a = I.i == J.i and K.i == L.i and I.ip == K.ip and J.ip == L.ip
    b = I.i == K.i and J.i == L.i and I.ip == J.ip and K.ip == L.ip
    return -int(a) - int(b)


def potential_derivative(c: GrassmannChart, holo: tuple, anti: tuple) -> Expr:
    """d_{holo...} d_{anti bar...} Phi for position tuples, built from d_{Lbar} Phi."""
    if not anti:
        e = potential_first_deriv(c, holo[0], False)
        rest_h = holo[1:]
        rest_a = ()
    else:
        e = potential_first_deriv(c, anti[0], True)
        rest_h = holo
        rest_a = anti[1:]
    for a in rest_a:
        e = diff(e, ("zb", c.pos(a)))
    for h in rest_h:
        e = diff(e, ("z", c.pos(h)))
    return e


def curvature_from_potential(c: GrassmannChart, I, P, L, Q) -> Expr:
    """R_{Ibar P Lbar Q} = -d_P d_Ibar d_Q d_Lbar Phi + g^{A Bbar} (d_P d_Bbar d_Q Phi)(d_A d_Ibar d_Lbar Phi)."""
    I, P, L, Q = (c.pos(t) for t in (I, P, L, Q))
    key = ("R", I, P, L, Q)
    hit = c._cache.get(key)
    if hit is not None:
        return hit
    fourth = potential_derivative(c, (P, Q), (L, I))
    terms = [neg(fourth)]
    for A_ in range(c.N):
        right = potential_derivative(c, (A_,), (L, I))
        for B_ in range(c.N):
            left = potential_derivative(c, (P, Q), (B_,))
            # g^{A Bbar} = g^{Bbar A}
            terms.append(mul(c.inv_metric[B_][A_], left, right))
    out = add(*terms)
    c._cache[key] = out
    return out


def curvature_from_metric(c: GrassmannChart, I, P, L, Q) -> Expr:
    """Closed form g_{P,(il')bar} g_{Q,(li')bar} + g_{Q,(il')bar} g_{P,(li')bar}."""
    I, P, L, Q = (c.pos(t) for t in (I, P, L, Q))
    i, ip = c.split(I)
    l, lp = c.split(L)
    il = c.p * i + lp
    li = c.p * l + ip
    g = c.metric
    return add(mul(g[P][il], g[Q][li]), mul(g[Q][il], g[P][li]))


def raised_curvature(c: GrassmannChart, I, J, K, L, lowered=curvature_from_potential) -> Expr:
    """R_{Ibar}^{Jbar Kbar}_{Lbar} = -g^{Jbar P} g^{Kbar Q} R_{Ibar P Lbar Q}."""
    J, K = c.pos(J), c.pos(K)
    terms = []
    for P in range(c.N):
        for Q in range(c.N):
            terms.append(mul(c.inv_metric[J][P], c.inv_metric[K][Q], lowered(c, I, P, L, Q)))
    return neg(add(*terms))


# ---------------------------------------------------------------------------
# points

def random_point(rng: random.Random, n_vars: int = 4, max_num: int = 3, max_den: int = 4) -> dict:
    """Gaussian-rational point with |num| <= max_num and den <= max_den per component."""
    def comp():
        return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
    return {k: GaussianRational(comp(), comp()) for k in range(n_vars)}


def regular_point(c: GrassmannChart, rng: random.Random, checks=(), mode: str = "exact", tries: int = 50):
    """Draw points until every expression in ``checks`` evaluates without a singularity."""
    for _ in range(tries):
        pt = random_point(rng, c.N)
        ev = Evaluator(pt, mode)
        try:
            for e in checks:
                ev.raw(e)
        except EvalSingular:
            continue
        return pt, ev
    raise EvalSingular("could not find a regular point")


def parse_point(obj: dict, p: int = 2, q: int = 2) -> dict:
    """{"z[1,1]": ["re", "im"], ...} -> {psi position: GaussianRational}; missing entries are 0."""
    import re as _re
    out = {k: GaussianRational(0) for k in range(p * q)}
    for key, val in obj.items():
        m = _re.fullmatch(r"\s*z\[(\d+),(\d+)\]\s*", key)
        if not m:
            raise BadIndex(f"bad point key {key!r}")
        i, ip = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= q and 1 <= ip <= p):
            raise BadIndex(f"{key} out of range for p={p}, q={q}")
        if isinstance(val, (list, tuple)):
            re_, im_ = (val + ["0"])[:2] if isinstance(val, list) else val
        else:
            re_, im_ = val, "0"
        out[p * (i - 1) + ip - 1] = GaussianRational(str(re_), str(im_))
    return out


def all_positions(c: GrassmannChart):
    return range(c.N)


def index_tuples(n_vars: int, r: int):
    return product(range(n_vars), repeat=r)
