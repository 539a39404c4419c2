"""Order-by-order solution of the G_{2,4} recurrence (n-1 -> n formula).

For fixed beta the coefficient T^n_{alpha,beta} depends on alpha only through
the metric factors g_{Xbar D} whose D indices add up to alpha.  So order n is
stored per beta as a polynomial in the four linear forms L_X = sum_D g_{Xbar D} t_D,
and T^n_{alpha,beta} is the coefficient of t^alpha.  The recurrence acts on
these generating polynomials directly:

    F^n_beta = sum_{J,k} (tau_n delta_{jk} + beta_{j\\j'} + 1) L_{(k,j')} F^{n-1}_{beta'}
               / (tau_n {n(tau_n+1) + 2(beta_11'+beta_21')(beta_22'+beta_12')})

with beta' = beta - e_J - delta_{\\j,k}(e_{\\J} - e_{j\\j'}).
"""
from __future__ import annotations

from collections.abc import Mapping
from functools import lru_cache

from .errors import BadWeight, BoundExceeded
from .exact_scalars import HRational, ONE as H_ONE
from .indices import MIXED_COL, MIXED_ROW, SLASH, col, mi_admissible, mi_enumerate, mk, row
from .ring import CoeffPoly, expand_generating

MAX_N = 6


def step_targets(J: int, k: int) -> tuple[int, tuple]:
    """(X, d-vector) for one step: X = (k, j') is the barred metric index, d is subtracted from beta."""
    j, jp = row(J), col(J)
    d = [0, 0, 0, 0]
    d[J] += 1
    if k != j:
        d[SLASH[J]] += 1
        d[MIXED_ROW[J]] -= 1
    return mk(k, jp), tuple(d)


STEPS = tuple((J, k) + step_targets(J, k) for J in range(4) for k in range(2))


def denominator(n: int, beta: tuple) -> HRational:
    """tau_n {n(tau_n+1) + 2(beta_11'+beta_21')(beta_22'+beta_12')}."""
    tau = HRational.tau(n)
    e = 2 * (beta[0] + beta[2]) * (beta[3] + beta[1])
    return tau * (tau * n + (n + e))


def _gen_mul_form(gen: dict, X: int, scale: HRational, out: dict):
    for gamma, c in gen.items():
        g2 = list(gamma)
        g2[X] += 1
        g2 = tuple(g2)
        v = c * scale
        old = out.get(g2)
        if old is None:
            out[g2] = v
        else:
            s = old + v
            if s.is_zero():
                del out[g2]
            else:
                out[g2] = s


class CoeffTable(Mapping):
    """Map (n, alpha, beta) -> CoeffPoly backed by generating polynomials.

    Keys are all admissible pairs of equal weight n <= n_max.  Entries are
    expanded on first access and cached.
    """

    def __init__(self, gens: list[dict]):
        self.gens = gens
        self.n_max = len(gens) - 1
        self._cache: dict = {}

    def generating(self, n: int, beta: tuple) -> dict:
        return self.gens[n].get(tuple(beta), {})

    def get_T(self, n: int, alpha, beta) -> CoeffPoly:
        """T^n_{alpha,beta}; zero for inadmissible or out-of-weight indices."""
        alpha = tuple(alpha)
        beta = tuple(beta)
        if n < 0 or n > self.n_max:
            return CoeffPoly.zero()
        if not (mi_admissible(alpha) and mi_admissible(beta)) or sum(alpha) != n or sum(beta) != n:
            return CoeffPoly.zero()
        key = (n, alpha, beta)
        hit = self._cache.get(key)
        if hit is None:
            hit = expand_generating(self.gens[n].get(beta, {}), alpha)
            self._cache[key] = hit
        return hit

    def __getitem__(self, key):
        n, alpha, beta = key
        if not (0 <= n <= self.n_max and mi_admissible(alpha) and mi_admissible(beta)
                and sum(alpha) == n and sum(beta) == n):
            raise KeyError(key)
        return self.get_T(n, alpha, beta)

    def __iter__(self):
        for n in range(self.n_max + 1):
            for beta in mi_enumerate(n):
                for alpha in mi_enumerate(n):
                    yield (n, alpha, beta)

    def __len__(self):
        return sum(len(mi_enumerate(n)) ** 2 for n in range(self.n_max + 1))

    def order(self, n: int) -> dict:
        """All entries of order n as a plain dict (alpha, beta) -> CoeffPoly."""
        return {(a, b): self.get_T(n, a, b) for b in mi_enumerate(n) for a in mi_enumerate(n)}

    def materialize(self, n: int, keep: bool = False) -> int:
        """Expand every order-n entry; returns the number of monomials produced."""
        count = 0
        for beta in mi_enumerate(n):
            gen = self.gens[n].get(beta, {})
            for alpha in mi_enumerate(n):
                p = self.get_T(n, alpha, beta) if keep else expand_generating(gen, alpha)
                count += len(p)
        return count


def recurrence_generating(n_max: int) -> list[dict]:
    if n_max > MAX_N:
        raise BoundExceeded(f"n = {n_max} exceeds the desk bound {MAX_N}")
    if n_max < 0:
        raise BadWeight("n must be nonnegative")
    return [dict(g) for g in _gens(n_max)]


@lru_cache(maxsize=None)
def _gens(n_max: int) -> tuple:
    if n_max == 0:
        return ({(0, 0, 0, 0): {(0, 0, 0, 0): H_ONE}},)
    prev = _gens(n_max - 1)
    n = n_max
    last = prev[-1]
    tau = HRational.tau(n)
    level = {}
    for beta in mi_enumerate(n):
        acc: dict = {}
        for J, k, X, d in STEPS:
            if beta[J] == 0:
                continue
            bp = tuple(b - x for b, x in zip(beta, d))
            if min(bp) < 0:
                continue
            g = last.get(bp)
            if not g:
                continue
            c = beta[MIXED_ROW[J]] + 1
            num = tau + c if k == row(J) else HRational.const(c)
            _gen_mul_form(g, X, num, acc)
        if acc:
            inv = denominator(n, beta).inverse()
            level[beta] = {gm: c * inv for gm, c in acc.items()}
    return prev + (level,)


def recurrence_T_table(n_max: int) -> CoeffTable:
    """Coefficients T^n for all n <= n_max from the n-1 -> n formula, seeded by T^0 = 1."""
    return CoeffTable(recurrence_generating(n_max))


def table_as_dict(table: Mapping, n: int) -> dict:
    return {(a, b): table[(n, a, b)] for b in mi_enumerate(n) for a in mi_enumerate(n)}


# re-export for convenience
__all__ = ["CoeffTable", "recurrence_T_table", "recurrence_generating", "denominator", "STEPS",
           "step_targets", "MIXED_COL"]
