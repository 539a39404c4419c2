"""Independent coefficient solver through the 2x2 linear system.

For beta with beta_I > 0 the G_{2,4} recurrence for I, paired with the
companion relation for the shifted coefficient, forms

    [[tau + b_{\\I},  -(b_{i\\i'} + 1)],     [ beta_I T^n_{alpha,beta}             ]   [v1]
     [-b_{\\I},       tau + b_{i\\i'} + 1]] . [ (b_{\\ii'}+1) T^n_{alpha,beta'}     ] = [v2]

with v1 = sum_D g_{Ibar D} T^{n-1}_{alpha-e_D, beta-e_I} and
v2 = sum_D g_{(\\ii')bar D} T^{n-1}_{alpha-e_D, beta-e_I-e_{\\I}+e_{i\\i'}}.
The solver inverts the matrix explicitly and keeps the first component.
Everything is done entry by entry on CoeffPolys, with no generating forms.
"""
from __future__ import annotations

from collections.abc import Mapping

from .errors import BoundExceeded
from .exact_scalars import HRational
from .indices import MIXED_COL, MIXED_ROW, SLASH, mi_admissible, mi_enumerate
from .recurrence import MAX_N
from .ring import CoeffPoly, sym


class ExplicitTable(Mapping):
    """Plain dict-backed table (n, alpha, beta) -> CoeffPoly."""

    def __init__(self, entries: dict | None = None, n_max: int = 0):
        self.entries = entries if entries is not None else {}
        self.n_max = n_max

    def get_T(self, n, alpha, beta) -> CoeffPoly:
        return self.entries.get((n, tuple(alpha), tuple(beta))) or CoeffPoly.zero()

    def __getitem__(self, key):
        return self.entries[key]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _shift(v, *pairs):
    out = list(v)
    for k, d in pairs:
        out[k] += d
    return tuple(out)


def system_matrix(n: int, beta: tuple, I: int):
    """The 2x2 coefficient matrix as HRationals, row major."""
    tau = HRational.tau(n)
    bS = beta[SLASH[I]]
    bR = beta[MIXED_ROW[I]]
    return ((tau + bS, HRational.const(-(bR + 1))),
            (HRational.const(-bS), tau + (bR + 1)))


def _rhs(prev: ExplicitTable, n: int, alpha: tuple, beta: tuple, X: int, beta_prev: tuple) -> CoeffPoly:
    out = CoeffPoly.zero()
    if not mi_admissible(beta_prev):
        return out
    for D in range(4):
        if alpha[D] == 0:
            continue
        t = prev.get_T(n - 1, _shift(alpha, (D, -1)), beta_prev)
        if t:
            out.iadd(t.mul_symbol(sym(X, D)))
    return out


def oracle_entry(prev: ExplicitTable, n: int, alpha: tuple, beta: tuple) -> CoeffPoly:
    I = next(k for k in range(4) if beta[k] > 0)
    bR = beta[MIXED_ROW[I]]
    v1 = _rhs(prev, n, alpha, beta, I, _shift(beta, (I, -1)))
    v2 = _rhs(prev, n, alpha, beta, MIXED_COL[I],
              _shift(beta, (I, -1), (SLASH[I], -1), (MIXED_ROW[I], 1)))
    (m11, m12), (m21, m22) = system_matrix(n, beta, I)
    det = m11 * m22 - m12 * m21
    expected = HRational.tau(n) * (HRational.tau(n) + (beta[SLASH[I]] + bR + 1))
    assert det == expected, "determinant mismatch"
    inv = det.inverse()
    # first row of the adjugate: (m22, -m12)
    x1 = v1.scale(m22 * inv)
    if v2:
        x1.iadd(v2.scale(-m12 * inv))
    return x1.scale(HRational.const(1) / beta[I])


def oracle_T_linear_system(n_max: int) -> ExplicitTable:
    if n_max > MAX_N:
        raise BoundExceeded(f"n = {n_max} exceeds the desk bound {MAX_N}")
    table = ExplicitTable({(0, (0, 0, 0, 0), (0, 0, 0, 0)): CoeffPoly.one()}, n_max)
    for n in range(1, n_max + 1):
        for beta in mi_enumerate(n):
            for alpha in mi_enumerate(n):
                t = oracle_entry(table, n, alpha, beta)
                if t:
                    table.entries[(n, alpha, beta)] = t
    return table
