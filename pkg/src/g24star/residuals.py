"""Residuals LHS - RHS of the recurrence relations, as CoeffPolys.

A table is anything with ``get_T(n, alpha, beta)`` or a Mapping keyed by
(n, alpha, beta); missing or inadmissible entries count as zero.  Metric
symbols g_{Xbar D} use id ``X*N + D`` with N = pq, which agrees with the ring
ids for p = q = 2.
"""
from __future__ import annotations

from .exact_scalars import HBAR, HRational
from .geometry import curvature_constant
from .indices import CapIndex, MIXED_COL, MIXED_ROW, SLASH, code, from_psi, mi_admissible
from .ring import CoeffPoly


def _T(table, n, alpha, beta) -> CoeffPoly:
    if n < 0 or not (mi_admissible(alpha) and mi_admissible(beta)):
        return CoeffPoly.zero()
    if hasattr(table, "get_T"):
        return table.get_T(n, tuple(alpha), tuple(beta))
    return table.get((n, tuple(alpha), tuple(beta))) or CoeffPoly.zero()


def _shift(v, *pairs):
    out = list(v)
    for k, d in pairs:
        out[k] += d
    return tuple(out)


def _pos(I, p=2, q=2) -> int:
    if isinstance(I, CapIndex):
        return p * (I.i - 1) + I.ip - 1
    return int(I)


def lhs_sum(table, n: int, I: int, alpha, beta, N: int = 4) -> CoeffPoly:
    """hbar sum_D g_{Ibar D} T^{n-1}_{alpha-e_D, beta-e_I}."""
    out = CoeffPoly.zero()
    bp = _shift(beta, (I, -1))
    if not mi_admissible(bp):
        return out
    for D in range(N):
        t = _T(table, n - 1, _shift(alpha, (D, -1)), bp)
        if t:
            out.iadd(t.mul_symbol(I * N + D))
    return out.scale(HBAR)


def residual_cor32(n: int, I, alpha, beta, table) -> CoeffPoly:
    I = _pos(I)
    alpha, beta = tuple(alpha), tuple(beta)
    tau = HRational.tau(n)
    lhs = lhs_sum(table, n, I, alpha, beta)
    rhs = _T(table, n, alpha, beta).scale(HBAR * beta[I] * (tau + beta[SLASH[I]]))
    shifted = _shift(beta, (I, -1), (MIXED_ROW[I], 1), (MIXED_COL[I], 1), (SLASH[I], -1))
    c = (beta[MIXED_ROW[I]] + 1) * (beta[MIXED_COL[I]] + 1)
    rhs.iadd(_T(table, n, alpha, shifted).scale(HBAR * (-c)))
    return lhs - rhs


def residual_general_grassmann(p: int, q: int, n: int, I, alpha, beta, table) -> CoeffPoly:
    """Residual of the recurrence for G_{p,p+q}."""
    N = p * q
    I = _pos(I, p, q)
    i, ip = divmod(I, p)
    alpha, beta = tuple(alpha), tuple(beta)
    lhs = lhs_sum(table, n, I, alpha, beta, N)
    s = beta[I] + sum(beta[p * i + jp] for jp in range(p) if jp != ip) \
        + sum(beta[p * j + ip] for j in range(q) if j != i)
    coef = (HBAR * (1 - s) + 1) * beta[I]
    rhs = _T(table, n, alpha, beta).scale(coef)
    for j in range(q):
        if j == i:
            continue
        for jp in range(p):
            if jp == ip:
                continue
            J = p * j + jp
            a = p * i + jp
            b = p * j + ip
            shifted = _shift(beta, (J, -1), (a, 1), (b, 1), (I, -1))
            t = _T(table, n, alpha, shifted)
            if t:
                rhs.iadd(t.scale(HBAR * (-(beta[a] + 1) * (beta[b] + 1))))
    return lhs - rhs


def _binom2(x: int) -> int:
    return x * (x - 1) // 2


def residual_hs(p: int, q: int, n: int, I, alpha, beta, table) -> CoeffPoly:
    """Residual of the general locally symmetric recurrence with the constant Grassmannian curvature.

    The pair sum over (k, k+l) is read as a sum over unordered pairs K < K'
    in psi order, which is exactly the range of the double sum.
    """
    N = p * q
    I = _pos(I, p, q)
    alpha, beta = tuple(alpha), tuple(beta)
    idx = [from_psi(k + 1, p, q) for k in range(N)]
    R = lambda rho, k1, k2: curvature_constant(idx[rho], idx[k1], idx[k2], idx[I])
    lhs = lhs_sum(table, n, I, alpha, beta, N)
    rhs = _T(table, n, alpha, beta).scale(HRational.const(beta[I]))
    d = lambda a, b: int(a == b)
    for k in range(N):
        for rho in range(N):
            r = R(rho, k, k)
            if r == 0:
                continue
            c = _binom2(beta[k] - d(k, rho) - d(I, k) + 2) * r
            if c == 0:
                continue
            t = _T(table, n, alpha, _shift(beta, (rho, -1), (k, 2), (I, -1)))
            if t:
                rhs.iadd(t.scale(HBAR * c))
    for k in range(N - 1):
        for k2 in range(k + 1, N):
            for rho in range(N):
                r = R(rho, k2, k)
                if r == 0:
                    continue
                c = (beta[k] - d(k, rho) - d(I, k) + 1) * (beta[k2] - d(k2, rho) - d(I, k2) + 1) * r
                if c == 0:
                    continue
                t = _T(table, n, alpha, _shift(beta, (rho, -1), (k, 1), (k2, 1), (I, -1)))
                if t:
                    rhs.iadd(t.scale(HBAR * c))
    return lhs - rhs


def denominator_identity(n: int, beta) -> bool:
    """sum_J beta_J (tau + beta_{\\J} + beta_{j\\j'} + 1) = n(tau+1) + 2(b11'+b21')(b22'+b12'), tau symbolic."""
    tau = HRational.tau(n)
    lhs = HRational.const(0)
    for J in range(4):
        lhs = lhs + (tau + (beta[SLASH[J]] + beta[MIXED_ROW[J]] + 1)) * beta[J]
    rhs = (tau + 1) * n + 2 * (beta[0] + beta[2]) * (beta[3] + beta[1])
    return lhs == rhs


__all__ = ["residual_cor32", "residual_general_grassmann", "residual_hs", "denominator_identity", "lhs_sum", "code"]
