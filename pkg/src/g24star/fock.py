"""Fock-space realization of the coefficient operators T_n.

Kets |m> are occupation tuples over the four modes.  Only the normalized
composites a_I / sqrt(N_I) and a_I^dagger / sqrt(N_I + 1) are provided; they move
a ket by one unit without any scalar, so everything stays rational.

T_n = sum over (J_l, k_l, D_l) of
      a^dagger_{D_n} ... a^dagger_{D_1} |0><0| B_1 ... B_n,
      B_l = A_{J_l,k_l} (tau_l delta_{j_l k_l} + N_{j_l\\j_l'} + 1) g_{(k_l j_l')bar, D_l}
            / (tau_l {l(tau_l+1) + 2(N_I + N_{\\ii'})(N_{\\I} + N_{i\\i'})}),
      A_{J,k} = a_J/sqrt(N_J) (a_{\\J}/sqrt(N_{\\J}) a^dagger_{j\\j'}/sqrt(N_{j\\j'}+1))^{delta_{\\j,k}}.

The number-operator factor of B_l sits to the right of A_{J_l,k_l}, so it is
evaluated on the ket before that ladder step.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

from .errors import BadWeight, BoundExceeded
from .exact_scalars import HRational, ONE as H_ONE
from .indices import MIXED_COL, MIXED_ROW, SLASH, col, mi_admissible, mi_enumerate, mk, row
from .recurrence import MAX_N
from .ring import CoeffPoly, sym

Ket = tuple
VACUUM: Ket = (0, 0, 0, 0)


def ladder_down(I: int) -> Callable[[Ket], Optional[Ket]]:
    """a_I / sqrt(N_I): |m> -> |m - e_I>, or None (the zero vector) if m_I = 0."""
    def act(ket: Ket) -> Optional[Ket]:
        if ket is None or ket[I] == 0:
            return None
        out = list(ket)
        out[I] -= 1
        return tuple(out)
    return act


def ladder_up(I: int) -> Callable[[Ket], Optional[Ket]]:
    """a_I^dagger / sqrt(N_I + 1): |m> -> |m + e_I>."""
    def act(ket: Ket) -> Optional[Ket]:
        if ket is None:
            return None
        out = list(ket)
        out[I] += 1
        return tuple(out)
    return act


def number_weight(f: Callable[[Ket], object], ket: Ket):
    """Value of f(N) on the ket |m>, i.e. f(m)."""
    return f(ket)


def composite_A(J: int, k0: int) -> Callable[[Ket], Optional[Ket]]:
    """A_{J,k} with k0 the 0-based k; the rightmost factor acts first."""
    down_J = ladder_down(J)
    if k0 == row(J):
        return down_J
    up = ladder_up(MIXED_ROW[J])
    down_S = ladder_down(SLASH[J])
    return lambda ket: down_J(down_S(up(ket)))


def _b_scalar(l: int, J: int, k0: int, ket: Ket, I: int) -> HRational:
    tau = HRational.tau(l)
    num = tau * int(k0 == row(J)) + (ket[MIXED_ROW[J]] + 1)
    e = 2 * (ket[I] + ket[MIXED_COL[I]]) * (ket[SLASH[I]] + ket[MIXED_ROW[I]])
    return num / (tau * (tau * l + (l + e)))


@dataclass
class FockOperator:
    """Sparse matrix (out ket, in ket) -> CoeffPoly for one order n."""

    n: int
    entries: dict = field(default_factory=dict)

    def apply(self, ket: Ket) -> dict:
        """T|ket> as a map out-ket -> CoeffPoly."""
        return {a: c for (a, b), c in self.entries.items() if b == ket}


def _x_sequences(n: int, beta: Ket, I: int) -> dict:
    """Run the B chain on |beta>; returns X-sequence -> summed scalar over paths ending at the vacuum."""
    acc: dict = defaultdict(lambda: HRational.const(0))

    def go(l, ket, xs, scalar):
        if l == 0:
            if ket == VACUUM:  # the <0| projection
                acc[xs] = acc[xs] + scalar
            return
        for J in range(4):
            for k0 in range(2):
                nxt = composite_A(J, k0)(ket)
                if nxt is None:
                    continue
                s = _b_scalar(l, J, k0, ket, I)
                go(l - 1, nxt, (mk(k0, col(J)),) + xs, scalar * s)

    go(n, tuple(beta), (), H_ONE)
    return acc


def build_T_n(n: int, I: int = 0) -> FockOperator:
    """Assemble T_n on all kets of weight n."""
    if n > MAX_N:
        raise BoundExceeded(f"n = {n} exceeds the desk bound {MAX_N}")
    op = FockOperator(n)
    if n == 0:
        op.entries[(VACUUM, VACUUM)] = CoeffPoly.one()
        return op
    ups = [ladder_up(D) for D in range(4)]
    for beta in mi_enumerate(n):
        xseqs = _x_sequences(n, beta, I)
        for xs, scalar in xseqs.items():
            if scalar.is_zero():
                continue
            # creation chain a^dagger_{D_n} ... a^dagger_{D_1} |0>, step l pairs X_l with D_l
            for Ds in product(range(4), repeat=n):
                ket = VACUUM
                for D in Ds:
                    ket = ups[D](ket)
                mono = tuple(sorted(sym(xs[l], Ds[l]) for l in range(n)))
                key = (ket, beta)
                entry = op.entries.get(key)
                if entry is None:
                    entry = op.entries[key] = CoeffPoly.zero()
                entry.iadd_term(mono, scalar)
    op.entries = {k: v for k, v in op.entries.items() if v}
    return op


def matrix_element(T: FockOperator, alpha, beta) -> CoeffPoly:
    """<alpha| T_n |beta*>."""
    alpha, beta = tuple(alpha), tuple(beta)
    if not (mi_admissible(alpha) and mi_admissible(beta)):
        return CoeffPoly.zero()
    if sum(alpha) != sum(beta) or sum(alpha) != T.n:
        raise BadWeight(f"weights of {alpha}, {beta} do not match order {T.n}")
    return T.entries.get((alpha, beta)) or CoeffPoly.zero()
