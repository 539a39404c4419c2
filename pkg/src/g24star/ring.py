"""Polynomials in the 16 metric symbols g_{Xbar D} with HRational coefficients.

A symbol g_{Xbar D} has id ``4*X + D`` (0-based index codes).  A monomial is
the sorted tuple of symbol ids with repetition, which is the same data as an
exponent vector over the 16 symbols but hashes faster.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
import re

from .errors import BadIndex
from .exact_scalars import HRational, ONE as H_ONE, to_rational
from .indices import NAMES, CapIndex, code

N_SYMBOLS = 16


@dataclass(frozen=True)
class MetricSymbol:
    """g_{Xbar D}: ``barred`` is X, ``unbarred`` is D (0-based codes)."""

    barred: int
    unbarred: int

    @property
    def id(self) -> int:
        return 4 * self.barred + self.unbarred

    @classmethod
    def from_id(cls, s: int) -> "MetricSymbol":
        return cls(s // 4, s % 4)

    @classmethod
    def of(cls, X, D) -> "MetricSymbol":
        X = code(X) if isinstance(X, CapIndex) else X
        D = code(D) if isinstance(D, CapIndex) else D
        return cls(X, D)

    def __str__(self):
        return f"g[{NAMES[self.barred]},{NAMES[self.unbarred]}]"


def sym(X: int, D: int) -> int:
    return 4 * X + D


def symbol_name(s: int) -> str:
    return str(MetricSymbol.from_id(s))


_SYM_RE = re.compile(r"g\[(\d\d)'?,(\d\d)'?\]")


def parse_symbol(text: str) -> int:
    m = _SYM_RE.fullmatch(text.strip())
    if not m:
        raise BadIndex(f"bad metric symbol {text!r}")
    X = code(CapIndex.parse(m.group(1)))
    D = code(CapIndex.parse(m.group(2)))
    return sym(X, D)


def mono_to_exponents(mono: tuple) -> tuple:
    v = [0] * N_SYMBOLS
    for s in mono:
        v[s] += 1
    return tuple(v)


def exponents_to_mono(exps) -> tuple:
    out = []
    for s, e in enumerate(exps):
        out.extend([s] * e)
    return tuple(out)


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


class CoeffPoly:
    """Sparse map monomial -> HRational with no stored zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(c, HRational):
                    c = HRational.const(c)
                if not c.is_zero():
                    self.terms[tuple(sorted(m))] = c

    @classmethod
    def _raw(cls, terms: dict) -> "CoeffPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "CoeffPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "CoeffPoly":
        return cls._raw({(): H_ONE})

    @classmethod
    def symbol(cls, X: int, D: int, coeff: HRational = H_ONE) -> "CoeffPoly":
        return cls._raw({(sym(X, D),): coeff}) if not coeff.is_zero() else cls.zero()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set:
        return {len(m) for m in self.terms}

    def copy(self) -> "CoeffPoly":
        return CoeffPoly._raw(dict(self.terms))

    # in-place accumulate; used by table builders
    def iadd_term(self, mono: tuple, c: HRational):
        t = self.terms
        old = t.get(mono)
        if old is None:
            if not c.is_zero():
                t[mono] = c
        else:
            s = old + c
            if s.is_zero():
                del t[mono]
            else:
                t[mono] = s

    def iadd(self, other: "CoeffPoly", scale: HRational | None = None):
        for m, c in other.terms.items():
            self.iadd_term(m, c if scale is None else c * scale)
        return self

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        return self.copy().iadd(other)

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CoeffPoly") -> "CoeffPoly":
        return self.copy().iadd(-other)

    def scale(self, h) -> "CoeffPoly":
        if not isinstance(h, HRational):
            h = HRational.const(h)
        if h.is_zero():
            return CoeffPoly.zero()
        return CoeffPoly._raw({m: c * h for m, c in self.terms.items()})

    def mul_symbol(self, s: int) -> "CoeffPoly":
        return CoeffPoly._raw({mono_mul(m, (s,)): c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CoeffPoly):
            return self.scale(other)
        out = CoeffPoly.zero()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out.iadd_term(mono_mul(m1, m2), c1 * c2)
        return out

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"CoeffPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            exps = defaultdict(int)
            for s in m:
                exps[s] += 1
            mono = "*".join(symbol_name(s) + (f"^{e}" if e > 1 else "") for s, e in sorted(exps.items()))
            parts.append(f"[{c}]" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> list:
        out = []
        for m in sorted(self.terms):
            exps = defaultdict(int)
            for s in m:
                exps[s] += 1
            out.append({"mono": {symbol_name(s): e for s, e in sorted(exps.items())},
                        "hbar": self.terms[m].to_json()})
        return out

    @classmethod
    def from_json(cls, terms: list) -> "CoeffPoly":
        out = cls.zero()
        for t in terms:
            mono = []
            for name, e in t["mono"].items():
                mono.extend([parse_symbol(name)] * int(e))
            out.iadd_term(tuple(sorted(mono)), HRational.from_json(t["hbar"]))
        return out


# ---------------------------------------------------------------------------
# expansion of products of the linear forms L_X = sum_D g_{Xbar D} t_D

@lru_cache(maxsize=None)
def _compositions(total: int, alpha_rem: tuple):
    """Vectors c over D with sum(c) = total and c <= alpha_rem, with multinomial total!/prod c!."""
    out = []

    def go(k, left, cur):
        if k == 3:
            if left <= alpha_rem[3]:
                c = cur + (left,)
                w = factorial(total)
                for x in c:
                    w //= factorial(x)
                out.append((c, w))
            return
        for x in range(min(left, alpha_rem[k]) + 1):
            go(k + 1, left - x, cur + (x,))

    go(0, total, ())
    return tuple(out)


@lru_cache(maxsize=None)
def linear_form_coefficient(gamma: tuple, alpha: tuple) -> tuple:
    """Coefficient of t^alpha in prod_X L_X^{gamma_X}: tuple of (monomial, integer)."""
    if sum(gamma) != sum(alpha):
        return ()
    out = defaultdict(int)

    def go(X, rem, mono, weight):
        if X == 4:
            if not any(rem):
                out[mono] += weight
            return
        for c, w in _compositions(gamma[X], rem):
            new_rem = tuple(r - x for r, x in zip(rem, c))
            m = mono
            for D, x in enumerate(c):
                m = m + (sym(X, D),) * x
            go(X + 1, new_rem, m, weight * w)

    go(0, tuple(alpha), (), 1)
    return tuple((tuple(sorted(m)), w) for m, w in out.items())


def expand_generating(gen: dict, alpha: tuple) -> CoeffPoly:
    """Turn sum_gamma c_gamma L^gamma into the coefficient of t^alpha."""
    out = CoeffPoly.zero()
    for gamma, c in gen.items():
        for mono, w in linear_form_coefficient(gamma, alpha):
            out.iadd_term(mono, c * w if w != 1 else c)
    return out


def hr(x) -> HRational:
    return x if isinstance(x, HRational) else HRational.const(to_rational(x))
