"""Exact scalars: rationals, Gaussian rationals and rational functions of hbar.

``Rational`` is ``gmpy2.mpq``.  ``HRational`` is an element of Q(hbar) kept
in lowest terms with a monic denominator, so two values are equal exactly
when their stored coefficient tuples are equal.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DivisionByZero, NegativeValuation, PoleAtValue

Rational = type(mpq(0))

_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(x) -> Rational:
    """Coerce int, str ("3/4", "-2", "0.25"), Fraction or mpq to an mpq."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "." in s and "/" not in s:
            return to_rational(Fraction(s))
        return mpq(s)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return mpq(x)


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(x, 0)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n2 = o.re * o.re + o.im * o.im
        if n2 == 0:
            raise DivisionByZero("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n2,
                                (self.im * o.re - self.re * o.im) / n2)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, ascending coefficient tuples

def _trim(c: Sequence[Rational]) -> tuple:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def _pscale(a: tuple, s: Rational) -> tuple:
    if s == 0:
        return ()
    return tuple(x * s for x in a)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0])
    if len(b) == 1:
        return _pscale(a, b[0])
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    lead = b[-1]
    db = len(b) - 1
    quot = [_ZERO] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = c / lead
        quot[k - db] = c
        for j in range(db + 1):
            rem[k - db + j] -= c * b[j]
    return _trim(quot), _trim(rem[:db])


def _pmonic(a: tuple) -> tuple:
    if not a or a[-1] == 1:
        return a
    inv = 1 / a[-1]
    return tuple(x * inv for x in a)


def poly_gcd(a: Sequence, b: Sequence) -> tuple:
    """Monic gcd of two polynomials given as ascending coefficient sequences."""
    a = _pmonic(_trim(tuple(to_rational(x) for x in a)))
    b = _pmonic(_trim(tuple(to_rational(x) for x in b)))
    return _pgcd(a, b)


def _pgcd(a: tuple, b: tuple) -> tuple:
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, _pmonic(r)
    return _pmonic(a)


def _peval(a: tuple, x: Rational) -> Rational:
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _valuation(a: tuple) -> int:
    for i, x in enumerate(a):
        if x != 0:
            return i
    raise ValueError("valuation of the zero polynomial")


class HRational:
    """Rational function num(hbar)/den(hbar) over Q in canonical form.

    ``num`` and ``den`` are ascending coefficient tuples of mpq.  The pair is
    coprime, ``den`` is monic, and zero is stored as ``((), (1,))``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable = (), den: Iterable = (1,), _canonical: bool = False):
        if _canonical:
            self.num = num
            self.den = den
        else:
            n = _trim(tuple(to_rational(x) for x in num))
            d = _trim(tuple(to_rational(x) for x in den))
            if not d:
                raise DivisionByZero("zero denominator")
            self.num, self.den = _canonical_pair(n, d)
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "HRational":
        c = to_rational(c)
        return cls((c,) if c != 0 else (), (_ONE,), _canonical=True)

    @classmethod
    def hbar(cls) -> "HRational":
        return cls((_ZERO, _ONE), (_ONE,), _canonical=True)

    @classmethod
    def tau(cls, n: int) -> "HRational":
        """tau_n = 1 - n + 1/hbar, stored as (1 + (1 - n) hbar) / hbar."""
        return cls((_ONE, mpq(1 - n)), (_ZERO, _ONE))

    @classmethod
    def linear_in_inverse_hbar(cls, a, b) -> "HRational":
        """a/hbar + b, i.e. (a + b hbar)/hbar."""
        return cls((to_rational(a), to_rational(b)), (_ZERO, _ONE))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "HRational":
        if isinstance(other, HRational):
            return other
        return HRational.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if len(self.den) == 1:
                return HRational(_padd(self.num, o.num), self.den, _canonical=True) \
                    if _padd(self.num, o.num) else ZERO
            return _make(_padd(self.num, o.num), self.den)
        n = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return _make(n, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return HRational(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.num or not o.num:
            return ZERO
        if len(self.den) == 1 and len(o.den) == 1:
            return HRational(_pmul(self.num, o.num), (_ONE,), _canonical=True)
        # cross-cancel before multiplying
        g1 = _pgcd(_pmonic(self.num), o.den) if len(o.den) > 1 else (_ONE,)
        g2 = _pgcd(_pmonic(o.num), self.den) if len(self.den) > 1 else (_ONE,)
        n1 = _pdivmod(self.num, g1)[0] if len(g1) > 1 else self.num
        d2 = _pdivmod(o.den, g1)[0] if len(g1) > 1 else o.den
        n2 = _pdivmod(o.num, g2)[0] if len(g2) > 1 else o.num
        d1 = _pdivmod(self.den, g2)[0] if len(g2) > 1 else self.den
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pmonic(den)
        return HRational(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "HRational":
        if not self.num:
            raise DivisionByZero("inverse of zero rational function")
        lead = self.num[-1]
        return HRational(_pscale(self.den, 1 / lead), _pmonic(self.num), _canonical=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, HRational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational, Fraction)):
            return self == HRational.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- evaluation -------------------------------------------------------
    def eval(self, h) -> Rational:
        h = to_rational(h)
        d = _peval(self.den, h)
        if d == 0:
            raise PoleAtValue(f"pole of {self} at hbar = {h}")
        return _peval(self.num, h) / d

    def valuation(self) -> int:
        """Order of vanishing at hbar = 0 (negative for a pole)."""
        if not self.num:
            raise ValueError("valuation of zero")
        return _valuation(self.num) - _valuation(self.den)

    def series(self, order: int) -> list[Rational]:
        """Taylor coefficients c_0..c_order at hbar = 0."""
        if not self.num:
            return [_ZERO] * (order + 1)
        v = self.valuation()
        if v < 0:
            raise NegativeValuation(f"{self} has a pole of order {-v} at hbar = 0")
        vd = _valuation(self.den)
        num = self.num[vd:] if vd else self.num
        den = self.den[vd:] if vd else self.den
        # num/den with den(0) != 0; power-series long division
        out = [_ZERO] * (order + 1)
        d0inv = 1 / den[0]
        rem = list(num) + [_ZERO] * max(0, order + 1 - len(num))
        for k in range(order + 1):
            c = rem[k] * d0inv
            out[k] = c
            if c == 0:
                continue
            for j in range(1, len(den)):
                if k + j <= order:
                    rem[k + j] -= c * den[j]
        return out

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num] or ["0"],
                "den": [str(c) for c in self.den]}

    @classmethod
    def from_json(cls, obj: dict) -> "HRational":
        return cls([to_rational(c) for c in obj["num"]], [to_rational(c) for c in obj["den"]])

    def __repr__(self):
        return f"HRational({self})"

    def __str__(self):
        n = _poly_str(self.num)
        if len(self.den) == 1:
            return n
        return f"({n})/({_poly_str(self.den)})"


def _poly_str(c: tuple, var: str = "h") -> str:
    if not c:
        return "0"
    parts = []
    for k, x in enumerate(c):
        if x == 0:
            continue
        if k == 0:
            parts.append(str(x))
        else:
            mon = var if k == 1 else f"{var}^{k}"
            parts.append(mon if x == 1 else f"-{mon}" if x == -1 else f"{x}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


def _canonical_pair(n: tuple, d: tuple) -> tuple[tuple, tuple]:
    if not n:
        return (), (_ONE,)
    if len(d) > 1:
        g = _pgcd(_pmonic(n), _pmonic(d))
        if len(g) > 1:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
    lead = d[-1]
    if lead != 1:
        inv = 1 / lead
        n = tuple(x * inv for x in n)
        d = tuple(x * inv for x in d)
    return n, d


def _make(n: tuple, d: tuple) -> HRational:
    n, d = _canonical_pair(n, d)
    return HRational(n, d, _canonical=True)


ZERO = HRational((), (_ONE,), _canonical=True)
ONE = HRational((_ONE,), (_ONE,), _canonical=True)
HBAR = HRational.hbar()


def hr_arith(a: HRational, b: HRational, op: str) -> HRational:
    """Binary arithmetic by name: add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def hr_eval(a: HRational, h) -> Rational:
    return a.eval(h)


def hr_series_at_zero(a: HRational, order: int) -> list[Rational]:
    return a.series(order)
