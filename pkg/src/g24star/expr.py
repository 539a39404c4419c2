"""Rational expressions in the chart variables z^I and zbar^I.

Nodes are immutable and hash-consed, so structurally equal subexpressions are
shared and derivative memos are reused across the whole session.  There is no
simplification beyond constant folding and dropping zeros and ones; whether
two expressions are equal is decided by evaluating them at points.
"""
from __future__ import annotations

import sys

from gmpy2 import mpq

from .errors import EvalSingular
from .exact_scalars import GaussianRational, to_rational

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_Q0 = mpq(0)
_Q1 = mpq(1)

CONST, VAR, ADD, MUL, POW, DIV = range(6)

_table: dict = {}


class Expr:
    __slots__ = ("op", "args", "data", "deps", "_hash", "_d", "__weakref__")

    def __new__(cls, op, args=(), data=None):
        key = (op, args, data)
        node = _table.get(key)
        if node is not None:
            return node
        node = object.__new__(cls)
        node.op = op
        node.args = args
        node.data = data
        node._hash = hash(key)
        node._d = {}
        if op == VAR:
            node.deps = frozenset((data,))
        elif op == CONST:
            node.deps = frozenset()
        else:
            deps = frozenset()
            for a in args:
                deps |= a.deps
            node.deps = deps
        _table[key] = node
        return node

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __reduce__(self):
        return (Expr, (self.op, self.args, self.data))

    # -- operator sugar -----------------------------------------------------
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __pow__(self, k):
        return power(self, k)

    # -- queries ------------------------------------------------------------
    def is_const(self) -> bool:
        return self.op == CONST

    def is_zero(self) -> bool:
        return self is ZERO

    def is_holomorphic(self) -> bool:
        return all(v[0] == "z" for v in self.deps)

    def is_antiholomorphic(self) -> bool:
        return all(v[0] == "zb" for v in self.deps)

    def size(self) -> int:
        """Number of distinct DAG nodes."""
        seen = set()
        stack = [self]
        while stack:
            e = stack.pop()
            if id(e) in seen:
                continue
            seen.add(id(e))
            stack.extend(e.args)
        return len(seen)

    def __repr__(self):
        return f"Expr({to_string(self)})"

    def __str__(self):
        return to_string(self)


def const(c) -> Expr:
    if isinstance(c, Expr):
        return c
    if isinstance(c, GaussianRational):
        return Expr(CONST, (), (c.re, c.im))
    if isinstance(c, tuple):
        return Expr(CONST, (), (to_rational(c[0]), to_rational(c[1])))
    return Expr(CONST, (), (to_rational(c), _Q0))


def as_expr(x) -> Expr:
    return x if isinstance(x, Expr) else const(x)


ZERO = const(0)
ONE = const(1)
MINUS_ONE = const(-1)


def var(kind: str, k: int) -> Expr:
    """Chart variable; ``kind`` is "z" or "zb" and ``k`` the 0-based psi position."""
    if kind not in ("z", "zb"):
        raise ValueError(kind)
    return Expr(VAR, (), (kind, k))


def z(k: int) -> Expr:
    return var("z", k)


def zb(k: int) -> Expr:
    return var("zb", k)


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def add(*terms: Expr) -> Expr:
    flat = []
    cre, cim = _Q0, _Q0
    for t in terms:
        if t.op == ADD:
            items = t.args
        else:
            items = (t,)
        for s in items:
            if s.op == CONST:
                cre += s.data[0]
                cim += s.data[1]
            else:
                flat.append(s)
    if cre != 0 or cim != 0:
        flat.append(Expr(CONST, (), (cre, cim)))
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Expr(ADD, tuple(flat))


def sum_exprs(items) -> Expr:
    return add(*items)


def mul(*factors: Expr) -> Expr:
    flat = []
    c = (_Q1, _Q0)
    for t in factors:
        items = t.args if t.op == MUL else (t,)
        for s in items:
            if s.op == CONST:
                if s.data[0] == 0 and s.data[1] == 0:
                    return ZERO
                c = _cmul(c, s.data)
            else:
                flat.append(s)
    if c != (_Q1, _Q0):
        flat.insert(0, Expr(CONST, (), c))
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return Expr(MUL, tuple(flat))


def neg(e: Expr) -> Expr:
    return mul(MINUS_ONE, e)


def power(e: Expr, k: int) -> Expr:
    k = int(k)
    if k == 0:
        return ONE
    if k < 0:
        return div(ONE, power(e, -k))
    if k == 1 or e is ONE:
        return e
    if e is ZERO:
        return ZERO
    if e.op == CONST:
        r = (_Q1, _Q0)
        for _ in range(k):
            r = _cmul(r, e.data)
        return Expr(CONST, (), r)
    return Expr(POW, (e,), k)


def div(n: Expr, d: Expr) -> Expr:
    if d is ZERO:
        raise EvalSingular("syntactic division by zero")
    if n is ZERO:
        return ZERO
    if d is ONE:
        return n
    if d.op == CONST:
        re, im = d.data
        n2 = re * re + im * im
        return mul(Expr(CONST, (), (re / n2, -im / n2)), n)
    return Expr(DIV, (n, d))


# ---------------------------------------------------------------------------
# differentiation

def diff(e: Expr, v) -> Expr:
    """Wirtinger derivative with respect to variable key ``v`` = ("z"|"zb", k)."""
    if v not in e.deps:
        return ZERO
    r = e._d.get(v)
    if r is not None:
        return r
    op = e.op
    if op == VAR:
        r = ONE
    elif op == ADD:
        r = add(*[diff(a, v) for a in e.args])
    elif op == MUL:
        terms = []
        args = e.args
        for i, a in enumerate(args):
            da = diff(a, v)
            if da is ZERO:
                continue
            terms.append(mul(*args[:i], da, *args[i + 1:]))
        r = add(*terms)
    elif op == POW:
        b = e.args[0]
        k = e.data
        r = mul(const(k), power(b, k - 1), diff(b, v))
    elif op == DIV:
        n, d = e.args
        dn = diff(n, v)
        dd = diff(d, v)
        if dd is ZERO:
            r = div(dn, d)
        else:
            r = div(add(dn, neg(mul(e, dd))), d)
    else:  # pragma: no cover
        raise AssertionError(op)
    e._d[v] = r
    return r


def wirtinger_d(e: Expr, v) -> Expr:
    """``v`` may be a variable Expr or a key tuple."""
    if isinstance(v, Expr):
        v = v.data
    return diff(e, v)


# ---------------------------------------------------------------------------
# evaluation

def _topo(roots):
    order = []
    seen = set()
    for root in roots:
        if id(root) in seen:
            continue
        stack = [(root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for a in node.args:
                if id(a) not in seen:
                    stack.append((a, False))
    return order


class Evaluator:
    """Evaluates many expressions at one point, sharing a cache.

    ``point`` maps a 0-based psi position to the value of z^I (GaussianRational
    or anything coercible); zbar^I is its complex conjugate.  In exact mode
    values are (re, im) pairs of mpq; in float mode they are Python complex.
    """

    def __init__(self, point, mode: str = "exact"):
        self.mode = mode
        self.cache: dict = {}
        self.vals = {}
        for k, val in point.items():
            g = GaussianRational.coerce(val) if not isinstance(val, GaussianRational) else val
            if mode == "exact":
                self.vals[("z", k)] = (g.re, g.im)
                self.vals[("zb", k)] = (g.re, -g.im)
            else:
                c = complex(g)
                self.vals[("z", k)] = c
                self.vals[("zb", k)] = c.conjugate()

    def _var(self, key):
        try:
            return self.vals[key]
        except KeyError:
            return (_Q0, _Q0) if self.mode == "exact" else 0j

    def raw(self, e: Expr):
        cache = self.cache
        r = cache.get(e)
        if r is not None:
            return r
        exact = self.mode == "exact"
        for node in _topo([e]):
            if node in cache:
                continue
            op = node.op
            if op == CONST:
                val = node.data if exact else complex(float(node.data[0]), float(node.data[1]))
            elif op == VAR:
                val = self._var(node.data)
            elif exact:
                val = _exact_op(node, cache)
            else:
                val = _float_op(node, cache)
            cache[node] = val
        return cache[e]

    def __call__(self, e: Expr):
        r = self.raw(e)
        if self.mode == "exact":
            return GaussianRational(r[0], r[1])
        return r


def _exact_op(node, cache):
    op = node.op
    if op == ADD:
        re, im = _Q0, _Q0
        for a in node.args:
            x = cache[a]
            re += x[0]
            im += x[1]
        return (re, im)
    if op == MUL:
        it = iter(node.args)
        re, im = cache[next(it)]
        for a in it:
            x = cache[a]
            re, im = re * x[0] - im * x[1], re * x[1] + im * x[0]
        return (re, im)
    if op == POW:
        b = cache[node.args[0]]
        re, im = _Q1, _Q0
        k = node.data
        br, bi = b
        while k:
            if k & 1:
                re, im = re * br - im * bi, re * bi + im * br
            br, bi = br * br - bi * bi, 2 * br * bi
            k >>= 1
        return (re, im)
    if op == DIV:
        n = cache[node.args[0]]
        d = cache[node.args[1]]
        n2 = d[0] * d[0] + d[1] * d[1]
        if n2 == 0:
            raise EvalSingular("denominator vanishes at the evaluation point")
        return ((n[0] * d[0] + n[1] * d[1]) / n2, (n[1] * d[0] - n[0] * d[1]) / n2)
    raise AssertionError(op)  # pragma: no cover


def _float_op(node, cache):
    op = node.op
    if op == ADD:
        s = 0j
        for a in node.args:
            s += cache[a]
        return s
    if op == MUL:
        s = 1 + 0j
        for a in node.args:
            s *= cache[a]
        return s
    if op == POW:
        return cache[node.args[0]] ** node.data
    if op == DIV:
        d = cache[node.args[1]]
        if d == 0:
            raise EvalSingular("denominator vanishes at the evaluation point")
        return cache[node.args[0]] / d
    raise AssertionError(op)  # pragma: no cover


def eval_expr(e: Expr, point, mode: str = "exact"):
    """Evaluate at ``point`` (map psi position -> value of z)."""
    return Evaluator(point, mode)(e)


# ---------------------------------------------------------------------------
# printing

def var_name(key, p: int = 2) -> str:
    kind, k = key
    return f"{kind}[{k // p + 1},{k % p + 1}]"


def _const_str(c):
    re, im = c
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}i"
    return f"({re}{'+' if im > 0 else '-'}{abs(im)}i)"


def to_string(e: Expr, p: int = 2) -> str:
    """Printable form in the input language (may be long for derived nodes)."""
    memo = {}

    def go(n):
        s = memo.get(n)
        if s is not None:
            return s
        op = n.op
        if op == CONST:
            s = _const_str(n.data)
        elif op == VAR:
            s = var_name(n.data, p)
        elif op == ADD:
            s = "(" + " + ".join(go(a) for a in n.args) + ")"
        elif op == MUL:
            s = "*".join(go(a) for a in n.args)
        elif op == POW:
            s = f"({go(n.args[0])})^{n.data}"
        else:
            s = f"({go(n.args[0])})/({go(n.args[1])})"
        memo[n] = s
        return s

    return go(e)
