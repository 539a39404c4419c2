"""Capital-letter indices I = ii' and multi-index arithmetic.

A capital index is stored with 1-based components ``i`` (1..q) and ``ip``
(1..p).  For p = q = 2 the four indices 11', 12', 21', 22' are also addressed
by the 0-based position ``psi(I) - 1``; most of the coefficient code works
with those small integers directly.

Multi-indices are plain tuples of ints ordered by psi.  Negative entries are
allowed and mean "this coefficient is zero".
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadIndex, UnsupportedShape

MultiIndex = tuple


@dataclass(frozen=True, order=True)
class CapIndex:
    i: int
    ip: int

    def __str__(self):
        return f"{self.i}{self.ip}'"

    def __repr__(self):
        return f"CapIndex({self})"

    @classmethod
    def parse(cls, text: str) -> "CapIndex":
        """Parse ``"12'"`` (the trailing prime is optional)."""
        m = re.fullmatch(r"\s*(\d)(\d)'?\s*", text)
        if not m:
            raise BadIndex(f"cannot parse capital index {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


def all_indices(p: int = 2, q: int = 2) -> list[CapIndex]:
    """The index set in psi order."""
    return [CapIndex(i, ip) for i in range(1, q + 1) for ip in range(1, p + 1)]


def psi(I: CapIndex, p: int = 2, q: int = 2) -> int:
    if not (1 <= I.i <= q and 1 <= I.ip <= p):
        raise BadIndex(f"{I} out of range for p={p}, q={q}")
    return p * (I.i - 1) + I.ip


def from_psi(k: int, p: int = 2, q: int = 2) -> CapIndex:
    if not 1 <= k <= p * q:
        raise BadIndex(f"psi value {k} out of range 1..{p * q}")
    return CapIndex((k - 1) // p + 1, (k - 1) % p + 1)


def _check22(p: int, q: int):
    if p != 2 or q != 2:
        raise UnsupportedShape("slash operations are only defined for p = q = 2")


def slash(I: CapIndex, p: int = 2, q: int = 2) -> CapIndex:
    _check22(p, q)
    return CapIndex(3 - I.i, 3 - I.ip)


def mixed_row(I: CapIndex, p: int = 2, q: int = 2) -> CapIndex:
    """i\\i': keep i, flip the primed component."""
    _check22(p, q)
    return CapIndex(I.i, 3 - I.ip)


def mixed_col(I: CapIndex, p: int = 2, q: int = 2) -> CapIndex:
    """\\i i': flip i, keep the primed component."""
    _check22(p, q)
    return CapIndex(3 - I.i, I.ip)


# 0-based codes for p = q = 2: code = 2*(i-1) + (i'-1)
INDICES = tuple(all_indices())
NAMES = tuple(str(I) for I in INDICES)


def code(I: CapIndex) -> int:
    return psi(I) - 1


def row(c: int) -> int:
    """0-based unprimed component."""
    return c >> 1


def col(c: int) -> int:
    """0-based primed component."""
    return c & 1


def mk(i: int, ip: int) -> int:
    """Code from 0-based components."""
    return 2 * i + ip


SLASH = tuple(c ^ 3 for c in range(4))
MIXED_ROW = tuple(c ^ 1 for c in range(4))
MIXED_COL = tuple(c ^ 2 for c in range(4))


def mi_weight(alpha) -> int:
    return sum(alpha)


def mi_shift(alpha, I, delta: int = 1, p: int = 2, q: int = 2) -> tuple:
    k = psi(I, p, q) - 1 if isinstance(I, CapIndex) else I
    out = list(alpha)
    out[k] += delta
    return tuple(out)


def mi_admissible(alpha) -> bool:
    return all(a >= 0 for a in alpha)


def unit(k: int, length: int = 4) -> tuple:
    out = [0] * length
    out[k] = 1
    return tuple(out)


@lru_cache(maxsize=None)
def mi_enumerate(n: int, length: int = 4) -> tuple:
    """All nonnegative vectors of the given length and weight n, lexicographically descending."""
    out = []
    for bars in itertools.combinations(range(n + length - 1), length - 1):
        prev = -1
        v = []
        for b in bars:
            v.append(b - prev - 1)
            prev = b
        v.append(n + length - 2 - prev)
        out.append(tuple(v))
    out.sort(reverse=True)
    return tuple(out)


def format_mi(alpha) -> str:
    return "(" + ",".join(str(a) for a in alpha) + ")"
