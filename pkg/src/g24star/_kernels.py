"""Integer kernels for enumerating (J, k) step sequences.

Each of the 8^n sequences is decoded from its base-8 index, the theta test on
prefix sums is applied, and for surviving sequences the integer data that
determines the closed-form scalar is written out:

    delta_l = [j_l == k_l]
    c_l     = beta_{j_l\\j_l'} + 1 - Lambda_l
    e_l     = 2 (beta_I + beta_{\\ii'} - Delta_l)(beta_{\\I} + beta_{i\\i'} - Delta'_l)

Two implementations exist: numba (default) and pure numpy.  Set
``G24STAR_NO_NUMBA=1`` to force numpy.
"""
from __future__ import annotations

import os

import numpy as np

# step table: index s = 2*J + k (0-based), columns J, k, X, d[0..3]
_STEP = np.zeros((8, 7), dtype=np.int64)
for _J in range(4):
    for _k in range(2):
        _j, _jp = _J >> 1, _J & 1
        _d = [0, 0, 0, 0]
        _d[_J] += 1
        if _k != _j:
            _d[_J ^ 3] += 1
            _d[_J ^ 1] -= 1
        _STEP[2 * _J + _k] = [_J, _k, 2 * _k + _jp] + _d
STEP_TABLE = _STEP

USE_NUMBA = os.environ.get("G24STAR_NO_NUMBA", "").strip() not in ("1", "true", "yes")

try:  # pragma: no cover - exercised depending on environment
    import numba
except Exception:  # pragma: no cover
    numba = None
    USE_NUMBA = False


def _pairs(I: int):
    """(I, \\ii') and (\\I, i\\i') as codes."""
    return I, I ^ 2, I ^ 3, I ^ 1


def _enumerate_py(n, I, step):
    """Reference loop; compiled by numba when available."""
    M = 8 ** n
    out_beta = np.zeros((M, 4), dtype=np.int64)
    out_X = np.zeros((M, max(n, 1)), dtype=np.int64)
    out_delta = np.zeros((M, max(n, 1)), dtype=np.int64)
    out_c = np.zeros((M, max(n, 1)), dtype=np.int64)
    out_e = np.zeros((M, max(n, 1)), dtype=np.int64)
    a0, a1, b0, b1 = I, I ^ 2, I ^ 3, I ^ 1
    prefix = np.zeros((n + 1, 4), dtype=np.int64)
    digits = np.zeros(max(n, 1), dtype=np.int64)
    cnt = 0
    for s in range(M):
        x = s
        for l in range(n):
            digits[l] = x % 8
            x //= 8
        ok = True
        for l in range(n):
            st = digits[l]
            for t in range(4):
                v = prefix[l, t] + step[st, 3 + t]
                prefix[l + 1, t] = v
                if v < 0:
                    ok = False
            if not ok:
                break
        if not ok:
            continue
        # tail sums of the Delta indicators
        tailA = 0
        tailB = 0
        for l in range(n - 1, -1, -1):
            st = digits[l]
            J = step[st, 0]
            k = step[st, 1]
            out_X[cnt, l] = step[st, 2]
            out_delta[cnt, l] = 1 if (J >> 1) == k else 0
            out_c[cnt, l] = prefix[l + 1, J ^ 1] + 1
            bA = prefix[n, a0] + prefix[n, a1] - tailA
            bB = prefix[n, b0] + prefix[n, b1] - tailB
            out_e[cnt, l] = 2 * bA * bB
            if J == a0 or J == a1:
                tailA += 1
            if J == b0 or J == b1:
                tailB += 1
        for t in range(4):
            out_beta[cnt, t] = prefix[n, t]
        cnt += 1
    return out_beta[:cnt], out_X[:cnt], out_delta[:cnt], out_c[:cnt], out_e[:cnt]


if numba is not None:
    _enumerate_nb = numba.njit(nogil=True, cache=True)(_enumerate_py)
else:  # pragma: no cover
    _enumerate_nb = None


def _enumerate_np(n, I, step):
    """Vectorized version of the same enumeration."""
    M = 8 ** n
    w = max(n, 1)
    if n == 0:
        z = np.zeros((1, w), dtype=np.int64)
        return np.zeros((1, 4), dtype=np.int64), z, z.copy(), z.copy(), z.copy()
    s = np.arange(M, dtype=np.int64)
    digits = (s[:, None] // (8 ** np.arange(n, dtype=np.int64))[None, :]) % 8
    dvec = step[digits, 3:7]                       # (M, n, 4)
    prefix = np.cumsum(dvec, axis=1)               # prefix[:, l] = sum_{m<=l}
    valid = (prefix >= 0).all(axis=(1, 2))
    digits = digits[valid]
    prefix = prefix[valid]
    J = step[digits, 0]
    k = step[digits, 1]
    X = step[digits, 2]
    delta = ((J >> 1) == k).astype(np.int64)
    c = np.take_along_axis(prefix, (J ^ 1)[:, :, None], axis=2)[:, :, 0] + 1
    beta = prefix[:, -1, :]
    a0, a1, b0, b1 = _pairs(I)
    indA = ((J == a0) | (J == a1)).astype(np.int64)
    indB = ((J == b0) | (J == b1)).astype(np.int64)
    # exclusive tail sums over m > l
    tailA = np.cumsum(indA[:, ::-1], axis=1)[:, ::-1] - indA
    tailB = np.cumsum(indB[:, ::-1], axis=1)[:, ::-1] - indB
    bA = (beta[:, a0] + beta[:, a1])[:, None] - tailA
    bB = (beta[:, b0] + beta[:, b1])[:, None] - tailB
    e = 2 * bA * bB
    return beta, X, delta, c, e


def enumerate_sequences(n: int, I: int = 0, backend: str | None = None):
    """Valid (J, k) sequences of length n with their scalar data.

    Returns (beta, X, delta, c, e) as int64 arrays; row r describes one
    sequence, column l its step l+1.
    """
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    if backend == "numba":
        if _enumerate_nb is None:  # pragma: no cover
            raise RuntimeError("numba is not available")
        return _enumerate_nb(n, I, STEP_TABLE)
    if backend == "numpy":
        return _enumerate_np(n, I, STEP_TABLE)
    if backend == "python":
        return _enumerate_py(n, I, STEP_TABLE)
    raise ValueError(f"unknown backend {backend!r}")


def active_backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
