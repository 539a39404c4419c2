"""Timing comparisons.

* recurrence table at order n (all orders <= n expanded to CoeffPolys)
  versus the closed form evaluated pair by pair at order n - 1, with every
  cache cleared before each pair so no work is shared between coefficients;
* the sequence-enumeration kernel under numba versus numpy.
"""
from __future__ import annotations

import time

from . import _kernels, closed_form, recurrence, ring
from .indices import mi_enumerate


def _clear_caches():
    recurrence._gens.cache_clear()
    ring.linear_form_coefficient.cache_clear()
    ring._compositions.cache_clear()
    closed_form._beta_paths.cache_clear()
    closed_form.step_scalar.cache_clear()


def time_recurrence(n: int) -> dict:
    _clear_caches()
    t0 = time.perf_counter()
    table = recurrence.recurrence_T_table(n)
    t1 = time.perf_counter()
    monos = sum(table.materialize(k) for k in range(n + 1))
    t2 = time.perf_counter()
    return {"n": n, "dp_seconds": t1 - t0, "total_seconds": t2 - t0, "monomials": monos}


def time_naive_closed_form(n: int, limit_pairs: int | None = None) -> dict:
    pairs = [(a, b) for b in mi_enumerate(n) for a in mi_enumerate(n)]
    if limit_pairs is not None:
        pairs = pairs[:limit_pairs]
    t0 = time.perf_counter()
    monos = 0
    for a, b in pairs:
        _clear_caches()
        monos += len(closed_form.closed_form_T(n, a, b))
    t1 = time.perf_counter()
    return {"n": n, "pairs": len(pairs), "total_seconds": t1 - t0, "monomials": monos}


def time_kernels(n: int, repeats: int = 3) -> dict:
    out = {"n": n}
    backends = ["numpy"] + (["numba"] if _kernels._enumerate_nb is not None else [])
    for be in backends:
        _kernels.enumerate_sequences(min(n, 2), 0, be)  # compile / warm up
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            res = _kernels.enumerate_sequences(n, 0, be)
            best = min(best, time.perf_counter() - t0)
        out[be] = best
        out[be + "_rows"] = int(len(res[0]))
    return out


def run_bench(n: int = 6, naive_n: int | None = None, kernel_n: int = 7) -> dict:
    naive_n = n - 1 if naive_n is None else naive_n
    rec = time_recurrence(n)
    naive = time_naive_closed_form(naive_n)
    ker = time_kernels(kernel_n)
    ratio = naive["total_seconds"] / rec["total_seconds"] if rec["total_seconds"] > 0 else float("inf")
    return {"recurrence": rec, "naive_closed_form": naive, "kernels": ker, "speedup": ratio,
            "meets_10x": ratio >= 10.0}


def format_report(r: dict) -> str:
    rec, nv, ker = r["recurrence"], r["naive_closed_form"], r["kernels"]
    lines = [
        f"recurrence n={rec['n']}: dp {rec['dp_seconds']:.3f}s, with expansion {rec['total_seconds']:.3f}s "
        f"({rec['monomials']} monomials)",
        f"naive closed form n={nv['n']}: {nv['total_seconds']:.3f}s over {nv['pairs']} pairs "
        f"({nv['monomials']} monomials)",
        f"speedup {r['speedup']:.1f}x ({'>=' if r['meets_10x'] else '<'} 10x)",
    ]
    kl = f"kernel n={ker['n']}: numpy {ker['numpy']:.4f}s"
    if "numba" in ker:
        kl += f", numba {ker['numba']:.4f}s ({ker['numpy'] / max(ker['numba'], 1e-12):.1f}x)"
    lines.append(kl)
    return "\n".join(lines)
