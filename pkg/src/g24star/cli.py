"""Command line: ``g24star {coeff,verify,eval,bench}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error
(bad flags, unparsable input, desk bound exceeded, singular point).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import BoundExceeded, EvalSingular, G24Error, UnsupportedShape
from .exact_scalars import to_rational

MAX_COEFF_N = 6
MAX_STAR_N = 3


@dataclass
class RunConfig:
    subcommand: str
    p: int = 2
    q: int = 2
    n: int = 2
    order: int = 2
    hbar: object = None
    fmt: str = "text"
    seed: int = 0
    suite: str | None = None
    point: str | None = None
    f: str | None = None
    g: str | None = None
    h: str | None = None


def _pq(text: str) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected P,Q") from None
    return p, q


def _rat(text: str):
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pq", type=_pq, default=(2, 2), metavar="P,Q")
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--order", type=int, default=None)
    common.add_argument("--hbar", type=_rat, default=None, metavar="RAT")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=0)
    ap = argparse.ArgumentParser(prog="g24star", description="Star product with separation of variables on G_{2,4}(C).")
    sub = ap.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("coeff", parents=[common], help="print the coefficients T^n")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", default="all")
    e = sub.add_parser("eval", parents=[common], help="evaluate f * g at a point")
    e.add_argument("--f", required=True, metavar="EXPR")
    e.add_argument("--g", required=True, metavar="EXPR")
    e.add_argument("--h", default=None, metavar="EXPR", help="if given, evaluate (f * g) * h")
    e.add_argument("--point", default=None, metavar="FILE")
    sub.add_parser("bench", parents=[common], help="timing report")
    return ap


def cmd_coeff(cfg: RunConfig, out) -> int:
    from .export import dumps_csv, dumps_json, dumps_text
    from .recurrence import recurrence_T_table
    if (cfg.p, cfg.q) != (2, 2):
        raise UnsupportedShape("coefficients are available for p = q = 2 only")
    if cfg.n > MAX_COEFF_N or cfg.n < 0:
        raise BoundExceeded(f"--n must be in 0..{MAX_COEFF_N}")
    T = recurrence_T_table(cfg.n)
    dump = {"json": dumps_json, "csv": dumps_csv, "text": dumps_text}[cfg.fmt]
    out.write(dump(T, cfg.n))
    if cfg.fmt == "json":
        out.write("\n")
    return 0


def cmd_verify(cfg: RunConfig, out) -> int:
    from .verify import SUITES, run_suite
    names = SUITES if cfg.suite in (None, "all") else tuple(s.strip() for s in cfg.suite.split(","))
    for s in names:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    if cfg.n > MAX_COEFF_N:
        raise BoundExceeded(f"--n must be at most {MAX_COEFF_N}")
    if cfg.order > MAX_STAR_N:
        raise BoundExceeded(f"--order must be at most {MAX_STAR_N}")
    results = []
    for s in names:
        for name, ok in run_suite(s, n=cfg.n, order=cfg.order, seed=cfg.seed):
            results.append({"suite": s, "check": name, "pass": bool(ok)})
    if cfg.fmt == "json":
        out.write(json.dumps({"results": results, "pass": all(r["pass"] for r in results)}, indent=1) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r['pass'] else 'FAIL'}  [{r['suite']}] {r['check']}\n")
    return 0 if all(r["pass"] for r in results) else 1


def cmd_eval(cfg: RunConfig, out) -> int:
    from .exact_scalars import GaussianRational
    from .geometry import build_chart, parse_point
    from .parser import parse_expr
    from .star import HSeries, star_coeff_form, star_series_coeffwise
    from . import expr as X
    if (cfg.p, cfg.q) != (2, 2):
        raise UnsupportedShape("the star product is available for p = q = 2 only")
    if cfg.order > MAX_STAR_N or cfg.order < 0:
        raise BoundExceeded(f"--order must be in 0..{MAX_STAR_N}")
    c = build_chart(2, 2)
    f = parse_expr(cfg.f, 2, 2)
    g = parse_expr(cfg.g, 2, 2)
    if cfg.point:
        with open(cfg.point) as fh:
            pt = parse_point(json.load(fh), 2, 2)
    else:
        pt = parse_point({}, 2, 2)
    s = star_coeff_form(c, f, g, cfg.order)
    if cfg.h:
        if cfg.order > 2:
            raise BoundExceeded("triple products are limited to order 2")
        h = parse_expr(cfg.h, 2, 2)
        s = star_series_coeffwise(c, s, HSeries([h] + [X.ZERO] * cfg.order), cfg.order)
    coeffs = s.evaluate(pt, "exact")
    hb = cfg.hbar if cfg.hbar is not None else to_rational(0)
    total = GaussianRational(0)
    hk = GaussianRational(1)
    for v in coeffs:
        total = total + v * hk
        hk = hk * GaussianRational(hb)
    if cfg.fmt == "json":
        out.write(json.dumps({"hbar": str(hb), "order": cfg.order,
                              "coefficients": [[str(v.re), str(v.im)] for v in coeffs],
                              "value": [str(total.re), str(total.im)],
                              "float": [float(total.re), float(total.im)]}) + "\n")
    elif cfg.fmt == "csv":
        out.write("k,re,im\n")
        for k, v in enumerate(coeffs):
            out.write(f"{k},{v.re},{v.im}\n")
        out.write(f"total,{total.re},{total.im}\n")
    else:
        for k, v in enumerate(coeffs):
            out.write(f"C_{k} = {v}\n")
        out.write(f"value at hbar={hb}: {total}  ({complex(total)})\n")
    return 0


def cmd_bench(cfg: RunConfig, out) -> int:
    from .bench import format_report, run_bench
    n = cfg.n if cfg.n is not None else 6
    if n > MAX_COEFF_N:
        raise BoundExceeded(f"--n must be at most {MAX_COEFF_N}")
    r = run_bench(n)
    if cfg.fmt == "json":
        out.write(json.dumps(r, indent=1) + "\n")
    else:
        out.write(format_report(r) + "\n")
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    p, q = ns.pq
    defaults = {"coeff": (2, 2), "verify": (4, 3), "eval": (2, 2), "bench": (6, 2)}[ns.subcommand]
    cfg = RunConfig(
        subcommand=ns.subcommand, p=p, q=q,
        n=ns.n if ns.n is not None else defaults[0],
        order=ns.order if ns.order is not None else defaults[1],
        hbar=ns.hbar, fmt=ns.fmt, seed=ns.seed,
        suite=getattr(ns, "suite", None), point=getattr(ns, "point", None),
        f=getattr(ns, "f", None), g=getattr(ns, "g", None), h=getattr(ns, "h", None),
    )
    cmd = {"coeff": cmd_coeff, "verify": cmd_verify, "eval": cmd_eval, "bench": cmd_bench}[cfg.subcommand]
    try:
        return cmd(cfg, out)
    except (G24Error, ValueError, OSError) as exc:
        if isinstance(exc, EvalSingular):
            msg = f"singular evaluation point: {exc}"
        else:
            msg = str(exc)
        sys.stderr.write(f"g24star: error: {msg}\n")
        return 2


def entry() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
