"""JSON and CSV export of coefficient tables."""
from __future__ import annotations

import csv
import io
import json

from .exact_scalars import HRational
from .indices import mi_enumerate
from .oracle import ExplicitTable
from .ring import CoeffPoly, parse_symbol


def order_to_json(table, n: int) -> dict:
    entries = []
    for beta in mi_enumerate(n):
        for alpha in mi_enumerate(n):
            t = table.get_T(n, alpha, beta)
            if t:
                entries.append({"alpha": list(alpha), "beta": list(beta), "terms": t.to_json()})
    return {"n": n, "entries": entries}


def order_from_json(obj: dict) -> ExplicitTable:
    n = int(obj["n"])
    out = ExplicitTable(n_max=n)
    for e in obj["entries"]:
        out.entries[(n, tuple(e["alpha"]), tuple(e["beta"]))] = CoeffPoly.from_json(e["terms"])
    return out


def dumps_json(table, n: int) -> str:
    return json.dumps(order_to_json(table, n), indent=1)


CSV_HEADER = ["n", "alpha", "beta", "mono", "num", "den"]


def dumps_csv(table, n: int) -> str:
    """One row per monomial; mono is "g[11',12']^2*g[..]", num/den are space separated coefficients."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for entry in order_to_json(table, n)["entries"]:
        for term in entry["terms"]:
            mono = "*".join(f"{k}^{v}" if v > 1 else k for k, v in term["mono"].items())
            w.writerow([n, " ".join(map(str, entry["alpha"])), " ".join(map(str, entry["beta"])),
                        mono, " ".join(term["hbar"]["num"]), " ".join(term["hbar"]["den"])])
    return buf.getvalue()


def loads_csv(text: str) -> ExplicitTable:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = ExplicitTable()
    for r in rows:
        n = int(r["n"])
        out.n_max = max(out.n_max, n)
        key = (n, tuple(int(x) for x in r["alpha"].split()), tuple(int(x) for x in r["beta"].split()))
        mono = []
        if r["mono"]:
            for part in r["mono"].split("*"):
                name, _, e = part.partition("^")
                mono.extend([parse_symbol(name)] * (int(e) if e else 1))
        poly = out.entries.setdefault(key, CoeffPoly.zero())
        poly.iadd_term(tuple(sorted(mono)), HRational(r["num"].split(), r["den"].split()))
    return out


def dumps_text(table, n: int) -> str:
    lines = []
    for beta in mi_enumerate(n):
        for alpha in mi_enumerate(n):
            t = table.get_T(n, alpha, beta)
            if t:
                lines.append(f"T^{n}[alpha={list(alpha)}, beta={list(beta)}] = {t}")
    return "\n".join(lines) + ("\n" if lines else "")
