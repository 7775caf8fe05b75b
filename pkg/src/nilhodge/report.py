"""Text, CSV and JSON renderings of the computed objects.

Every renderer is a pure function of its input, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json

from .scalars import Scalar

REPORT_SCHEMA = 1


def scalar_text(x: Scalar) -> str:
    return str(x)


def _coef(x: Scalar) -> str:
    s = str(x)
    body = s[1:] if s.startswith("-") else s
    if "+" in body or "-" in body:
        return f"({s})"
    return s


def combination(v, names) -> str:
    """``e1 + 1*i*e2`` style rendering of a coordinate vector."""
    parts = []
    for x, nm in zip(v, names):
        if not x:
            continue
        if x == 1:
            term = nm
        elif x == -1:
            term = "-" + nm
        else:
            term = f"{_coef(x)}*{nm}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def e_names(m: int, dual: bool = False) -> list:
    return [f"e^{k + 1}" if dual else f"e{k + 1}" for k in range(m)]


def generator_names(n: int) -> list:
    return [f"ω{l + 1}" for l in range(n)] + [f"ω̄{l + 1}" for l in range(n)]


def two_form_text(form: dict, names) -> str:
    items = sorted(form.items())
    wedges = [f"{names[a]}∧{names[b]}" for (a, b), _ in items]
    return combination([c for _, c in items], wedges)


def to_json(payload: dict) -> str:
    return json.dumps({"report_schema": REPORT_SCHEMA, **payload}, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def yes(flag) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def diamond_text(h) -> str:
    """Hodge numbers as a p-by-q table followed by the tilted diamond."""
    n = len(h) - 1
    width = max(len(str(x)) for row in h for x in row) + 1
    width = max(width, 4)
    lines = ["p\\q " + "".join(f"{q:>{width}}" for q in range(n + 1))]
    for p in range(n + 1):
        lines.append(f"{p:<4}" + "".join(f"{h[p][q]:>{width}}" for q in range(n + 1)))
    lines.append("")
    span = (2 * n + 1) * width
    for k in range(2 * n, -1, -1):
        cells = [str(h[p][k - p]) for p in range(n, -1, -1) if 0 <= k - p <= n]
        row = (" " * (width - 1)).join(c.center(1) for c in cells)
        lines.append(row.center(span).rstrip())
    return "\n".join(lines)
