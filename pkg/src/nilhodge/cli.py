"""Command-line driver: ``nilhodge <command> --input <path|catalog-name> [...]``.

Exit status 0 on success, 1 for invalid input or a violated precondition,
2 when a re-verified structural identity fails (an internal inconsistency).  On failure the
last line written to stderr is a one-line JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, catalog
from .complex_structure import (
    adapted_basis,
    annihilator_series,
    is_abelian,
    is_complex_parallelizable,
    is_integrable,
    is_rational,
    j_series,
    nijenhuis_witness,
)
from .deformation import deform_rule, general_deformation, scan, ComplexFamily
from .document import AlgebraDocument, parse
from .dolbeault import build_complex, full_diamond, has_02_component, hodge_number
from .errors import InternalInconsistencyError, NilhodgeError, ValidationError
from .lie import center
from .report import (
    combination,
    diamond_text,
    e_names,
    generator_names,
    to_csv,
    to_json,
    two_form_text,
    yes,
)
from .scalars import ScalarParseError, parse_scalar
from .spectral import tower_report

COMMANDS = ("validate", "series", "basis", "hodge", "betti", "spectral", "scan", "classify", "check")


class UsageError(NilhodgeError):
    kind = "usage"


def load_document(source: str) -> AlgebraDocument:
    if source in catalog.NAMES:
        return catalog.get(source)
    path = Path(source)
    if not path.exists():
        raise UsageError(f"{source!r} is neither a file nor a catalog entry ({', '.join(catalog.NAMES)})")
    return parse(path.read_text(encoding="utf-8"))


def _structure(doc: AlgebraDocument):
    g = doc.algebra()
    J = doc.complex_structure(g)
    if J is None:
        raise ValidationError(f"{doc.name}: document has no complex_structure")
    return g, J


def _family(doc: AlgebraDocument, J, choice: str) -> ComplexFamily:
    if choice != "default":
        raise UsageError(f"unknown family {choice!r}; only 'default' is supported")
    fam = doc.family
    if fam is None:
        return general_deformation(J)
    if "spans_with_parameter" in fam:
        return ComplexFamily(J, tuple((tuple(b), tuple(s)) for b, s in fam["spans_with_parameter"]))
    return deform_rule(J, fam["deform_index"] - 1, fam["conjugate_index"] - 1)


def _vec_list(sub, names):
    return [combination(v, names) for v in sub.vectors()]


# ---------------------------------------------------------------------------
# commands; each returns the output text


def cmd_validate(doc, args) -> str:
    g = doc.algebra()
    J = doc.complex_structure(g)
    info = {
        "name": doc.name,
        "dimension": g.dim,
        "step": g.series.step,
        "jacobi": True,
        "nilpotent": True,
        "complex_structure": J is not None,
        "integrable": is_integrable(J) if J is not None else None,
    }
    if args.format == "json":
        return to_json({"command": "validate", **info})
    _no_csv(args)
    lines = [
        f"valid: {doc.name}",
        f"dimension {g.dim}, nilpotent of step {g.series.step + 1}",
        f"complex structure: {'given' if J is not None else 'none'}",
    ]
    if J is not None:
        lines.append(f"integrable: {yes(info['integrable'])}")
    return "\n".join(lines) + "\n"


def _no_csv(args):
    if args.format == "csv":
        raise UsageError(f"CSV output is only available for hodge and scan, not {args.command}")


def cmd_series(doc, args) -> str:
    g, J = _structure(doc)
    names, dual = e_names(g.dim), e_names(g.dim, dual=True)
    D = g.series
    DJ = j_series(J)
    V = annihilator_series(g)
    ctr = center(g)
    if args.format == "json":
        return to_json(
            {
                "command": "series",
                "name": doc.name,
                "D": [_vec_list(t, names) for t in D.terms],
                "DJ": [_vec_list(t, names) for t in DJ.terms],
                "V": [_vec_list(t, dual) for t in V],
                "center": _vec_list(ctr, names),
                "dj-series": [
                    {
                        "index": st.index,
                        "ideal_of_previous": st.is_ideal,
                        "quotient_abelian": st.quotient_abelian,
                        "ideal_of_g": st.ideal_of_g,
                        "rational": st.rational,
                    }
                    for st in DJ.steps
                ],
                "last_term_abelian": DJ.last_term_abelian,
                "first_inclusion_strict": DJ.first_inclusion_strict,
                "j_invariant": DJ.j_invariant,
            }
        )
    _no_csv(args)
    out = [f"{doc.name}: descending central series (D), s = {D.step}"]
    for i, t in enumerate(D.terms):
        out.append(f"  g^{i}  dim {t.dim:<2} span{{{', '.join(_vec_list(t, names))}}}")
    out.append("series (DJ): g^i_J = g^i + J g^i")
    for i, t in enumerate(DJ.terms):
        out.append(f"  g^{i}_J  dim {t.dim:<2} span{{{', '.join(_vec_list(t, names))}}}")
    out.append("annihilator series V_i = (g^i)^o")
    for i, t in enumerate(V):
        out.append(f"  V_{i}  dim {t.dim:<2} span{{{', '.join(_vec_list(t, dual))}}}")
    out.append(f"center: span{{{', '.join(_vec_list(ctr, names))}}}")
    out.append("J-series checks")
    for st in DJ.steps:
        out.append(
            f"  i={st.index}: ideal of g^{st.index - 1}_J {yes(st.is_ideal)}, "
            f"quotient abelian {yes(st.quotient_abelian)}, ideal of g {yes(st.ideal_of_g)}, "
            f"rational {yes(st.rational)}"
        )
    out.append(f"  last nonzero term abelian: {yes(DJ.last_term_abelian)}")
    out.append(f"  g^1_J strictly smaller than g: {yes(DJ.first_inclusion_strict)}")
    return "\n".join(out) + "\n"


def cmd_basis(doc, args) -> str:
    g, J = _structure(doc)
    ab = adapted_basis(J)
    cx = build_complex(J, ab)
    gnames = generator_names(ab.n)
    dual = e_names(g.dim, dual=True)
    rows = []
    for l, (w, lev) in enumerate(zip(ab.omegas, ab.levels)):
        rows.append((f"ω{l + 1}", combination(w, dual), lev, two_form_text(cx.gen_d[l], gnames)))
    if args.format == "json":
        return to_json(
            {
                "command": "basis",
                "name": doc.name,
                "forms": [{"name": a, "covector": b, "level": c, "d": d} for a, b, c, d in rows],
                "v10_dims": [v.dim for v in ab.v10_series],
            }
        )
    _no_csv(args)
    out = [f"{doc.name}: adapted basis of (1,0)-forms"]
    for a, b, c, d in rows:
        out.append(f"  {a} = {b}   (level {c})")
    out.append("differentials")
    for a, _b, _c, d in rows:
        out.append(f"  d{a} = {d}")
    out.append("dim V_i^(1,0): " + " ".join(str(v.dim) for v in ab.v10_series))
    return "\n".join(out) + "\n"


def _diamond(doc, args):
    g, J = _structure(doc)
    cx = build_complex(J)
    return g, J, cx, full_diamond(cx, g, threads=args.threads)


def cmd_hodge(doc, args) -> str:
    if (args.p is None) != (args.q is None):
        raise UsageError("--p and --q must be given together")
    if args.p is not None:
        g, J = _structure(doc)
        cx = build_complex(J)
        h = hodge_number(cx, args.p, args.q)
        if args.format == "json":
            return to_json({"command": "hodge", "name": doc.name, "p": args.p, "q": args.q, "h": h})
        if args.format == "csv":
            return to_csv(["p", "q", "h"], [[args.p, args.q, h]])
        return f"h^{{{args.p},{args.q}}} = {h}\n"
    g, J, cx, table = _diamond(doc, args)
    n = table.n
    flags = {
        "euler": table.euler_ok,
        "frolicher": table.frolicher_ok,
        "serre": table.serre_ok,
        "conjugation": table.conjugation_ok,
    }
    if args.format == "json":
        return to_json(
            {"command": "hodge", "name": doc.name, "n": n, "h": [list(r) for r in table.h], "betti": list(table.betti), "flags": flags}
        )
    if args.format == "csv":
        return to_csv(["p", "q", "h"], [[p, q, table.h[p][q]] for p in range(n + 1) for q in range(n + 1)])
    out = [f"{doc.name}: Dolbeault cohomology h^{{p,q}} (n = {n})", diamond_text(table.h), ""]
    out.append("betti: " + " ".join(str(b) for b in table.betti))
    out.append("checks: " + ", ".join(f"{k} {'ok' if v else 'FAILED'}" for k, v in flags.items()))
    return "\n".join(out) + "\n"


def cmd_betti(doc, args) -> str:
    from .dolbeault import betti_numbers

    g = doc.algebra()
    b = betti_numbers(g)
    if args.format == "json":
        return to_json({"command": "betti", "name": doc.name, "betti": b})
    _no_csv(args)
    return f"{doc.name}: " + " ".join(f"b{k}={x}" for k, x in enumerate(b)) + "\n"


def cmd_spectral(doc, args) -> str:
    g, J = _structure(doc)
    rep = tower_report(J)
    if args.format == "json":
        return to_json(
            {
                "command": "spectral",
                "name": doc.name,
                "rational": rep.rational,
                "steps": [
                    {
                        "index": st.index,
                        "n_total": st.n_total,
                        "n_base": st.n_base,
                        "n_fibre": st.n_fibre,
                        "h_total": [list(r) for r in st.h_total],
                        "h_base": [list(r) for r in st.h_base],
                        "h_fibre": [list(r) for r in st.h_fibre],
                        "degeneration_page": st.degeneration_page,
                        "pages": [
                            [{"p": p, "q": q, "u": u, "v": v, "dim": d} for (p, q, u, v), d in page]
                            for page in st.page_dims
                        ],
                    }
                    for st in rep.steps
                ],
                "h": [list(r) for r in rep.final],
            }
        )
    _no_csv(args)
    out = [f"{doc.name}: base-degree filtration spectral sequence ({len(rep.steps)} step(s))"]
    if not rep.steps:
        out.append("  series (DJ) has no intermediate term; nothing to fibre")
    for st in rep.steps:
        out.append(
            f"step i={st.index}: total dim_C {st.n_total}, base dim_C {st.n_base}, fibre dim_C {st.n_fibre}"
        )
        out.append(f"  degenerates at page {st.degeneration_page}")
        for r, page in enumerate(st.page_dims):
            cells = " ".join(f"({p},{q};{u},{v})={d}" for (p, q, u, v), d in page)
            out.append(f"  E_{r}: {cells}")
        out.append("  E_1 and E_2 match the tensor formulas; E_inf totals match h^{p,q} of the total space")
    out.append("final h^{p,q}:")
    out.append(diamond_text(rep.final))
    return "\n".join(out) + "\n"


def cmd_scan(doc, args) -> str:
    g, J = _structure(doc)
    fam = _family(doc, J, args.family)
    try:
        ts = [parse_scalar(t) for t in (args.t or ["0"])]
    except ScalarParseError as exc:
        raise UsageError(str(exc)) from None
    rep = scan(fam, ts, threads=args.threads)
    n = J.n
    pq = [(p, q) for p in range(n + 1) for q in range(n + 1)]
    if args.format == "csv":
        header = ["t", "status", "integrable", "rational"] + [f"h{p}{q}" for p, q in pq]
        rows = []
        for s in rep.samples:
            status = "ok" if s.error is None else s.error
            hs = [s.hodge.h[p][q] for p, q in pq] if s.hodge else [""] * len(pq)
            rows.append([str(s.t), status, _tf(s.integrable), _tf(s.rational)] + hs)
        return to_csv(header, rows)
    if args.format == "json":
        return to_json(
            {
                "command": "scan",
                "name": doc.name,
                "samples": [
                    {
                        "t": str(s.t),
                        "error": s.error,
                        "integrable": s.integrable,
                        "rational": s.rational,
                        "h": [list(r) for r in s.hodge.h] if s.hodge else None,
                    }
                    for s in rep.samples
                ],
                "constancy": {f"{p},{q}": list(v) for (p, q), v in sorted(rep.constancy.items())},
            }
        )
    out = [f"{doc.name}: family scan ({len(rep.samples)} samples)"]
    for s in rep.samples:
        if s.error:
            out.append(f"t = {s.t}: skipped ({s.error})")
            continue
        out.append(f"t = {s.t}: integrable {yes(s.integrable)}, rational {yes(s.rational)}")
        if s.hodge:
            out.append("  h: " + " | ".join(" ".join(str(x) for x in row) for row in s.hodge.h))
    jumps = [f"h^{{{p},{q}}}" for (p, q), v in sorted(rep.constancy.items()) if len(v) != sum(1 for s in rep.samples if s.hodge)]
    out.append("constant across samples: " + ("all" if not jumps else "all except " + ", ".join(jumps)))
    return "\n".join(out) + "\n"


def _tf(x) -> str:
    return "" if x is None else ("true" if x else "false")


def cmd_classify(doc, args) -> str:
    g, J = _structure(doc)
    integ = is_integrable(J)
    flags = {
        "integrable": integ,
        "rational": is_rational(J),
        "abelian": is_abelian(J),
        "complex_parallelizable": is_complex_parallelizable(J),
        "nilpotency_step": g.series.step + 1,
    }
    if integ and flags["abelian"]:
        # adapted_basis re-verifies dω_l ∈ Λ²<earlier ω, ω̄> ∩ λ^{1,1}
        adapted_basis(J)
        flags["minimal_model_shape"] = True
    else:
        flags["minimal_model_shape"] = False
    if args.format == "json":
        return to_json({"command": "classify", "name": doc.name, **flags})
    _no_csv(args)
    lines = [f"{doc.name}:"]
    for k, v in flags.items():
        lines.append(f"  {k.replace('_', ' ')}: {v if isinstance(v, int) and not isinstance(v, bool) else yes(v)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# check


def run_checks(doc: AlgebraDocument, level: str = "full", threads: int = 1) -> list:
    """Run every verification on one document; returns ``(name, passed, detail)`` rows.

    Internal inconsistencies propagate as exceptions.
    """
    rows = []
    g = doc.algebra()
    rows.append(("jacobi", True, "structure constants satisfy Jacobi; series (D) reaches 0"))
    J = doc.complex_structure(g)
    if J is None:
        return rows
    witness = nijenhuis_witness(J)
    zero_two = has_02_component(J)
    if (witness is None) == zero_two:
        raise InternalInconsistencyError("Nijenhuis test and (0,2)-component test disagree")
    if witness is not None:
        rows.append(("integrability", False, f"N(e{witness[0] + 1}, e{witness[1] + 1}) ≠ 0"))
        return rows
    rows.append(("integrability", True, "N = 0 and dλ^(1,0) has no (0,2) part"))
    DJ = j_series(J)
    rows.append(("dj-series", True, "g^i_J ideals with abelian quotients; last term abelian"))
    rows.append(("dj-strict", DJ.first_inclusion_strict, "g^1_J ≠ g"))
    if is_rational(J):
        rows.append(("rational-series", all(st.rational for st in DJ.steps), "every g^i_J rational"))
    annihilator_series(g)
    rows.append(("annihilators", True, "inductive V_i equal (g^i)^o"))
    ab = adapted_basis(J)
    rows.append(("basis-ideal", True, "dω_l in the ideal of lower-level forms; a closed (1,0)-form exists"))
    rows.append(("v10-dimensions", True, "dim V_i^(1,0)/V_(i-1)^(1,0) = dim_C g^(i-1)_J/g^i_J"))
    cx = build_complex(J, ab)
    rows.append(("d-identities", True, "∂̄² = 0, ∂² = 0, ∂∂̄ + ∂̄∂ = 0"))
    table = full_diamond(cx, g, threads=threads)
    rows.append(("euler", table.euler_ok, "alternating sum of h^{p,q} vanishes"))
    rows.append(("frolicher", table.frolicher_ok, "b_k ≤ Σ h^{p,q}"))
    rows.append(("serre", table.serre_ok, "h^{p,q} = h^{n-p,n-q}"))
    rows.append(("conjugation", table.conjugation_ok, "∂̄-side h^{p,q} = ∂-side h^{q,p}"))
    if level == "full":
        rep = tower_report(J)
        rows.append(("pages", True, f"{len(rep.steps)} step(s); pages, tensor formulas and convergence verified"))
    return rows


def cmd_check(doc, args) -> str:
    docs = [catalog.get(nm) for nm in catalog.NAMES] if args.all else [doc]

    def one(d):
        return run_checks(d, args.check_level, args.threads)

    if args.threads > 1 and len(docs) > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(one, docs))
    else:
        results = [one(d) for d in docs]
    failed = [(d.name, r) for d, rows in zip(docs, results) for r in rows if not r[1]]
    if args.format == "json":
        text = to_json(
            {
                "command": "check",
                "level": args.check_level,
                "documents": [
                    {"name": d.name, "checks": [{"check": a, "passed": b, "detail": c} for a, b, c in rows]}
                    for d, rows in zip(docs, results)
                ],
                "passed": not failed,
            }
        )
    else:
        _no_csv(args)
        lines = []
        for d, rows in zip(docs, results):
            for a, b, c in rows:
                lines.append(f"{'PASS' if b else 'FAIL'} {d.name}: {a} ({c})")
        lines.append(f"{sum(len(r) for r in results) - len(failed)} passed, {len(failed)} failed")
        text = "\n".join(lines) + "\n"
    if failed:
        integ_only = all(r[0] == "integrability" for _, r in failed)
        raise _CheckFailure(text, 1 if integ_only else 2, failed)
    return text


class _CheckFailure(Exception):
    def __init__(self, text, code, failed):
        super().__init__(text)
        self.text, self.code, self.failed = text, code, failed


HANDLERS = {
    "validate": cmd_validate,
    "series": cmd_series,
    "basis": cmd_basis,
    "hodge": cmd_hodge,
    "betti": cmd_betti,
    "spectral": cmd_spectral,
    "scan": cmd_scan,
    "classify": cmd_classify,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilhodge", description="Exact Dolbeault cohomology of nilpotent Lie algebras")
    parser.add_argument("--version", action="version", version=f"nilhodge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="document path or catalog name")
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--header", action="store_true", help="print a version banner line first")
        if name == "hodge":
            p.add_argument("--p", type=int)
            p.add_argument("--q", type=int)
        if name == "scan":
            p.add_argument("--t", action="append", help="parameter value (repeatable)")
            p.add_argument("--family", default="default")
        if name == "check":
            p.add_argument("--all", action="store_true", help="check every catalog entry")
            p.add_argument("--check-level", choices=("fast", "full"), default="full")
    return parser


def _error_line(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message}, ensure_ascii=False)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        if code:
            print(_error_line("usage", "invalid command line"), file=stderr)
            return 1
        return 0
    try:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        doc = None
        if not (args.command == "check" and args.all):
            if not args.input:
                raise UsageError("--input is required")
            doc = load_document(args.input)
        text = HANDLERS[args.command](doc, args)
    except _CheckFailure as fail:
        stdout.write(fail.text)
        name, row = fail.failed[0]
        kind = "validation" if fail.code == 1 else "internal-inconsistency"
        print(_error_line(kind, f"{name}: check {row[0]} failed ({row[2]})"), file=stderr)
        return fail.code
    except InternalInconsistencyError as exc:
        print(_error_line(exc.kind, str(exc)), file=stderr)
        return 2
    except NilhodgeError as exc:
        print(_error_line(exc.kind, str(exc)), file=stderr)
        return 1
    except (OSError, UnicodeDecodeError) as exc:
        print(_error_line("io", str(exc)), file=stderr)
        return 1
    if args.header:
        stdout.write(f"# nilhodge {__version__}\n")
    stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
