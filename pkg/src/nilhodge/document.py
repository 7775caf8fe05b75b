"""Algebra documents: a restricted JSON profile (objects, arrays, strings, integers).

All numbers that are field elements are strings in the scalar grammar.  Form
and basis indices are 1-based, as in ``de^5 = e^1∧e^3 - e^2∧e^4``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .complex_structure import ComplexStructure, structure_from_span
from .errors import DocumentError
from .lie import LieAlgebra
from .linalg import ExactMatrix
from .scalars import Scalar, ScalarParseError, parse_scalar

SCHEMA_VERSION = 1

_TOP_KEYS = ("schema_version", "name", "dimension", "structure_equations", "complex_structure", "family")
_REQUIRED = ("schema_version", "name", "dimension", "structure_equations")


@dataclass(frozen=True)
class AlgebraDocument:
    name: str
    dimension: int
    equations: tuple  # ((k, ((i, j, Scalar), ...)), ...) 1-based, sorted
    matrix: tuple | None = None
    span: tuple | None = None
    family: dict | None = field(default=None, hash=False, compare=True)
    schema_version: int = SCHEMA_VERSION

    def algebra(self) -> LieAlgebra:
        eqs = {k - 1: {(i - 1, j - 1): c for i, j, c in terms} for k, terms in self.equations}
        return LieAlgebra.from_forms(self.dimension, eqs, self.name)

    def complex_structure(self, algebra: LieAlgebra | None = None) -> ComplexStructure | None:
        g = algebra or self.algebra()
        if self.matrix is not None:
            return ComplexStructure(g, ExactMatrix.from_rows(self.matrix, cols=self.dimension), self.name)
        if self.span is not None:
            return structure_from_span(g, self.span, self.name)
        return None


def _fail(msg: str):
    raise DocumentError(msg)


def _check_plain(obj, path="$"):
    if isinstance(obj, bool) or obj is None or isinstance(obj, float):
        _fail(f"{path}: only objects, arrays, strings and integers are allowed")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_plain(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for n, v in enumerate(obj):
            _check_plain(v, f"{path}[{n}]")


def _int(obj, path):
    if not isinstance(obj, int) or isinstance(obj, bool):
        _fail(f"{path}: expected an integer")
    return obj


def _str(obj, path):
    if not isinstance(obj, str):
        _fail(f"{path}: expected a string")
    return obj


def _scalar(obj, path) -> Scalar:
    try:
        return parse_scalar(_str(obj, path))
    except ScalarParseError as exc:
        _fail(f"{path}: {exc}")


def _keys(obj, allowed, required, path):
    if not isinstance(obj, dict):
        _fail(f"{path}: expected an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        _fail(f"{path}: unknown field(s) {', '.join(extra)}")
    missing = [k for k in required if k not in obj]
    if missing:
        _fail(f"{path}: missing field(s) {', '.join(missing)}")


def _rows(obj, path, width, count=None):
    if not isinstance(obj, list) or (count is not None and len(obj) != count):
        _fail(f"{path}: expected {count if count is not None else 'a list of'} rows")
    out = []
    for r, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != width:
            _fail(f"{path}[{r}]: expected {width} entries")
        out.append(tuple(_scalar(x, f"{path}[{r}][{c}]") for c, x in enumerate(row)))
    return tuple(out)


def parse(text: str) -> AlgebraDocument:
    def no_float(s):
        raise DocumentError(f"non-integer number {s!r}")

    try:
        raw = json.loads(text, parse_float=no_float, parse_constant=no_float)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _check_plain(raw)
    _keys(raw, _TOP_KEYS, _REQUIRED, "$")
    version = _int(raw["schema_version"], "$.schema_version")
    if version != SCHEMA_VERSION:
        _fail(f"$.schema_version: unsupported version {version}")
    name = _str(raw["name"], "$.name")
    dim = _int(raw["dimension"], "$.dimension")
    if dim < 0 or dim % 2:
        _fail(f"$.dimension: must be a nonnegative even integer, got {dim}")

    eqs = raw["structure_equations"]
    if not isinstance(eqs, list):
        _fail("$.structure_equations: expected a list")
    seen_forms = set()
    equations = []
    for n, entry in enumerate(eqs):
        path = f"$.structure_equations[{n}]"
        _keys(entry, ("form", "terms"), ("form", "terms"), path)
        k = _int(entry["form"], path + ".form")
        if not 1 <= k <= dim:
            _fail(f"{path}.form: index {k} outside 1..{dim}")
        if k in seen_forms:
            _fail(f"{path}.form: duplicate equation for e^{k}")
        seen_forms.add(k)
        if not isinstance(entry["terms"], list):
            _fail(f"{path}.terms: expected a list")
        terms, pairs = [], set()
        for t, term in enumerate(entry["terms"]):
            tp = f"{path}.terms[{t}]"
            _keys(term, ("i", "j", "coefficient"), ("i", "j", "coefficient"), tp)
            i, j = _int(term["i"], tp + ".i"), _int(term["j"], tp + ".j")
            if not (1 <= i <= dim and 1 <= j <= dim):
                _fail(f"{tp}: index outside 1..{dim}")
            if i >= j:
                _fail(f"{tp}: need i < j, got i={i}, j={j} (de^{k})")
            if (i, j) in pairs:
                _fail(f"{tp}: duplicate term e^{i}∧e^{j}")
            pairs.add((i, j))
            c = _scalar(term["coefficient"], tp + ".coefficient")
            if not c.is_rational():
                _fail(f"{tp}.coefficient: structure constants must be rational")
            terms.append((i, j, c))
        equations.append((k, tuple(sorted(terms, key=lambda x: (x[0], x[1])))))
    equations.sort(key=lambda e: e[0])

    matrix = span = None
    if "complex_structure" in raw:
        cs = raw["complex_structure"]
        _keys(cs, ("matrix", "holomorphic_span"), (), "$.complex_structure")
        if len(cs) != 1:
            _fail("$.complex_structure: give exactly one of matrix, holomorphic_span")
        if "matrix" in cs:
            matrix = _rows(cs["matrix"], "$.complex_structure.matrix", dim, dim)
        else:
            span = _rows(cs["holomorphic_span"], "$.complex_structure.holomorphic_span", dim, dim // 2)

    family = None
    if "family" in raw:
        fam = raw["family"]
        _keys(fam, ("deform_index", "conjugate_index", "spans_with_parameter"), (), "$.family")
        if "spans_with_parameter" in fam:
            if len(fam) != 1:
                _fail("$.family: spans_with_parameter excludes the index form")
            rows = fam["spans_with_parameter"]
            if not isinstance(rows, list) or len(rows) != dim // 2:
                _fail(f"$.family.spans_with_parameter: expected {dim // 2} entries")
            parsed = []
            for r, entry in enumerate(rows):
                rp = f"$.family.spans_with_parameter[{r}]"
                _keys(entry, ("base", "slope"), ("base", "slope"), rp)
                base = _rows([entry["base"]], rp + ".base", dim)[0]
                slope = _rows([entry["slope"]], rp + ".slope", dim)[0]
                parsed.append((base, slope))
            family = {"spans_with_parameter": tuple(parsed)}
        else:
            _keys(fam, ("deform_index", "conjugate_index"), ("deform_index", "conjugate_index"), "$.family")
            a = _int(fam["deform_index"], "$.family.deform_index")
            b = _int(fam["conjugate_index"], "$.family.conjugate_index")
            for v, nm in ((a, "deform_index"), (b, "conjugate_index")):
                if not 1 <= v <= dim // 2:
                    _fail(f"$.family.{nm}: index {v} outside 1..{dim // 2}")
            family = {"deform_index": a, "conjugate_index": b}
    return AlgebraDocument(name, dim, tuple(equations), matrix, span, family, version)


def _q(s) -> str:
    return json.dumps(str(s), ensure_ascii=False)


def _row_text(row) -> str:
    return "[" + ", ".join(_q(x) for x in row) + "]"


def emit(doc: AlgebraDocument) -> str:
    """Canonical text; ``emit(parse(emit(doc))) == emit(doc)``."""
    out = ["{"]
    out.append(f'  "schema_version": {doc.schema_version},')
    out.append(f'  "name": {_q(doc.name)},')
    out.append(f'  "dimension": {doc.dimension},')
    if doc.equations:
        out.append('  "structure_equations": [')
        lines = []
        for k, terms in doc.equations:
            body = ", ".join(f'{{"i": {i}, "j": {j}, "coefficient": {_q(c)}}}' for i, j, c in terms)
            lines.append(f'    {{"form": {k}, "terms": [{body}]}}')
        out.append(",\n".join(lines))
        out.append("  ]" + ("," if doc.matrix or doc.span or doc.family else ""))
    else:
        out.append('  "structure_equations": []' + ("," if doc.matrix or doc.span or doc.family else ""))
    if doc.matrix is not None or doc.span is not None:
        key, rows = ("matrix", doc.matrix) if doc.matrix is not None else ("holomorphic_span", doc.span)
        out.append('  "complex_structure": {')
        out.append(f'    "{key}": [')
        out.append(",\n".join("      " + _row_text(r) for r in rows))
        out.append("    ]")
        out.append("  }" + ("," if doc.family else ""))
    if doc.family:
        if "spans_with_parameter" in doc.family:
            out.append('  "family": {')
            out.append('    "spans_with_parameter": [')
            lines = [
                f'      {{"base": {_row_text(b)}, "slope": {_row_text(s)}}}' for b, s in doc.family["spans_with_parameter"]
            ]
            out.append(",\n".join(lines))
            out.append("    ]")
            out.append("  }")
        else:
            fam = doc.family
            out.append(f'  "family": {{"deform_index": {fam["deform_index"]}, "conjugate_index": {fam["conjugate_index"]}}}')
    out.append("}")
    return "\n".join(out) + "\n"


def from_objects(
    name: str,
    dimension: int,
    equations: dict,
    matrix=None,
    span=None,
    family: dict | None = None,
) -> AlgebraDocument:
    """Build a document from Python values (1-based ``{k: {(i, j): coeff}}``) via its text form."""
    eq_list = [
        (k, tuple((i, j, parse_scalar(str(c))) for (i, j), c in sorted(terms.items())))
        for k, terms in sorted(equations.items())
    ]
    conv = lambda rows: tuple(tuple(parse_scalar(str(x)) for x in r) for r in rows)  # noqa: E731
    doc = AlgebraDocument(
        name,
        dimension,
        tuple(eq_list),
        conv(matrix) if matrix is not None else None,
        conv(span) if span is not None else None,
        family,
    )
    return parse(emit(doc))
