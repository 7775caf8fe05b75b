import json

import pytest
from hypothesis import given, strategies as st

from nilhodge import catalog
from nilhodge.document import emit, from_objects, parse
from nilhodge.errors import DocumentError, JacobiError


def test_catalog_round_trip():
    for name in catalog.NAMES:
        text = catalog.text(name)
        assert emit(parse(text)) == text


def test_iwasawa_document():
    doc = parse(catalog.text("iwasawa"))
    assert doc.dimension == 6
    assert len(doc.equations) == 2
    assert doc.family == {"deform_index": 3, "conjugate_index": 1}


def test_torus_one():
    doc = parse('{"schema_version": 1, "name": "t", "dimension": 2, "structure_equations": []}')
    g = doc.algebra()
    assert g.dim == 2 and g.is_abelian()
    assert doc.complex_structure() is None


def _doc(**over):
    base = json.loads(catalog.text("kodaira-thurston"))
    base.update(over)
    return json.dumps(base)


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d.update(dimension=3), "even"),
        (lambda d: d.update(extra=1), "unknown field"),
        (lambda d: d.pop("name"), "missing field"),
        (lambda d: d["structure_equations"][0]["terms"][0].update(i=2, j=2), "i < j"),
        (lambda d: d["structure_equations"][0]["terms"][0].update(coefficient="1*i"), "rational"),
        (lambda d: d["structure_equations"][0]["terms"][0].update(coefficient="x"), "coefficient"),
        (lambda d: d["structure_equations"].append(d["structure_equations"][0]), "duplicate"),
        (lambda d: d.update(schema_version=2), "version"),
        (lambda d: d["complex_structure"].update(holomorphic_span=[]), "exactly one"),
    ],
)
def test_invalid_documents(mutate, message):
    d = json.loads(catalog.text("kodaira-thurston"))
    mutate(d)
    with pytest.raises(DocumentError, match=message):
        parse(json.dumps(d))


def test_syntax_errors_have_position():
    with pytest.raises(DocumentError, match="line 1, column"):
        parse('{"schema_version": 1,,}')
    with pytest.raises(DocumentError, match="non-integer"):
        parse('{"schema_version": 1.0}')
    with pytest.raises(DocumentError, match="only objects"):
        parse('{"schema_version": true}')


def test_jacobi_violation_on_load():
    doc = from_objects("bad", 6, {1: {(2, 3): 1}, 5: {(1, 3): 1, (2, 4): -1}, 6: {(1, 4): 1, (2, 3): 1}})
    with pytest.raises(JacobiError):
        doc.algebra()


coef = st.integers(-3, 3).filter(bool)


@given(st.dictionaries(st.tuples(st.integers(1, 3), st.integers(1, 3)).filter(lambda t: t[0] < t[1]), coef, max_size=3))
def test_emit_parse_round_trip(terms):
    doc = from_objects("x", 4, {4: terms} if terms else {})
    text = emit(doc)
    assert emit(parse(text)) == text
    assert parse(text) == doc
