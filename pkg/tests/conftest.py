from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from nilhodge import catalog
from nilhodge.scalars import Scalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def scalars(draw, field=4):
    coords = [draw(small_fracs) for _ in range(field)]
    return Scalar(*coords)


@st.composite
def rational_rows(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    entry = st.one_of(st.just(Fraction(0)), small_fracs)
    return [[draw(entry) for _ in range(c)] for _ in range(r)], c


@pytest.fixture(scope="session")
def iwasawa():
    doc = catalog.get("iwasawa")
    g = doc.algebra()
    return g, doc.complex_structure(g)


@pytest.fixture(scope="session")
def kodaira_thurston():
    doc = catalog.get("kodaira-thurston")
    g = doc.algebra()
    return g, doc.complex_structure(g)


def catalog_structures():
    out = []
    for name in catalog.NAMES:
        doc = catalog.get(name)
        g = doc.algebra()
        out.append((name, g, doc.complex_structure(g)))
    return out


@st.composite
def basis_changes(draw, n, bound=2):
    """An invertible integer matrix, as an ExactMatrix."""
    from nilhodge.linalg import ExactMatrix, rank

    rows = [[draw(st.integers(-bound, bound)) for _ in range(n)] for _ in range(n)]
    m = ExactMatrix.from_rows(rows, cols=n)
    from hypothesis import assume

    assume(rank(m) == n)
    return m


@st.composite
def nilpotent_algebras(draw):
    """A small nilpotent algebra written in a random rational basis."""
    from nilhodge.sampling import SMALL_ALGEBRAS, change_basis, small_algebra

    name = draw(st.sampled_from(sorted(SMALL_ALGEBRAS)))
    g = small_algebra(name)
    return change_basis(g, draw(basis_changes(g.dim, 1)))


@st.composite
def almost_complex(draw):
    """A random rational J = P J_std P^{-1} on a random small algebra; usually not integrable."""
    from nilhodge.complex_structure import ComplexStructure
    from nilhodge.linalg import inverse
    from nilhodge.sampling import SMALL_ALGEBRAS, small_algebra, standard_j

    name = draw(st.sampled_from(sorted(SMALL_ALGEBRAS)))
    g = small_algebra(name)
    P = draw(basis_changes(g.dim, 1))
    return ComplexStructure(g, P @ standard_j(g.dim) @ inverse(P), name)


@st.composite
def integrable_structures(draw):
    """A catalog structure transported to a random rational basis."""
    from nilhodge.sampling import transport

    name = draw(st.sampled_from(catalog.NAMES))
    doc = catalog.get(name)
    J = doc.complex_structure()
    return transport(J, draw(basis_changes(J.algebra.dim, 1)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title, detail = results[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}{' | ' + detail if detail else ''}")
