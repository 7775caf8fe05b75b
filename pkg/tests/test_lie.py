import pytest
from hypothesis import given, strategies as st

from nilhodge import catalog
from nilhodge.errors import DimensionError, JacobiError, NotIdealError, NotNilpotentError
from nilhodge.lie import (
    LieAlgebra,
    bracket,
    center,
    is_ideal,
    is_rational_subspace,
    jacobi_check,
    lower_central_series,
    quotient_algebra,
    subalgebra,
)
from nilhodge.linalg import Subspace
from nilhodge.scalars import SQRT2, ZERO, as_scalar

from conftest import nilpotent_algebras, scalars


def unit(n, i):
    return [as_scalar(1 if j == i else 0) for j in range(n)]


def span(g, *idx):
    return Subspace.span([unit(g.dim, i) for i in idx], g.dim)


def test_abelian_basics():
    g = LieAlgebra.abelian(4)
    assert bracket(g, unit(4, 0), unit(4, 1)) == [ZERO] * 4
    assert jacobi_check(g).ok
    assert lower_central_series(g).dims() == [4, 0]
    assert lower_central_series(g).step == 0
    assert center(g) == Subspace.full(4)


def test_iwasawa_brackets(iwasawa):
    g, _ = iwasawa
    # de5 = e1∧e3 - e2∧e4 and dα(X,Y) = -α([X,Y]) give [e1,e3] = -e5
    assert bracket(g, unit(6, 0), unit(6, 2)) == [-x for x in unit(6, 4)]
    # de6 = e1∧e4 + e2∧e3: [e1,e4] = [e2,e3] = -e6, [e2,e4] = e5
    assert bracket(g, unit(6, 0), unit(6, 3)) == [-x for x in unit(6, 5)]
    assert bracket(g, unit(6, 1), unit(6, 2)) == [-x for x in unit(6, 5)]
    assert bracket(g, unit(6, 1), unit(6, 3)) == unit(6, 4)
    assert jacobi_check(g).ok


def test_series_and_center(iwasawa, kodaira_thurston):
    g, _ = iwasawa
    s = lower_central_series(g)
    assert s.step == 1
    assert list(s.terms) == [Subspace.full(6), span(g, 4, 5), Subspace.zero(6)]
    assert center(g) == span(g, 4, 5)
    k, _ = kodaira_thurston
    assert list(lower_central_series(k).terms) == [Subspace.full(4), span(k, 2), Subspace.zero(4)]
    assert center(k) == span(k, 2, 3)


def test_jacobi_violation_reports_triple():
    # adding de1 = e2∧e3 to the Iwasawa equations breaks Jacobi on (e2, e3, e4);
    # found by brute force over single ±1 insertions with a naive cyclic-sum check
    eqs = {0: {(1, 2): 1}, 4: {(0, 2): 1, (1, 3): -1}, 5: {(0, 3): 1, (1, 2): 1}}
    g = LieAlgebra.from_forms(6, eqs, validate=False)
    rep = jacobi_check(g)
    assert not rep.ok and rep.triple == (1, 2, 3)
    with pytest.raises(JacobiError) as err:
        LieAlgebra.from_forms(6, eqs)
    assert err.value.triple == (1, 2, 3)


def test_perturbed_central_coefficient_still_jacobi():
    g = LieAlgebra.from_forms(6, {4: {(0, 2): 2, (1, 3): -1}, 5: {(0, 3): 1, (1, 2): 1}})
    assert jacobi_check(g).ok


def test_not_nilpotent():
    # so(3)-like: [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
    with pytest.raises(NotNilpotentError):
        LieAlgebra(3, {(0, 1, 2): 1, (1, 2, 0): 1, (0, 2, 1): -1})


def test_rational_subspaces(iwasawa):
    g, _ = iwasawa
    assert is_rational_subspace(g, Subspace.span([[1, 1, 0, 0, 0, 0]], 6))
    assert not is_rational_subspace(g, Subspace.span([[SQRT2, 1, 0, 0, 0, 0]], 6))
    assert all(is_rational_subspace(g, t) for t in lower_central_series(g).terms)
    with pytest.raises(DimensionError):
        is_rational_subspace(g, Subspace.full(4))


def test_quotients(iwasawa):
    g, _ = iwasawa
    same = quotient_algebra(g, Subspace.zero(6))
    assert same.constants == g.constants
    assert quotient_algebra(g, Subspace.full(6)).dim == 0
    q = quotient_algebra(g, span(g, 4, 5))
    assert q.dim == 4 and q.is_abelian()
    with pytest.raises(NotIdealError):
        quotient_algebra(g, span(g, 0))
    assert is_ideal(g, span(g, 0)) is not None
    h = subalgebra(g, span(g, 0, 2, 4))
    assert h.dim == 3 and not h.is_abelian()


def test_catalog_algebras_valid():
    for name in catalog.NAMES:
        g = catalog.get(name).algebra()
        assert jacobi_check(g).ok
        assert lower_central_series(g).terms[-1].dim == 0


@given(nilpotent_algebras())
def test_structural_properties(g):
    s = lower_central_series(g)
    dims = s.dims()
    assert all(a > b for a, b in zip(dims, dims[1:]))
    for prev, nxt in zip(s.terms, s.terms[1:]):
        assert is_ideal(g, nxt, prev) is None
    last = s.terms[-2]
    assert center(g).contains(last)
    assert quotient_algebra(g, s.terms[1]).is_abelian()
    assert jacobi_check(g).ok


@given(nilpotent_algebras(), st.data())
def test_bracket_bilinear_antisymmetric(g, data):
    n = g.dim
    vec = st.lists(scalars(1), min_size=n, max_size=n)
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    a, b = data.draw(scalars(1)), data.draw(scalars(1))
    lhs = bracket(g, [a * xi + b * yi for xi, yi in zip(x, y)], z)
    rhs = [a * p + b * q for p, q in zip(bracket(g, x, z), bracket(g, y, z))]
    assert lhs == rhs
    assert bracket(g, x, x) == [ZERO] * n
    assert bracket(g, x, y) == [-v for v in bracket(g, y, x)]


@given(nilpotent_algebras(), st.data())
def test_rationality_independent_of_presentation(g, data):
    rows = [[data.draw(st.integers(-2, 2)) for _ in range(g.dim)] for _ in range(2)]
    h = Subspace.span(rows, g.dim)
    mixed = Subspace.span([[a + 3 * b for a, b in zip(rows[0], rows[1])], rows[1]], g.dim)
    assert h == mixed
    assert is_rational_subspace(g, h) and is_rational_subspace(g, mixed)
