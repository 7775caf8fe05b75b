import warnings

import pytest
import sympy as sp

import oracle
from nilhodge import catalog
from nilhodge.deformation import general_deformation, instantiate
from nilhodge.document import from_objects
from nilhodge.dolbeault import full_diamond, build_complex
from nilhodge.errors import DimensionError, InternalInconsistencyError
from nilhodge.spectral import build_filtration, compute_pages, fibration_data, tower_report

# dω1 = 0, dω2 = ω1∧ω̄1, dω3 = ω1∧ω̄2 + ω2∧ω̄1 with ω_l = e^{2l-1} + i e^{2l}
THREE_STEP_EQS = {4: {(1, 2): -2}, 6: {(1, 4): -2, (2, 3): 2}}
THREE_STEP_SPAN = [["1", "1*i", 0, 0, 0, 0], [0, 0, "1", "1*i", 0, 0], [0, 0, 0, 0, "1", "1*i"]]


def three_step():
    return from_objects("three-step", 6, THREE_STEP_EQS, span=THREE_STEP_SPAN).complex_structure()


def structure(name):
    return catalog.get(name).complex_structure()


def test_fibration_examples():
    f = fibration_data(structure("iwasawa"), 1)
    assert (f.n_base, f.n_fibre) == (2, 1)
    assert f.base.algebra.is_abelian() and f.fibre.algebra.is_abelian()
    f = fibration_data(structure("kodaira-thurston"), 1)
    assert (f.n_base, f.n_fibre) == (1, 1)
    assert len(f.base.forms) + len(f.fibre.forms) == f.total.n
    with pytest.raises(DimensionError):
        fibration_data(structure("torus-2"), 1)


@pytest.mark.parametrize("name", ["iwasawa", "kodaira-thurston"])
def test_filtration_bounds(name):
    f = fibration_data(structure(name), 1)
    fil = build_filtration(f)
    n = fil.complex.n
    for p in range(n + 1):
        for q in range(n + 1):
            assert fil.L(p, q, 0).dim == fil.complex.basis.size(p, q)
            assert fil.L(p, q, fil.length + 1).dim == 0
            for k in range(fil.length + 1):
                assert fil.L(p, q, k).contains(fil.L(p, q, k + 1))
                # ∂̄ L_k ⊆ L_k on basis vectors
                src = fil.L(p, q, k)
                if q < n:
                    D = fil.complex.dbar_matrix(p, q)
                    tgt = fil.L(p, q + 1, k)
                    for v in src.vectors():
                        assert tgt.contains_vector(D.apply(v))


@pytest.mark.parametrize("name", ["iwasawa", "kodaira-thurston"])
def test_pages_structure(name):
    J = structure(name)
    f = fibration_data(J, 1)
    fil = build_filtration(f)
    pages = compute_pages(f, fil, up_to=2)
    n = fil.complex.n
    for pg in pages:
        for (p, q, u, v), (d, reps) in pg.entries.items():
            assert p + q == u + v and min(p, q, u, v) >= 0
            assert len(reps) == d
    for r, (a, b) in enumerate(zip(pages, pages[1:])):
        for key, (d, _) in b.entries.items():
            assert d <= a.entries.get(key, (0, []))[0]
        for (p, q, u), mat in a.differentials.items():
            nxt = a.differentials.get((p, q + 1, u + r))
            if nxt is not None:
                assert (nxt @ mat).is_zero()
    h = full_diamond(build_complex(J)).h
    for p in range(n + 1):
        for q in range(n + 1):
            assert sum(pages[-1].dim(p, q, u) for u in range(fil.length + 1)) == h[p][q]


@pytest.mark.parametrize("name", ["iwasawa", "kodaira-thurston"])
def test_pages_match_dense_oracle(name):
    J = structure(name)
    f = fibration_data(J, 1)
    fil = build_filtration(f)
    pages = compute_pages(f, fil, up_to=3)
    m, eqs, _ = oracle.from_engine_objects(J.algebra, J)
    span = [[sp.sympify(str(x).replace("s2", "sqrt(2)").replace("i", "I")) for x in w] for w in f.total.forms]
    nb, n = f.n_base, f.total.n
    want = oracle.filtered_pages(m, eqs, span, set(range(nb)) | {n + k for k in range(nb)}, 3)
    for (r, p, q, u), d in want.items():
        assert pages[r].dim(p, q, u) == d, (r, p, q, u)


def test_tower_reports():
    rep = tower_report(structure("torus-2"))
    assert rep.steps == ()
    rep = tower_report(structure("iwasawa"))
    assert len(rep.steps) == 1
    assert rep.final == full_diamond(build_complex(structure("iwasawa"))).h
    assert rep.steps[0].h_base == ((1, 2, 1), (2, 4, 2), (1, 2, 1))
    assert rep.steps[0].h_fibre == ((1, 1), (1, 1))
    rep = tower_report(structure("kodaira-thurston"))
    assert len(rep.steps) == 1
    assert rep.steps[0].degeneration_page <= 3


def test_non_rational_structure_warns():
    Jt = instantiate(general_deformation(structure("iwasawa")), "s2")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = tower_report(Jt)
    assert any("not rational" in str(w.message) for w in caught)
    assert not rep.rational


def test_three_step_tensor_formula_fails_on_invariant_side():
    # The base acts on the fibre classes through dω3 = ω1∧ω̄2 + ω2∧ω̄1, so on the
    # invariant side E_2 is strictly smaller than H(b) ⊗ H(f) at step 1.  The
    # pages themselves agree with the dense oracle; only the product formula fails.
    J = three_step()
    f = fibration_data(J, 1)
    fil = build_filtration(f)
    pages = compute_pages(f, fil, up_to=3, check=False)
    eqs = {k - 1: {(i - 1, j - 1): c for (i, j), c in t.items()} for k, t in THREE_STEP_EQS.items()}
    span = [[sp.sympify(str(x).replace("i", "I")) for x in row] for row in THREE_STEP_SPAN]
    want = oracle.filtered_pages(6, eqs, span, {0, 3}, 3)
    assert all(pages[r].dim(p, q, u) == d for (r, p, q, u), d in want.items())
    assert pages[2].dim(1, 0, 0) == 1  # H^{0,0}(b) ⊗ H^{1,0}(f) would give 2
    with pytest.raises(InternalInconsistencyError, match="E_2"):
        compute_pages(f, fil, up_to=2)
    # the inner step (fibre and base both tori) satisfies every check
    f2 = fibration_data(J, 2)
    compute_pages(f2, build_filtration(f2), up_to=2)
