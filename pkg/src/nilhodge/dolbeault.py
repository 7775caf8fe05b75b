"""The bigraded complex Λ^{p,q}(g^ℂ)* and its Dolbeault cohomology.

Generators are numbered ``0..n-1`` for ``ω_1..ω_n`` and ``n..2n-1`` for their
conjugates, so a sorted monomial is ``I`` followed by ``J + n`` and the
lexicographic order on ``(I, J)`` is the tuple order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .complex_structure import (
    AdaptedBasis,
    ComplexStructure,
    adapted_basis,
    complex_field,
    holomorphic_forms,
    require_integrable,
)
from .errors import DimensionError, InternalInconsistencyError
from .exterior import Differential, degree_basis, matrix_of
from .lie import LieAlgebra
from .linalg import ExactMatrix, Subspace, inverse, kernel, quotient_coordinates, rref
from .scalars import ZERO, Field

__all__ = [
    "MonomialBasis",
    "BigradedComplex",
    "HodgeTable",
    "generator_differentials",
    "build_complex",
    "hodge_number",
    "cohomology",
    "full_diamond",
    "chevalley_eilenberg_betti",
    "betti_numbers",
    "has_02_component",
]


@dataclass(frozen=True)
class MonomialBasis:
    n: int

    def __call__(self, p: int, q: int) -> list:
        return self.monomials(p, q)

    def monomials(self, p: int, q: int) -> list:
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return []
        n = self.n
        return [I + tuple(j + n for j in J) for I in combinations(range(n), p) for J in combinations(range(n), q)]

    def size(self, p: int, q: int) -> int:
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return 0
        return comb(self.n, p) * comb(self.n, q)

    def bidegree(self, mono: tuple) -> tuple:
        p = sum(1 for a in mono if a < self.n)
        return p, len(mono) - p

    def split(self, mono: tuple) -> tuple:
        n = self.n
        return tuple(a for a in mono if a < n), tuple(a - n for a in mono if a >= n)


def generator_differentials(algebra: LieAlgebra, omegas: Sequence[Sequence]) -> list:
    """``d`` of ``ω_1..ω_n, ω̄_1..ω̄_n`` as 2-forms in those same generators.

    Raises ZeroDivisionError when the forms and conjugates are not a basis.
    """
    m = algebra.dim
    rows = [list(w) for w in omegas] + [[x.conjugate() for x in w] for w in omegas]
    fld = Field.join(algebra.field, Field.QI, *(x.field for r in rows for x in r))
    theta = ExactMatrix.from_rows(rows, cols=m, field=fld)
    tinv = inverse(theta).to_rows()
    eqs = algebra.forms()
    out = []
    for a in range(len(rows)):
        # dθ_a = Σ_k θ_a[k] de^k, then substitute e^i = Σ_b tinv[i][b] θ_b
        acc = {}
        for k, terms in eqs.items():
            ck = rows[a][k]
            if not ck:
                continue
            for (i, j), coef in terms.items():
                w = ck * coef
                for b in range(m):
                    x = tinv[i][b]
                    if not x:
                        continue
                    for c in range(m):
                        y = tinv[j][c]
                        if not y or b == c:
                            continue
                        val = w * x * y
                        key, sign = ((b, c), 1) if b < c else ((c, b), -1)
                        acc[key] = acc.get(key, ZERO) + (val if sign > 0 else -val)
        out.append({k: v for k, v in acc.items() if v})
    return out


@dataclass
class BigradedComplex:
    n: int
    basis: MonomialBasis
    gen_d: list
    dbar: dict
    partial: dict
    field: Field
    omegas: tuple = ()
    _ranks: dict = field(default_factory=dict, repr=False)

    def dbar_matrix(self, p: int, q: int) -> ExactMatrix:
        """``∂̄ : Λ^{p,q} → Λ^{p,q+1}``; an empty matrix outside the range."""
        return self.dbar.get((p, q)) or ExactMatrix.zeros(self.basis.size(p, q + 1), self.basis.size(p, q), self.field)

    def partial_matrix(self, p: int, q: int) -> ExactMatrix:
        return self.partial.get((p, q)) or ExactMatrix.zeros(self.basis.size(p + 1, q), self.basis.size(p, q), self.field)

    def rank(self, which: str, p: int, q: int) -> int:
        key = (which, p, q)
        if key not in self._ranks:
            mat = self.dbar_matrix(p, q) if which == "dbar" else self.partial_matrix(p, q)
            self._ranks[key] = rref(mat)[1] if mat.entries else 0
        return self._ranks[key]


def _split_d(basis: MonomialBasis, dform: dict, p: int, q: int) -> dict:
    parts: dict = {}
    for mono, c in dform.items():
        parts.setdefault(basis.bidegree(mono), {})[mono] = c
    return parts


def has_02_component(J: ComplexStructure, omegas: Sequence | None = None) -> bool:
    """Whether ``d λ^{1,0}`` has a nonzero (0,2)-part (fails exactly when J is not integrable)."""
    if omegas is None:
        omegas = holomorphic_forms(J).vectors()
    n = len(omegas)
    gd = generator_differentials(J.algebra, omegas)
    return any(b >= n and c >= n for f in gd[:n] for (b, c) in f)


def build_complex(J: ComplexStructure, basis: AdaptedBasis | Sequence | None = None, check: bool = True) -> BigradedComplex:
    """Assemble ``∂`` and ``∂̄`` on every bidegree from the generator differentials.

    ``basis`` may be an AdaptedBasis, any list of (1,0)-covectors, or omitted.
    """
    require_integrable(J)
    if basis is None:
        basis = adapted_basis(J)
    omegas = tuple(basis.omegas) if isinstance(basis, AdaptedBasis) else tuple(tuple(w) for w in basis)
    n = J.n
    if len(omegas) != n:
        raise DimensionError(f"need {n} (1,0)-forms, got {len(omegas)}")
    lam = holomorphic_forms(J)
    for w in omegas:
        if not lam.over(Field.join(lam.field, *(x.field for x in w))).contains_vector(list(w)):
            raise DimensionError("a supplied form is not of type (1,0)")
    gen_d = generator_differentials(J.algebra, omegas)
    for l, f in enumerate(gen_d[:n]):
        if any(b >= n and c >= n for (b, c) in f):
            raise InternalInconsistencyError(f"dω_{l + 1} has a (0,2)-component although J is integrable")
    fld = Field.join(complex_field(J.field), *(x.field for f in gen_d for x in f.values()))
    mb = MonomialBasis(n)
    d = Differential(gen_d)
    dbar, partial = {}, {}
    for p in range(n + 1):
        for q in range(n + 1):
            src = mb.monomials(p, q)
            dbar_imgs, del_imgs = [], []
            for mono in src:
                parts = _split_d(mb, d.of_monomial(mono), p, q)
                extra = set(parts) - {(p, q + 1), (p + 1, q)}
                if extra:
                    raise InternalInconsistencyError(f"d has components of bidegree {sorted(extra)}")
                dbar_imgs.append(parts.get((p, q + 1), {}))
                del_imgs.append(parts.get((p + 1, q), {}))
            dbar[(p, q)] = matrix_of(dbar_imgs, mb.monomials(p, q + 1), fld)
            partial[(p, q)] = matrix_of(del_imgs, mb.monomials(p + 1, q), fld)
    cx = BigradedComplex(n, mb, gen_d, dbar, partial, fld, omegas)
    if check:
        verify_identities(cx)
    return cx


def verify_identities(cx: BigradedComplex) -> None:
    n = cx.n
    for p in range(n + 1):
        for q in range(n + 1):
            if not (cx.dbar_matrix(p, q + 1) @ cx.dbar_matrix(p, q)).is_zero():
                raise InternalInconsistencyError(f"∂̄∂̄ ≠ 0 on Λ^({p},{q})")
            if not (cx.partial_matrix(p + 1, q) @ cx.partial_matrix(p, q)).is_zero():
                raise InternalInconsistencyError(f"∂∂ ≠ 0 on Λ^({p},{q})")
            mixed = cx.partial_matrix(p, q + 1) @ cx.dbar_matrix(p, q) + cx.dbar_matrix(p + 1, q) @ cx.partial_matrix(p, q)
            if not mixed.is_zero():
                raise InternalInconsistencyError(f"∂∂̄ + ∂̄∂ ≠ 0 on Λ^({p},{q})")


def _check_bidegree(c: BigradedComplex, p: int, q: int) -> None:
    if not (0 <= p <= c.n and 0 <= q <= c.n):
        raise DimensionError(f"bidegree ({p}, {q}) outside 0..{c.n}")


def hodge_number(c: BigradedComplex, p: int, q: int) -> int:
    _check_bidegree(c, p, q)
    return c.basis.size(p, q) - c.rank("dbar", p, q) - c.rank("dbar", p, q - 1)


def partial_cohomology(c: BigradedComplex, p: int, q: int) -> int:
    """Dimension of ∂-cohomology at (p, q)."""
    _check_bidegree(c, p, q)
    return c.basis.size(p, q) - c.rank("partial", p, q) - c.rank("partial", p - 1, q)


def cohomology(c: BigradedComplex, p: int, q: int) -> tuple:
    """``(h^{p,q}, representative cocycles)`` in monomial coordinates."""
    _check_bidegree(c, p, q)
    size = c.basis.size(p, q)
    cycles = kernel(c.dbar_matrix(p, q)) if size else Subspace.zero(0, c.field)
    incoming = c.dbar_matrix(p, q - 1)
    bounds = Subspace.span([incoming.column(j) for j in range(incoming.cols)], size, c.field)
    cycles = cycles.over(Field.join(cycles.field, c.field))
    qm = quotient_coordinates(cycles, bounds.over(cycles.field))
    return qm.dim, qm.complement.vectors()


def chevalley_eilenberg_betti(g: LieAlgebra, k: int) -> int:
    m = g.dim
    if not 0 <= k <= m:
        raise DimensionError(f"degree {k} outside 0..{m}")
    return _betti_all(g)[k]


def _betti_all(g: LieAlgebra) -> list:
    cached = getattr(g, "_betti", None)
    if cached is not None:
        return cached
    m = g.dim
    gen_d = [{} for _ in range(m)]
    for k, terms in g.forms().items():
        gen_d[k] = dict(terms)
    d = Differential(gen_d)
    ranks = []
    for k in range(m + 1):
        src = degree_basis(m, k)
        mat = matrix_of([d.of_monomial(mono) for mono in src], degree_basis(m, k + 1), g.field)
        ranks.append(rref(mat)[1] if mat.entries else 0)
    betti = [comb(m, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(m + 1)]
    g._betti = betti
    return betti


def betti_numbers(g: LieAlgebra) -> list:
    return list(_betti_all(g))


@dataclass(frozen=True)
class HodgeTable:
    n: int
    h: tuple
    betti: tuple
    euler_ok: bool
    frolicher_ok: bool
    serre_ok: bool
    conjugation_ok: bool

    def __getitem__(self, pq) -> int:
        p, q = pq
        return self.h[p][q]

    def as_dict(self) -> dict:
        return {(p, q): self.h[p][q] for p in range(self.n + 1) for q in range(self.n + 1)}


def full_diamond(c: BigradedComplex, algebra: LieAlgebra | None = None, threads: int = 1) -> HodgeTable:
    """All ``h^{p,q}``, Betti numbers of ``algebra`` and the consistency flags.

    With ``algebra=None`` the Betti numbers are omitted and the Frölicher flag is vacuous.
    """
    n = c.n
    keys = [(w, p, q) for w in ("dbar", "partial") for p in range(n + 1) for q in range(n + 1)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda key: c.rank(*key), keys))
    h = tuple(tuple(hodge_number(c, p, q) for q in range(n + 1)) for p in range(n + 1))
    euler_ok = sum((-1) ** (p + q) * h[p][q] for p in range(n + 1) for q in range(n + 1)) == 0 or n == 0
    serre_ok = all(h[p][q] == h[n - p][n - q] for p in range(n + 1) for q in range(n + 1))
    conj_ok = all(h[p][q] == partial_cohomology(c, q, p) for p in range(n + 1) for q in range(n + 1))
    if algebra is not None:
        betti = tuple(betti_numbers(algebra))
        frol = all(
            betti[k] <= sum(h[p][k - p] for p in range(n + 1) if 0 <= k - p <= n) for k in range(2 * n + 1)
        )
    else:
        betti, frol = (), True
    if not serre_ok:
        raise InternalInconsistencyError("Serre duality h^{p,q} = h^{n-p,n-q} fails")
    return HodgeTable(n, h, betti, euler_ok, frol, serre_ok, conj_ok)
