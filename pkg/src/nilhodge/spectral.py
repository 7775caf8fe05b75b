"""Spectral sequence of the base-degree filtration on Λ(t^ℂ)*.

For a step ``i`` of the series (DJ) the total algebra is ``t = g^{i-1}_J``, the
fibre ``f = g^i_J`` and the base ``b = t/f``.  The adapted basis restricted to
``t`` splits into base forms (level ``i``) and fibre forms (level ``> i``).
``L_k`` is spanned by monomials with at least ``k`` base legs; pages are built
directly from the ``Z_r / (Z_{r-1} + ∂̄ Z_{r-1})`` description and the tensor
formulas are only used as checks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import comb

from .complex_structure import (
    AdaptedBasis,
    ComplexStructure,
    adapted_basis,
    is_integrable,
    is_rational,
    j_series,
    require_integrable,
)
from .dolbeault import BigradedComplex, build_complex, full_diamond, hodge_number
from .errors import DimensionError, InternalInconsistencyError
from .lie import LieAlgebra, quotient_algebra, subalgebra
from .linalg import ExactMatrix, Subspace, kernel, quotient_coordinates, rref
from .scalars import ONE, ZERO, Field

__all__ = [
    "Piece",
    "FibrationData",
    "Filtration",
    "SpectralPage",
    "fibration_data",
    "build_filtration",
    "compute_pages",
    "degeneration_page",
    "tower_report",
    "TowerStep",
    "TowerReport",
]


@dataclass
class Piece:
    """An algebra with complex structure, a chosen (1,0)-basis and its complex."""

    algebra: LieAlgebra
    J: ComplexStructure
    forms: tuple
    complex: BigradedComplex | None = None

    @property
    def n(self) -> int:
        return self.algebra.dim // 2

    def hodge(self) -> tuple:
        if self.complex is None:
            self.complex = build_complex(self.J, self.forms)
        c = self.complex
        return tuple(tuple(hodge_number(c, p, q) for q in range(c.n + 1)) for p in range(c.n + 1))


@dataclass
class FibrationData:
    index: int
    total: Piece
    fibre: Piece
    base: Piece

    @property
    def n_base(self) -> int:
        return self.base.n

    @property
    def n_fibre(self) -> int:
        return self.fibre.n


def _coords(sub: Subspace, v) -> list:
    return [v[p] for p in sub.pivots]


def _dot(a, b):
    s = ZERO
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def _restricted_J(J: ComplexStructure, sub: Subspace, alg: LieAlgebra, name: str) -> ComplexStructure:
    vecs = sub.vectors()
    cols = [_coords(sub, J.apply(v)) for v in vecs]
    mat = ExactMatrix.from_rows(cols, cols=len(vecs)).transpose() if vecs else ExactMatrix.zeros(0, 0)
    return ComplexStructure(alg, mat, name)


def fibration_data(J: ComplexStructure, i: int, basis: AdaptedBasis | None = None) -> FibrationData:
    require_integrable(J)
    series = j_series(J)
    s = series.step
    if not 1 <= i <= s:
        raise DimensionError(f"series step {i} outside 1..{s}")
    basis = basis or adapted_basis(J)
    g = J.algebra
    t_sub, f_sub = series.terms[i - 1], series.terms[i]
    T = subalgebra(g, t_sub, f"{J.name}:t{i}")
    F = subalgebra(g, f_sub, f"{J.name}:f{i}")
    JT = _restricted_J(J, t_sub, T, T.name)
    JF = _restricted_J(J, f_sub, F, F.name)

    f_in_t = Subspace.span([_coords(t_sub, v) for v in f_sub.vectors()], T.dim, f_sub.field)
    B = quotient_algebra(T, f_in_t, f"{J.name}:b{i}")
    qm = quotient_coordinates(T.dim, f_in_t.over(Field.join(f_in_t.field, T.field)))
    sec = qm.complement.vectors()
    jb_cols = [qm.project(JT.apply(v)) for v in sec]
    JB = ComplexStructure(
        B, ExactMatrix.from_rows(jb_cols, cols=len(sec)).transpose() if sec else ExactMatrix.zeros(0, 0), B.name
    )
    for piece in (JT, JF, JB):
        if not is_integrable(piece):
            raise InternalInconsistencyError(f"induced structure on {piece.name} is not integrable")
    if not B.is_abelian():
        raise InternalInconsistencyError(f"base {B.name} is not abelian")

    tvecs, fvecs = t_sub.vectors(), f_sub.vectors()
    t_lifts = [[_dot_vec(t_vec_coeffs, tvecs, g.dim)] for t_vec_coeffs in sec]
    base_idx = [l for l, lev in enumerate(basis.levels) if lev == i]
    fib_idx = [l for l, lev in enumerate(basis.levels) if lev > i]
    for l, lev in enumerate(basis.levels):
        w = basis.omegas[l]
        if lev < i and any(_dot(w, v) for v in tvecs):
            raise InternalInconsistencyError(f"ω_{l + 1} does not vanish on g^{i - 1}_J")
        if lev <= i and any(_dot(w, v) for v in fvecs):
            raise InternalInconsistencyError(f"ω_{l + 1} does not vanish on g^{i}_J")
    total_forms = tuple(tuple(_dot(basis.omegas[l], v) for v in tvecs) for l in base_idx + fib_idx)
    fibre_forms = tuple(tuple(_dot(basis.omegas[l], v) for v in fvecs) for l in fib_idx)
    base_forms = tuple(tuple(_dot(basis.omegas[l], lift[0]) for lift in t_lifts) for l in base_idx)
    return FibrationData(i, Piece(T, JT, total_forms), Piece(F, JF, fibre_forms), Piece(B, JB, base_forms))


def _dot_vec(coeffs, vecs, dim):
    out = [ZERO] * dim
    for c, v in zip(coeffs, vecs):
        if c:
            out = [a + c * b for a, b in zip(out, v)]
    return out


# ---------------------------------------------------------------------------
# filtration


@dataclass
class Filtration:
    data: FibrationData
    complex: BigradedComplex
    base_degree: dict
    chains: dict

    @property
    def length(self) -> int:
        """Largest ``k`` with ``L_k`` possibly nonzero (``dim_R b``)."""
        return 2 * self.data.n_base

    def L(self, p: int, q: int, k: int) -> Subspace:
        chain = self.chains.get((p, q))
        if chain is None:
            return Subspace.zero(0, self.complex.field)
        if k <= 0:
            return chain[0]
        if k >= len(chain):
            return Subspace.zero(chain[0].ambient, self.complex.field)
        return chain[k]


def build_filtration(f: FibrationData) -> Filtration:
    cx = f.total.complex or build_complex(f.total.J, f.total.forms)
    f.total.complex = cx
    n, nb = cx.n, f.n_base
    fld = cx.field

    def bdeg(mono):
        return sum(1 for a in mono if a < nb or n <= a < n + nb)

    degrees, chains = {}, {}
    for p in range(n + 1):
        for q in range(n + 1):
            mons = cx.basis.monomials(p, q)
            degs = [bdeg(m) for m in mons]
            degrees[(p, q)] = degs
            size = len(mons)
            chain = []
            for k in range(2 * nb + 2):
                units = []
                for j, d in enumerate(degs):
                    if d >= k:
                        e = [ZERO] * size
                        e[j] = ONE
                        units.append(e)
                chain.append(Subspace.span(units, size, fld))
            if chain[-1].dim:
                raise InternalInconsistencyError(f"L_{2 * nb + 1} ≠ 0 in bidegree ({p},{q})")
            chains[(p, q)] = chain
            # ∂̄-stability: base degree never drops
            D = cx.dbar_matrix(p, q)
            tdeg = [bdeg(m) for m in cx.basis.monomials(p, q + 1)]
            for (r, c), _x in D.entries.items():
                if tdeg[r] < degs[c]:
                    raise InternalInconsistencyError(f"∂̄ lowers the filtration degree in bidegree ({p},{q})")
    return Filtration(f, cx, degrees, chains)


# ---------------------------------------------------------------------------
# pages


@dataclass
class SpectralPage:
    r: int
    entries: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)

    def dim(self, p: int, q: int, u: int) -> int:
        return self.entries.get((p, q, u, p + q - u), (0, []))[0]

    def dims(self) -> dict:
        return {k: v[0] for k, v in self.entries.items()}


class _PageEngine:
    def __init__(self, fil: Filtration):
        self.fil = fil
        self.cx = fil.complex
        self.n = self.cx.n
        self.fld = self.cx.field
        self._z: dict = {}
        self._q: dict = {}

    def size(self, p, q):
        return self.cx.basis.size(p, q)

    def Z(self, r: int, u: int, p: int, q: int) -> Subspace:
        key = (r, u, p, q)
        if key in self._z:
            return self._z[key]
        size = self.size(p, q)
        if r < 0 or size == 0:
            out = self.fil.L(p, q, u) if size else Subspace.zero(0, self.fld)
        else:
            degs = self.fil.base_degree[(p, q)]
            src = [j for j, d in enumerate(degs) if d >= u]
            tdegs = self.fil.base_degree.get((p, q + 1), [])
            rows = [i for i, d in enumerate(tdegs) if d < u + r]
            D = self.cx.dbar_matrix(p, q)
            sub = ExactMatrix(
                len(rows),
                len(src),
                {(ri, ci): D[i, j] for ri, i in enumerate(rows) for ci, j in enumerate(src) if D[i, j]},
                self.fld,
            )
            ker = kernel(sub).vectors()
            vecs = []
            for kv in ker:
                v = [ZERO] * size
                for ci, j in enumerate(src):
                    v[j] = kv[ci]
                vecs.append(v)
            out = Subspace.span(vecs, size, self.fld)
        out = out.over(self.fld) if out.field != self.fld else out
        self._z[key] = out
        return out

    def image(self, p: int, q: int, sub: Subspace) -> Subspace:
        """``∂̄`` of a subspace of Λ^{p,q}, inside Λ^{p,q+1}."""
        D = self.cx.dbar_matrix(p, q)
        return Subspace.span([D.apply(v) for v in sub.vectors()], self.size(p, q + 1), self.fld)

    def quotient(self, r: int, p: int, q: int, u: int):
        key = (r, p, q, u)
        if key in self._q:
            return self._q[key]
        size = self.size(p, q)
        if size == 0:
            self._q[key] = None
            return None
        z = self.Z(r, u, p, q)
        denom = self.Z(r - 1, u + 1, p, q)
        if self.size(p, q - 1):
            denom = denom + self.image(p, q - 1, self.Z(r - 1, u - r + 1, p, q - 1))
        if not z.contains(denom):
            raise InternalInconsistencyError(f"boundaries escape cycles at r={r}, ({p},{q}), u={u}")
        qm = quotient_coordinates(z, denom)
        self._q[key] = qm
        return qm

    def page(self, r: int) -> SpectralPage:
        pg = SpectralPage(r)
        n, top = self.n, self.fil.length
        for p in range(n + 1):
            for q in range(n + 1):
                for u in range(0, min(top, p + q) + 1):
                    qm = self.quotient(r, p, q, u)
                    if qm is None or qm.dim == 0:
                        continue
                    pg.entries[(p, q, u, p + q - u)] = (qm.dim, qm.complement.vectors())
        for (p, q, u, v), (dim, reps) in pg.entries.items():
            target = self.quotient(r, p, q + 1, u + r) if q + 1 <= n else None
            if target is None or target.dim == 0:
                continue
            D = self.cx.dbar_matrix(p, q)
            cols = [target.project(D.apply(x)) for x in reps]
            mat = ExactMatrix.from_rows(cols, cols=target.dim).transpose()
            if not mat.is_zero():
                pg.differentials[(p, q, u)] = mat
        return pg


def degeneration_page(pages: list) -> int:
    """Smallest ``r`` with ``E_r = E_{r+1} = ...`` among the computed pages."""
    r = len(pages) - 1
    while r > 0 and pages[r - 1].dims() == pages[r].dims():
        r -= 1
    return r


def _rank(m: ExactMatrix) -> int:
    return rref(m)[1] if m.entries else 0


def _tensor_e1(f: FibrationData, hf, p, q, u) -> int:
    nb = f.n_base
    total = 0
    for k in range(0, u + 1):
        a, b = p - k, q - u + k
        if 0 <= a < len(hf) and 0 <= b < len(hf) and k <= nb and u - k <= nb:
            total += hf[a][b] * comb(nb, k) * comb(nb, u - k)
    return total


def _tensor_e2(f: FibrationData, hb, hf, p, q, u) -> int:
    total = 0
    for k in range(0, u + 1):
        a, b = p - k, q - u + k
        if 0 <= a < len(hf) and 0 <= b < len(hf) and k < len(hb) and u - k < len(hb):
            total += hb[k][u - k] * hf[a][b]
    return total


def compute_pages(f: FibrationData, fil: Filtration, up_to: int = 2, check: bool = True) -> list:
    """Pages ``E_0 .. E_R`` with ``R ≥ max(up_to, dim_R b + 1)`` so that ``E_R = E_∞``."""
    if up_to < 2:
        raise DimensionError("compute at least up to page 2")
    eng = _PageEngine(fil)
    last = max(up_to, fil.length + 1)
    pages = [eng.page(r) for r in range(last + 1)]
    if check:
        _check_pages(f, fil, pages)
    return pages


def _check_pages(f: FibrationData, fil: Filtration, pages: list) -> None:
    cx = fil.complex
    n = cx.n
    hf = f.fibre.hodge()
    hb = f.base.hodge()
    problems = []
    spots = [(p, q, u) for p in range(n + 1) for q in range(n + 1) for u in range(0, min(fil.length, p + q) + 1)]

    for p, q, u in spots:
        e0 = pages[0].dim(p, q, u)
        want0 = sum(1 for d in fil.base_degree[(p, q)] if d == u)
        if e0 != want0:
            problems.append(f"E_0 at ({p},{q},{u}) is {e0}, expected {want0}")
        e1, want1 = pages[1].dim(p, q, u), _tensor_e1(f, hf, p, q, u)
        if e1 != want1:
            problems.append(f"E_1 at ({p},{q},{u}) is {e1}, tensor formula gives {want1}")
        e2, want2 = pages[2].dim(p, q, u), _tensor_e2(f, hb, hf, p, q, u)
        if e2 != want2:
            problems.append(f"E_2 at ({p},{q},{u}) is {e2}, tensor formula gives {want2}")

    for r, pg in enumerate(pages):
        for (p, q, u), mat in pg.differentials.items():
            nxt = pg.differentials.get((p, q + 1, u + r))
            if nxt is not None and not (nxt @ mat).is_zero():
                problems.append(f"d_{r} ∘ d_{r} ≠ 0 at ({p},{q},{u})")
        if r + 1 < len(pages):
            for p, q, u in spots:
                here = pg.dim(p, q, u)
                out = pg.differentials.get((p, q, u))
                inc = pg.differentials.get((p, q - 1, u - r))
                expect = here - (_rank(out) if out is not None else 0) - (_rank(inc) if inc is not None else 0)
                got = pages[r + 1].dim(p, q, u)
                if got != expect:
                    problems.append(f"E_{r + 1} at ({p},{q},{u}) is {got}, homology of d_{r} gives {expect}")
                if got > here:
                    problems.append(f"E_{r + 1} grows at ({p},{q},{u})")
    for p in range(n + 1):
        chis = {sum((-1) ** q * pg.dim(p, q, u) for q in range(n + 1) for u in range(fil.length + 1)) for pg in pages}
        if len(chis) != 1:
            problems.append(f"Euler characteristic changes across pages for p={p}")
    e_inf = pages[-1]
    for p in range(n + 1):
        for q in range(n + 1):
            tot = sum(e_inf.dim(p, q, u) for u in range(fil.length + 1))
            h = hodge_number(cx, p, q)
            if tot != h:
                problems.append(f"E_∞ total at ({p},{q}) is {tot} but h^({p},{q}) = {h}")
    if problems:
        raise InternalInconsistencyError(f"step {f.index}: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# inductive report


@dataclass(frozen=True)
class TowerStep:
    index: int
    n_total: int
    n_base: int
    n_fibre: int
    h_total: tuple
    h_base: tuple
    h_fibre: tuple
    degeneration_page: int
    page_dims: tuple


@dataclass(frozen=True)
class TowerReport:
    name: str
    steps: tuple
    final: tuple
    rational: bool


def tower_report(J: ComplexStructure, up_to: int = 2) -> TowerReport:
    """Run the filtration spectral sequence on every step ``i = s, ..., 1``."""
    require_integrable(J)
    rational = is_rational(J)
    if not rational:
        warnings.warn(f"{J.name}: J is not rational; fibration data is computed at the algebra level only")
    basis = adapted_basis(J)
    s = j_series(J).step
    steps = []
    for i in range(s, 0, -1):
        f = fibration_data(J, i, basis)
        fil = build_filtration(f)
        pages = compute_pages(f, fil, up_to)
        steps.append(
            TowerStep(
                i,
                f.total.n,
                f.n_base,
                f.n_fibre,
                f.total.hodge(),
                f.base.hodge(),
                f.fibre.hodge(),
                degeneration_page(pages),
                tuple(tuple(sorted(pg.dims().items())) for pg in pages),
            )
        )
    problems = []
    for a, b in zip(steps, steps[1:]):
        # step i's fibre g^i_J is step (i+1)'s total space; steps run i = s, s-1, ...
        if b.h_fibre != a.h_total:
            problems.append(f"fibre of step {b.index} and total of step {a.index} disagree")
    if steps:
        last = steps[0]
        binom = tuple(tuple(comb(last.n_fibre, p) * comb(last.n_fibre, q) for q in range(last.n_fibre + 1)) for p in range(last.n_fibre + 1))
        if last.h_fibre != binom:
            problems.append("innermost fibre does not have torus Hodge numbers")
    whole = full_diamond(build_complex(J, basis)).h
    if steps and steps[-1].h_total != whole:
        problems.append("step 1 total cohomology differs from the diamond of g")
    if problems:
        raise InternalInconsistencyError(f"{J.name}: " + "; ".join(problems))
    return TowerReport(J.name, tuple(steps), whole, rational)
