"""Invariant complex structures on nilpotent Lie algebras.

``J`` acts on column vectors in the distinguished basis.  A covector ``ω`` (row
vector) has type (1,0) when ``ω J = i ω``, so ``λ^{1,0} = ker(J^T - i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, InternalInconsistencyError, NotIntegrableError, ValidationError
from .lie import LieAlgebra, bracket, bracket_span, is_ideal
from .linalg import ExactMatrix, Subspace, kernel, quotient_coordinates
from .scalars import I, ONE, ZERO, Field, Scalar, as_scalar

__all__ = [
    "ComplexStructure",
    "JSeries",
    "AdaptedBasis",
    "nijenhuis",
    "nijenhuis_witness",
    "is_integrable",
    "is_rational",
    "is_abelian",
    "is_complex_parallelizable",
    "holomorphic_forms",
    "j_series",
    "annihilator_series",
    "adapted_basis",
    "two_form_of",
    "in_generated_ideal",
]


def complex_field(f: Field) -> Field:
    return Field.join(f, Field.QI)


class ComplexStructure:
    """A real endomorphism ``J`` with ``J² = -Id`` (integrability not required)."""

    def __init__(self, algebra: LieAlgebra, matrix, name: str = ""):
        if not isinstance(matrix, ExactMatrix):
            matrix = ExactMatrix.from_rows(matrix)
        n = algebra.dim
        if matrix.rows != n or matrix.cols != n:
            raise DimensionError(f"J must be {n}x{n}")
        if n % 2:
            raise DimensionError("a complex structure needs even dimension")
        if not all(x.is_real() for x in matrix.entries.values()):
            raise ValidationError("J must be a real endomorphism (no i-component)")
        if matrix @ matrix != -ExactMatrix.identity(n):
            raise ValidationError("J² ≠ -Id")
        self.algebra = algebra
        self.matrix = matrix
        self.name = name or algebra.name
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return self.algebra.dim // 2

    @property
    def field(self) -> Field:
        return Field.join(self.matrix.field, self.algebra.field)

    def apply(self, v: Sequence) -> list:
        return self.matrix.apply([as_scalar(x) for x in v])

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def __repr__(self) -> str:
        return f"ComplexStructure({self.name!r}, n={self.n})"


def _unit(n: int, i: int) -> list:
    v = [ZERO] * n
    v[i] = ONE
    return v


def nijenhuis(J: ComplexStructure, x: Sequence, y: Sequence) -> list:
    """``N(x,y) = [x,y] + J[Jx,y] + J[x,Jy] - [Jx,Jy]``."""
    g = J.algebra
    jx, jy = J.apply(x), J.apply(y)
    a = bracket(g, x, y)
    b = J.apply(bracket(g, jx, y))
    c = J.apply(bracket(g, x, jy))
    d = bracket(g, jx, jy)
    return [p + q + r - s for p, q, r, s in zip(a, b, c, d)]


def nijenhuis_witness(J: ComplexStructure):
    """First basis pair ``(i, j)`` with ``N(e_i, e_j) ≠ 0``, or ``None``."""

    def compute():
        m = J.algebra.dim
        for i in range(m):
            for j in range(i + 1, m):
                if any(nijenhuis(J, _unit(m, i), _unit(m, j))):
                    return (i, j)
        return None

    return J._memo("nijenhuis", compute)


def is_integrable(J: ComplexStructure) -> bool:
    return nijenhuis_witness(J) is None


def require_integrable(J: ComplexStructure) -> None:
    bad = nijenhuis_witness(J)
    if bad is not None:
        raise NotIntegrableError(
            f"{J.name}: Nijenhuis tensor nonzero on (e{bad[0] + 1}, e{bad[1] + 1})", bad
        )


def is_rational(J: ComplexStructure) -> bool:
    return all(x.is_rational() for x in J.matrix.entries.values())


def is_abelian(J: ComplexStructure) -> bool:
    """``[JX, JY] = [X, Y]`` on all basis pairs."""
    g, m = J.algebra, J.algebra.dim
    cols = [J.matrix.column(i) for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if bracket(g, cols[i], cols[j]) != g.basis_bracket(i, j):
                return False
    return True


def is_complex_parallelizable(J: ComplexStructure) -> bool:
    """``[JX, Y] = J[X, Y]``: the bracket is complex bilinear."""
    g, m = J.algebra, J.algebra.dim
    cols = [J.matrix.column(i) for i in range(m)]
    for i in range(m):
        for j in range(m):
            if bracket(g, cols[i], _unit(m, j)) != J.apply(g.basis_bracket(i, j)):
                return False
    return True


def holomorphic_forms(J: ComplexStructure) -> Subspace:
    """``λ^{1,0}`` as the kernel of ``J^T - i Id`` over the complexified field."""

    def compute():
        m = J.algebra.dim
        field = complex_field(J.field)
        shifted = J.matrix.transpose().over(field) - ExactMatrix.identity(m, field).scale(I)
        lam = kernel(ExactMatrix(m, m, shifted.entries, field))
        if lam.dim != J.n:
            raise InternalInconsistencyError(f"λ^(1,0) has dimension {lam.dim}, expected {J.n}")
        return lam

    return J._memo("lambda10", compute)


def holomorphic_vectors(J: ComplexStructure) -> Subspace:
    """``g^{1,0} = ker(J - i Id)`` inside the complexified algebra."""
    m = J.algebra.dim
    field = complex_field(J.field)
    shifted = J.matrix.over(field) - ExactMatrix.identity(m, field).scale(I)
    return kernel(ExactMatrix(m, m, shifted.entries, field))


# ---------------------------------------------------------------------------
# the series (DJ)


@dataclass(frozen=True)
class StepReport:
    """Ideal and abelian-quotient facts about ``g^i_J`` inside ``g^{i-1}_J``."""

    index: int
    is_ideal: bool
    quotient_abelian: bool
    ideal_of_g: bool
    rational: bool | None


@dataclass(frozen=True)
class JSeries:
    terms: tuple
    steps: tuple
    last_term_abelian: bool
    j_invariant: bool
    first_inclusion_strict: bool

    @property
    def step(self) -> int:
        return len(self.terms) - 2

    def dims(self) -> list:
        return [t.dim for t in self.terms]

    def complex_dims(self) -> list:
        return [t.dim // 2 for t in self.terms]


def _is_abelian_subspace(g: LieAlgebra, h: Subspace) -> bool:
    return bracket_span(g, h, h).dim == 0


def j_series(J: ComplexStructure) -> JSeries:
    """``g^i_J = g^i + J g^i`` with the ideal and abelian checks recomputed."""
    require_integrable(J)

    def compute():
        g = J.algebra
        field = J.field
        rational = is_rational(J)
        terms = []
        for gi in g.series.terms:
            gi = gi.over(field)
            terms.append(gi + gi.image(J.matrix).over(field))
        j_inv = all(t.contains(t.image(J.matrix)) for t in terms)
        steps = []
        for i in range(1, len(terms)):
            prev, cur = terms[i - 1], terms[i]
            ideal = is_ideal(g, cur, within=prev) is None
            quot = prev.contains(cur) and cur.contains(bracket_span(g, prev, prev))
            whole = is_ideal(g, cur) is None
            steps.append(StepReport(i, ideal, quot, whole, cur.is_rational() if rational else None))
        last = terms[-2] if len(terms) >= 2 else terms[0]
        last_ab = _is_abelian_subspace(g, last)
        strict = terms[1].dim < terms[0].dim if g.dim else True
        series = JSeries(tuple(terms), tuple(steps), last_ab, j_inv, strict)
        problems = []
        if not j_inv:
            problems.append("a term is not J-invariant")
        for st in steps:
            if not st.is_ideal:
                problems.append(f"g^{st.index}_J is not an ideal of g^{st.index - 1}_J")
            if not st.quotient_abelian:
                problems.append(f"g^{st.index - 1}_J / g^{st.index}_J is not abelian")
            if st.rational is False:
                problems.append(f"g^{st.index}_J is not rational although J is")
        if not last_ab:
            problems.append("last nonzero term is not abelian")
        if not strict:
            problems.append("g^1_J = g")
        if problems:
            raise InternalInconsistencyError(f"{J.name}: " + "; ".join(problems))
        return series

    return J._memo("jseries", compute)


# ---------------------------------------------------------------------------
# annihilator series and adapted basis


def _lambda2_index(m: int) -> dict:
    idx = {}
    for a in range(m):
        for b in range(a + 1, m):
            idx[(a, b)] = len(idx)
    return idx


def annihilator_series(J_or_g) -> list:
    """``V_0 ⊆ V_1 ⊆ ... ⊆ V_{s+1}`` computed inductively and as annihilators of ``g^i``.

    Accepts a ComplexStructure or a bare LieAlgebra (only the series (D) matters).
    """
    g = J_or_g.algebra if isinstance(J_or_g, ComplexStructure) else J_or_g
    m = g.dim
    idx = _lambda2_index(m)
    field = g.field
    # column k: de^k in Λ² coordinates
    dcols = {}
    for k, terms in g.forms().items():
        for (i, j), a in terms.items():
            dcols[(idx[(i, j)], k)] = a
    dmat = ExactMatrix(len(idx), m, dcols, field)

    inductive = [Subspace.zero(m, field)]
    target = len(g.series.terms)
    while len(inductive) < target:
        w = inductive[-1].vectors()
        wedges = []
        for a in range(len(w)):
            for b in range(a + 1, len(w)):
                vec = [ZERO] * len(idx)
                for (i, j), r in idx.items():
                    vec[r] = w[a][i] * w[b][j] - w[a][j] * w[b][i]
                wedges.append(vec)
        lam2w = Subspace.span(wedges, len(idx), field)
        if not idx:
            inductive.append(Subspace.full(m, field))
            continue
        qm = quotient_coordinates(len(idx), lam2w)
        inductive.append(kernel(qm.projection_matrix() @ dmat))

    # V_i annihilates g^i, so V_0 = ann(g) and V_{s+1} = ann(0) = V
    by_annihilator = [t.over(field).annihilator() for t in g.series.terms]
    if by_annihilator != inductive:
        raise InternalInconsistencyError("inductive V_i differ from the annihilators of g^i")
    return inductive


def two_form_of(g: LieAlgebra, omega: Sequence) -> list:
    """``dω`` as an antisymmetric matrix ``M[i][j] = dω(e_i, e_j) = -ω([e_i, e_j])``."""
    m = g.dim
    out = [[ZERO] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            br = g.basis_bracket(i, j)
            v = ZERO
            for k, c in enumerate(br):
                if c and omega[k]:
                    v = v + omega[k] * c
            out[i][j] = -v
            out[j][i] = v
    return out


def _pair(beta: list, x: Sequence, y: Sequence) -> Scalar:
    s = ZERO
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if yj and beta[i][j]:
                s = s + xi * yj * beta[i][j]
    return s


def in_generated_ideal(beta: list, generators: Subspace) -> bool:
    """Whether a 2-form lies in the ideal generated by a space of 1-forms.

    Equivalent to ``β(X, Y) = 0`` for all ``X, Y`` annihilated by the generators.
    """
    ann = generators.annihilator().vectors()
    return all(not _pair(beta, ann[a], ann[b]) for a in range(len(ann)) for b in range(a + 1, len(ann)))


def in_exterior_square(beta: list, space: Subspace) -> bool:
    """Whether a 2-form lies in ``Λ² space``: ``ι_X β = 0`` for ``X`` annihilated by ``space``."""
    ann = space.annihilator().vectors()
    m = space.ambient
    return all(not _pair(beta, x, _unit(m, j)) for x in ann for j in range(m))


@dataclass(frozen=True)
class AdaptedBasis:
    """Ordered (1,0)-forms compatible with the flag ``V_i^{1,0}``.

    ``levels[l]`` is the ``i`` with ``omegas[l] ∈ V_i^{1,0} \\ V_{i-1}^{1,0}``.
    """

    omegas: tuple
    levels: tuple
    v_series: tuple
    v10_series: tuple
    field: Field

    @property
    def n(self) -> int:
        return len(self.omegas)

    def conjugates(self) -> list:
        return [[x.conjugate() for x in w] for w in self.omegas]

    def at_level(self, i: int) -> list:
        return [l for l, lev in enumerate(self.levels) if lev == i]


def adapted_basis(J: ComplexStructure) -> AdaptedBasis:
    require_integrable(J)
    return J._memo("adapted", lambda: _adapted_basis(J))


def _adapted_basis(J: ComplexStructure) -> AdaptedBasis:
    g = J.algebra
    m = g.dim
    field = complex_field(J.field)
    lam = holomorphic_forms(J)
    series = j_series(J)
    v10 = []
    for term in series.terms:
        v10.append(term.over(field).annihilator() & lam.over(field) if term.dim else lam)
    v10[0] = Subspace.zero(m, field)

    omegas, levels = [], []
    current = Subspace.zero(m, field)
    for i in range(1, len(v10)):
        for vec in v10[i].vectors():
            if not current.contains_vector(vec):
                omegas.append(vec)
                levels.append(i)
                current = Subspace.span(omegas, m, field)
    if len(omegas) != J.n or current != lam:
        raise InternalInconsistencyError("adapted basis does not span λ^(1,0)")

    vseries = annihilator_series(g)
    basis = AdaptedBasis(tuple(omegas), tuple(levels), tuple(vseries), tuple(v10), field)

    problems = []
    # dimension count: dim V_i^{1,0} - dim V_{i-1}^{1,0} = dim_C g^{i-1}_J / g^i_J
    for i in range(1, len(v10)):
        jump = v10[i].dim - v10[i - 1].dim
        if 2 * jump != series.terms[i - 1].dim - series.terms[i].dim:
            problems.append(f"dim V_{i}^(1,0)/V_{i - 1}^(1,0) = {jump} does not match the (DJ) quotient")
    forms = [two_form_of(g, w) for w in omegas]
    for l, (beta, lev) in enumerate(zip(forms, levels)):
        earlier = [omegas[k] for k in range(len(omegas)) if levels[k] < lev]
        if not in_generated_ideal(beta, Subspace.span(earlier, m, field)):
            problems.append(f"dω_{l + 1} is not in the ideal generated by lower-level forms")
    closed = [l for l, beta in enumerate(forms) if not any(x for row in beta for x in row)]
    if not closed:
        problems.append("no closed (1,0)-form")
    if is_abelian(J):
        hol_vec = holomorphic_vectors(J)
        antihol = Subspace.span([[x.conjugate() for x in v] for v in hol_vec.vectors()], m, field)
        for l, beta in enumerate(forms):
            prior = omegas[:l] + [[x.conjugate() for x in w] for w in omegas[:l]]
            if not in_exterior_square(beta, Subspace.span(prior, m, field)):
                problems.append(f"dω_{l + 1} is not in Λ² of earlier forms and conjugates")
            for space in (hol_vec, antihol):
                vs = space.vectors()
                if any(_pair(beta, vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs))):
                    problems.append(f"dω_{l + 1} is not of type (1,1)")
    if problems:
        raise InternalInconsistencyError(f"{J.name}: " + "; ".join(problems))
    return basis


def structure_from_span(algebra: LieAlgebra, span: Sequence[Sequence], name: str = "") -> ComplexStructure:
    """The real ``J`` having ``span`` as its space of (1,0)-forms.

    With ``Θ`` the span stacked over its conjugate, ``Θ J = diag(i, -i) Θ``.
    Raises :class:`ValidationError` when the span meets its conjugate or the
    solution is not real.
    """
    from .linalg import inverse

    m = algebra.dim
    span = [[as_scalar(x) for x in row] for row in span]
    if 2 * len(span) != m:
        raise DimensionError(f"need {m // 2} holomorphic covectors, got {len(span)}")
    rows = span + [[x.conjugate() for x in w] for w in span]
    fld = Field.join(Field.QI, *(x.field for r in rows for x in r))
    theta = ExactMatrix.from_rows(rows, cols=m, field=fld)
    try:
        tinv = inverse(theta)
    except ZeroDivisionError:
        raise ValidationError("holomorphic span meets its conjugate") from None
    n = len(span)
    diag = ExactMatrix(m, m, {(k, k): (I if k < n else -I) for k in range(m)}, fld)
    jm = tinv @ diag @ theta
    if not all(x.is_real() for x in jm.entries.values()):
        raise ValidationError("recovered endomorphism is not real")
    return ComplexStructure(algebra, ExactMatrix(m, m, jm.entries), name)
