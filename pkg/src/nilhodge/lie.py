"""Nilpotent Lie algebras given by structure constants.

Convention: for a covector α, ``dα(X, Y) = -α([X, Y])``.  Structure equations
``de^k = Σ a^k_ij e^i∧e^j`` (i < j) therefore give ``[e_i, e_j] = -Σ_k a^k_ij e_k``.
Indices are 0-based throughout the library; documents and reports use 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import DimensionError, JacobiError, NotIdealError, NotNilpotentError
from .linalg import ExactMatrix, Subspace, kernel, quotient_coordinates, vector_field
from .scalars import ONE, ZERO, Field, Scalar, as_scalar

__all__ = [
    "LieAlgebra",
    "DescendingSeries",
    "JacobiReport",
    "bracket",
    "jacobi_check",
    "lower_central_series",
    "center",
    "is_rational_subspace",
    "quotient_algebra",
    "subalgebra",
    "bracket_span",
]


def _axpy(a: Scalar, x: Sequence[Scalar], y: list) -> None:
    for k, xk in enumerate(x):
        if xk:
            y[k] = y[k] + a * xk


class LieAlgebra:
    """A Lie algebra on the basis ``e_0 .. e_{dim-1}``.

    ``constants`` maps ``(i, j, k)`` with ``i < j`` to ``c^k_ij``.  Jacobi and
    nilpotency are checked on construction; ``validate=False`` exists only so
    that :func:`jacobi_check` can diagnose broken input.
    """

    def __init__(self, dim: int, constants: Mapping, name: str = "", validate: bool = True):
        if dim < 0:
            raise DimensionError("negative dimension")
        consts = {}
        for (i, j, k), c in constants.items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionError(f"structure constant index ({i}, {j}, {k}) out of range")
            if i == j:
                raise DimensionError(f"structure constant with i == j == {i}")
            c = as_scalar(c)
            if not c.is_real():
                raise ValueError("structure constants must be real")
            if i > j:
                i, j, c = j, i, -c
            if c:
                consts[(i, j, k)] = consts.get((i, j, k), ZERO) + c
        self.dim = dim
        self.name = name
        self.constants = {key: c for key, c in consts.items() if c}
        self.field = Field.join(*(c.field for c in self.constants.values()))
        table = [[None] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(dim):
                table[i][j] = [ZERO] * dim
        for (i, j, k), c in self.constants.items():
            table[i][j][k] = c
            table[j][i][k] = -c
        self._table = table
        self._series = None
        if validate:
            report = jacobi_check(self)
            if not report.ok:
                i, j, k = report.triple
                raise JacobiError(
                    f"Jacobi identity fails for (e{i + 1}, e{j + 1}, e{k + 1})", report.triple
                )
            self._series = _central_series(self)

    @classmethod
    def from_forms(cls, dim: int, equations: Mapping, name: str = "", validate: bool = True):
        """Build from ``{k: {(i, j): a}}`` meaning ``de^k = Σ a e^i∧e^j``."""
        consts = {}
        for k, terms in equations.items():
            for (i, j), a in terms.items():
                a = as_scalar(a)
                if i > j:
                    i, j, a = j, i, -a
                consts[(i, j, k)] = consts.get((i, j, k), ZERO) - a
        return cls(dim, consts, name, validate)

    @classmethod
    def abelian(cls, dim: int, name: str = ""):
        return cls(dim, {}, name or f"abelian-{dim}")

    def forms(self) -> dict:
        """Structure equations ``{k: {(i, j): a}}`` with ``i < j``."""
        out: dict = {}
        for (i, j, k), c in sorted(self.constants.items(), key=lambda t: (t[0][2], t[0][0], t[0][1])):
            out.setdefault(k, {})[(i, j)] = -c
        return out

    def basis_bracket(self, i: int, j: int) -> list:
        return self._table[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> list:
        return bracket(self, x, y)

    def is_abelian(self) -> bool:
        return not self.constants

    @property
    def series(self) -> "DescendingSeries":
        if self._series is None:
            self._series = _central_series(self)
        return self._series

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> list:
    if len(x) != g.dim or len(y) != g.dim:
        raise DimensionError(f"vectors must have length {g.dim}")
    x = [as_scalar(a) for a in x]
    y = [as_scalar(a) for a in y]
    out = [ZERO] * g.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if yj and i != j:
                _axpy(xi * yj, g._table[i][j], out)
    return out


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    triple: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _unit(n: int, i: int) -> list:
    v = [ZERO] * n
    v[i] = ONE
    return v


def jacobi_check(g: LieAlgebra) -> JacobiReport:
    """Check the cyclic sum on all basis triples ``i < j < k``."""
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = bracket(g, g._table[i][j], _unit(n, k))
                t = bracket(g, g._table[j][k], _unit(n, i))
                u = bracket(g, g._table[k][i], _unit(n, j))
                if any(a + b + c for a, b, c in zip(s, t, u)):
                    return JacobiReport(False, (i, j, k))
    return JacobiReport(True)


@dataclass(frozen=True)
class DescendingSeries:
    """``g = g^0 ⊇ g^1 ⊇ ... ⊇ g^{s+1} = 0``; ``terms[-1]`` is the zero subspace."""

    terms: tuple
    step: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "step", len(self.terms) - 2)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> Subspace:
        return self.terms[i]

    def dims(self) -> list:
        return [t.dim for t in self.terms]


def bracket_span(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """The span of ``[a, b]``."""
    vecs = [bracket(g, x, y) for x in a.vectors() for y in b.vectors()]
    return Subspace.span(vecs, g.dim, Field.join(a.field, b.field, g.field, vector_field(vecs)))


def _central_series(g: LieAlgebra) -> DescendingSeries:
    full = Subspace.full(g.dim, g.field)
    terms = [full]
    while terms[-1].dim:
        nxt = bracket_span(g, terms[-1], full)
        if nxt.dim == terms[-1].dim:
            raise NotNilpotentError(
                f"{g.name or 'algebra'}: descending central series stabilizes in dimension {nxt.dim}"
            )
        terms.append(nxt)
    if len(terms) == 1:
        terms.append(Subspace.zero(g.dim, g.field))
    return DescendingSeries(tuple(terms))


def lower_central_series(g: LieAlgebra) -> DescendingSeries:
    return g.series


def center(g: LieAlgebra) -> Subspace:
    """``{X : [X, g] = 0}`` as the kernel of the stacked adjoint maps."""
    n = g.dim
    ents = {}
    for j in range(n):
        for i in range(n):
            for k, c in enumerate(g._table[i][j]):
                if c:
                    ents[(j * n + k, i)] = c
    m = ExactMatrix(n * n, n, ents, g.field)
    return kernel(m)


def is_rational_subspace(g: LieAlgebra, h: Subspace) -> bool:
    if h.ambient != g.dim:
        raise DimensionError("subspace lives in a different dimension")
    return h.is_rational()


def _coordinates_in(sub: Subspace, v: Sequence[Scalar]) -> list:
    """Coordinates of ``v`` in the RREF basis of ``sub`` (``v`` must lie in it)."""
    return [v[p] for p in sub.pivots]


def is_ideal(g: LieAlgebra, ideal: Subspace, within: Subspace | None = None):
    """Return ``None`` if ``[within, ideal] ⊆ ideal``, else a violating basis pair."""
    within = within if within is not None else Subspace.full(g.dim, ideal.field)
    field = Field.join(ideal.field, within.field, g.field)
    target = ideal.over(field)
    for a, x in enumerate(within.vectors()):
        for b, y in enumerate(ideal.vectors()):
            if not target.contains_vector(bracket(g, x, y)):
                return (a, b)
    return None


def subalgebra(g: LieAlgebra, h: Subspace, name: str = "") -> LieAlgebra:
    """The subalgebra ``h`` on the RREF basis of ``h``."""
    basis = h.vectors()
    consts = {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            v = bracket(g, basis[a], basis[b])
            if not h.over(Field.join(h.field, g.field)).contains_vector(v):
                raise NotIdealError(f"subspace is not closed under the bracket (pair {a + 1}, {b + 1})", (a, b))
            for k, c in enumerate(_coordinates_in(h, v)):
                if c:
                    consts[(a, b, k)] = c
    return LieAlgebra(len(basis), consts, name)


def quotient_algebra(g: LieAlgebra, ideal: Subspace, name: str = "") -> LieAlgebra:
    """``g / ideal`` on the complement coordinates of :func:`quotient_coordinates`."""
    bad = is_ideal(g, ideal)
    if bad is not None:
        raise NotIdealError(
            f"not an ideal: [e{bad[0] + 1}, ideal basis vector {bad[1] + 1}] leaves the subspace", bad
        )
    qm = quotient_coordinates(g.dim, ideal.over(Field.join(ideal.field, g.field)))
    sec = qm.complement.vectors()
    consts = {}
    for a in range(len(sec)):
        for b in range(a + 1, len(sec)):
            for k, c in enumerate(qm.project(bracket(g, sec[a], sec[b]))):
                if c:
                    consts[(a, b, k)] = c
    return LieAlgebra(len(sec), consts, name or f"{g.name}/ideal")
