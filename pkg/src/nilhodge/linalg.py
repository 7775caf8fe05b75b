"""Sparse exact matrices, reduced row echelon forms and the subspace lattice.

Everything here is exact.  Vectors are plain lists of :class:`Scalar`.
Subspaces are stored by the RREF of a spanning set, which makes equality and
hashing structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, FieldMismatchError
from .scalars import ONE, ZERO, Field, Scalar, as_scalar

__all__ = [
    "ExactMatrix",
    "Subspace",
    "QuotientMap",
    "rref",
    "kernel",
    "subspace_ops",
    "quotient_coordinates",
    "inverse",
    "zero_vector",
    "vector_field",
]


def zero_vector(n: int) -> list:
    return [ZERO] * n


def vector_field(vectors: Iterable[Sequence[Scalar]]) -> Field:
    f = Field.Q
    for v in vectors:
        for x in v:
            if x.field > f:
                f = x.field
    return f


class ExactMatrix:
    """Immutable sparse matrix with entries in one of the supported fields.

    ``field`` defaults to the smallest field containing every entry.  An explicit
    ``field`` smaller than some entry raises :class:`FieldMismatchError`.
    """

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries=None, field: Field | None = None):
        ents = {}
        for (r, c), x in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionError(f"entry ({r}, {c}) outside {rows}x{cols}")
            x = as_scalar(x)
            if x:
                ents[(r, c)] = x
        inferred = Field.join(*(x.field for x in ents.values()))
        if field is None:
            field = inferred
        elif inferred > field:
            raise FieldMismatchError(f"entry in {inferred.name} stored in a {Field(field).name} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = ents
        self.field = Field(field)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None, field: Field | None = None):
        rows = [[as_scalar(x) for x in r] for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        ents = {(i, j): x for i, r in enumerate(rows) for j, x in enumerate(r) if x}
        return cls(len(rows), cols, ents, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field | None = None):
        return cls(rows, cols, {}, field)

    @classmethod
    def identity(cls, n: int, field: Field | None = None):
        return cls(n, n, {(i, i): ONE for i in range(n)}, field)

    def __getitem__(self, key) -> Scalar:
        return self.entries.get(key, ZERO)

    def to_rows(self) -> list:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def row(self, i: int) -> list:
        return [self[i, j] for j in range(self.cols)]

    def column(self, j: int) -> list:
        return [self[i, j] for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, {(c, r): x for (r, c), x in self.entries.items()}, self.field)

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, {k: x.conjugate() for k, x in self.entries.items()}, self.field)

    def over(self, field: Field) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, self.entries, Field.join(field, self.field))

    def is_zero(self) -> bool:
        return not self.entries

    def _check_field(self, other: "ExactMatrix") -> Field:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.name} matrix combined with {other.field.name} matrix")
        return self.field

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row: dict = {}
        for (k, c), y in other.entries.items():
            by_row.setdefault(k, []).append((c, y))
        acc: dict = {}
        for (r, k), x in self.entries.items():
            for c, y in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), ZERO) + x * y
        return ExactMatrix(self.rows, other.cols, acc, Field.join(self.field, other.field))

    def apply(self, v: Sequence[Scalar]) -> list:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        out = [ZERO] * self.rows
        for (r, c), x in self.entries.items():
            if v[c]:
                out[r] = out[r] + x * v[c]
        return out

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        acc = dict(self.entries)
        for k, y in other.entries.items():
            acc[k] = acc.get(k, ZERO) + y
        return ExactMatrix(self.rows, self.cols, acc, Field.join(self.field, other.field))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, {k: -x for k, x in self.entries.items()}, self.field)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, s) -> "ExactMatrix":
        s = as_scalar(s)
        return ExactMatrix(self.rows, self.cols, {k: x * s for k, x in self.entries.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.to_rows())
        return f"ExactMatrix({self.rows}x{self.cols} [{body}])"

    @staticmethod
    def vstack(blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        cols = blocks[0].cols
        ents, off = {}, 0
        for b in blocks:
            if b.cols != cols:
                raise DimensionError("column mismatch in vstack")
            ents.update({(r + off, c): x for (r, c), x in b.entries.items()})
            off += b.rows
        return ExactMatrix(off, cols, ents, Field.join(*(b.field for b in blocks)))


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(rows: list, ncols: int) -> tuple:
    """In-place reduction of dict-rows.  Returns (rows, pivots)."""
    pivots = []
    top = 0
    for col in range(ncols):
        best, best_size = None, None
        for r in range(top, len(rows)):
            x = rows[r].get(col)
            if x is not None:
                size = x.digit_size()
                if best is None or size < best_size:
                    best, best_size = r, size
        if best is None:
            continue
        rows[top], rows[best] = rows[best], rows[top]
        prow = rows[top]
        inv = prow[col].inverse()
        if inv != ONE:
            prow = {c: x * inv for c, x in prow.items()}
        else:
            prow = dict(prow)
        prow[col] = ONE
        rows[top] = prow
        for r in range(len(rows)):
            if r == top:
                continue
            f = rows[r].get(col)
            if f is None:
                continue
            row = rows[r]
            for c, x in prow.items():
                y = row.get(c, ZERO) - f * x
                if y:
                    row[c] = y
                else:
                    row.pop(c, None)
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def _dict_rows(m: ExactMatrix) -> list:
    rows = [dict() for _ in range(m.rows)]
    for (r, c), x in m.entries.items():
        rows[r][c] = x
    return rows


def rref(m: ExactMatrix) -> tuple:
    """Reduced row echelon form and rank of ``m``.

    Zero rows are dropped, so the result has exactly ``rank`` rows.  Pivot
    choice: smallest digit size, ties to the lowest row index.
    """
    for x in m.entries.values():
        if x.field > m.field:
            raise FieldMismatchError("matrix entry outside the matrix field")
    rows, pivots = _rref_rows(_dict_rows(m), m.cols)
    ents = {(r, c): x for r, row in enumerate(rows) for c, x in row.items()}
    return ExactMatrix(len(rows), m.cols, ents, m.field), len(pivots)


def rank(m: ExactMatrix) -> int:
    return rref(m)[1]


def pivot_columns(r: ExactMatrix) -> list:
    """Pivot columns of a matrix already in RREF."""
    out = []
    for i in range(r.rows):
        out.append(min(c for (rr, c) in r.entries if rr == i))
    return out


def kernel(m: ExactMatrix) -> "Subspace":
    """Right null space ``{x : m x = 0}`` as a Subspace of ``m.cols``-space."""
    r, _ = rref(m)
    rows = _dict_rows(r)
    pivots = [min(row) for row in rows]
    pivset = set(pivots)
    vecs = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            x = row.get(f)
            if x is not None:
                v[p] = -x
        vecs.append(v)
    return Subspace.span(vecs, m.cols, m.field)


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    aug = dict(m.entries)
    for i in range(n):
        aug[(i, n + i)] = ONE
    r, _ = rref(ExactMatrix(n, 2 * n, aug, m.field))
    if r.rows < n or any(r[i, i] != ONE for i in range(n)):
        raise ZeroDivisionError("singular matrix")
    return ExactMatrix(n, n, {(i, c - n): x for (i, c), x in r.entries.items() if c >= n}, m.field)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of ``field^ambient`` held as the RREF of a spanning set."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, basis: ExactMatrix):
        if basis.cols != ambient:
            raise DimensionError("basis width differs from ambient dimension")
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivot_columns(basis))

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int, field: Field | None = None) -> "Subspace":
        vectors = [list(v) for v in vectors]
        m = ExactMatrix.from_rows(vectors, cols=ambient, field=field) if vectors else ExactMatrix.zeros(0, ambient, field)
        r, _ = rref(m)
        return cls(ambient, r)

    @classmethod
    def zero(cls, ambient: int, field: Field = Field.Q) -> "Subspace":
        return cls(ambient, ExactMatrix.zeros(0, ambient, field))

    @classmethod
    def full(cls, ambient: int, field: Field = Field.Q) -> "Subspace":
        return cls(ambient, ExactMatrix.identity(ambient, field))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def field(self) -> Field:
        return self.basis.field

    def over(self, field: Field) -> "Subspace":
        return Subspace(self.ambient, self.basis.over(field))

    def vectors(self) -> list:
        return self.basis.to_rows()

    def reduce(self, v: Sequence[Scalar]) -> list:
        """Remainder of ``v`` after clearing this subspace's pivot coordinates."""
        if len(v) != self.ambient:
            raise DimensionError("vector length differs from ambient dimension")
        w = list(v)
        rows = _dict_rows(self.basis)
        for row, p in zip(rows, self.pivots):
            f = w[p]
            if f:
                for c, x in row.items():
                    w[c] = w[c] - f * x
        return w

    def contains_vector(self, v: Sequence[Scalar]) -> bool:
        return not any(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            raise DimensionError(f"ambient dimensions differ ({self.ambient} vs {other.ambient})")
        return all(self.contains_vector(v) for v in other.vectors())

    def is_rational(self) -> bool:
        return all(x.is_rational() for x in self.basis.entries.values())

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_ops(self, other)[0]

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_ops(self, other)[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis.entries == other.basis.entries and self.dim == other.dim

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self.basis.entries.items())))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, basis={self.basis.to_rows()})"

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on this subspace (coordinates in the dual basis)."""
        if self.dim == 0:
            return Subspace.full(self.ambient, self.field)
        return kernel(self.basis)

    def image(self, m: ExactMatrix) -> "Subspace":
        """Image under a square matrix acting on column vectors."""
        return Subspace.span((m.apply(v) for v in self.vectors()), self.ambient, Field.join(m.field, self.field))


def _check_pair(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient:
        raise DimensionError(f"ambient dimensions differ ({a.ambient} vs {b.ambient})")
    if a.field != b.field:
        raise FieldMismatchError(f"subspaces over {a.field.name} and {b.field.name}")


def subspace_ops(a: Subspace, b: Subspace) -> tuple:
    """``(a + b, a ∩ b, b ⊆ a)`` for subspaces over the same field."""
    _check_pair(a, b)
    total = Subspace.span(a.vectors() + b.vectors(), a.ambient, a.field)
    if a.dim == 0 or b.dim == 0:
        inter = Subspace.zero(a.ambient, a.field)
    else:
        # x·A = y·B  <=>  [A^T | -B^T] (x, y) = 0
        stacked = ExactMatrix.vstack([a.basis, -b.basis]).transpose()
        ker = kernel(stacked)
        arows = a.basis.to_rows()
        vecs = []
        for coeffs in ker.vectors():
            v = [ZERO] * a.ambient
            for k, x in enumerate(coeffs[: a.dim]):
                if x:
                    v = [vi + x * ai for vi, ai in zip(v, arows[k])]
            vecs.append(v)
        inter = Subspace.span(vecs, a.ambient, a.field)
    contains = total.dim == a.dim
    return total, inter, contains


@dataclass(frozen=True)
class QuotientMap:
    """Linear coordinates on ``ambient / ideal`` through a fixed complement.

    The complement is spanned by ``complement`` (RREF rows, zero on the ideal's
    pivot columns).  ``project`` is defined on the whole space and kills the
    ideal; ``lift`` is the section with ``project(lift(y)) == y``.
    """

    ambient: Subspace
    ideal: Subspace
    complement: Subspace

    @property
    def dim(self) -> int:
        return self.complement.dim

    def project(self, v: Sequence[Scalar]) -> list:
        w = self.ideal.reduce(v)
        return [w[p] for p in self.complement.pivots]

    def lift(self, y: Sequence[Scalar]) -> list:
        if len(y) != self.dim:
            raise DimensionError("quotient coordinate vector has wrong length")
        v = [ZERO] * self.ambient.ambient
        for coef, row in zip(y, self.complement.vectors()):
            if coef:
                v = [a + coef * b for a, b in zip(v, row)]
        return v

    def projection_matrix(self) -> ExactMatrix:
        n = self.ambient.ambient
        cols = []
        for j in range(n):
            e = [ZERO] * n
            e[j] = ONE
            cols.append(self.project(e))
        return ExactMatrix.from_rows(cols, cols=self.dim).transpose() if n else ExactMatrix.zeros(self.dim, 0)

    def section_matrix(self) -> ExactMatrix:
        return self.complement.basis.transpose()


def quotient_coordinates(ambient, ideal: Subspace) -> QuotientMap:
    """Quotient of ``ambient`` (a Subspace, or a dimension meaning the full space) by ``ideal``."""
    if isinstance(ambient, int):
        ambient = Subspace.full(ambient, ideal.field)
    if ambient.field != ideal.field:
        field = Field.join(ambient.field, ideal.field)
        ambient, ideal = ambient.over(field), ideal.over(field)
    if ambient.ambient != ideal.ambient:
        raise DimensionError("ideal and ambient live in different spaces")
    if not ambient.contains(ideal):
        raise DimensionError("ideal is not contained in the ambient subspace")
    rems = [ideal.reduce(v) for v in ambient.vectors()]
    complement = Subspace.span(rems, ambient.ambient, ambient.field)
    return QuotientMap(ambient, ideal, complement)
