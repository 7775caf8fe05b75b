"""One-parameter families of complex structures given by deformed (1,0)-spans."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .complex_structure import (
    AdaptedBasis,
    ComplexStructure,
    adapted_basis,
    is_integrable,
    is_rational,
    structure_from_span,
)
from .dolbeault import HodgeTable, build_complex, full_diamond
from .errors import DegenerateParameterError, DimensionError, NilhodgeError, ValidationError
from .scalars import ZERO, Scalar, as_scalar

__all__ = ["ComplexFamily", "ScanSample", "ScanReport", "instantiate", "scan", "general_deformation", "deform_rule"]


@dataclass(frozen=True)
class ComplexFamily:
    """``λ^{1,0}_t = span(base_l + t * slope_l)`` for covector rows ``base_l``, ``slope_l``."""

    base: ComplexStructure
    rows: tuple
    rule: tuple | None = None
    basis: AdaptedBasis | None = None

    @property
    def name(self) -> str:
        return self.base.name


def deform_rule(J: ComplexStructure, target: int, conjugate: int, basis: AdaptedBasis | None = None) -> ComplexFamily:
    """Replace ``ω_target`` by ``ω_target + t ω̄_conjugate`` (0-based indices into the adapted basis)."""
    basis = basis or adapted_basis(J)
    n = basis.n
    if not (0 <= target < n and 0 <= conjugate < n):
        raise DimensionError(f"family indices must lie in 1..{n}")
    m = J.algebra.dim
    rows = []
    for l, w in enumerate(basis.omegas):
        slope = [x.conjugate() for x in basis.omegas[conjugate]] if l == target else [ZERO] * m
        rows.append((tuple(w), tuple(slope)))
    return ComplexFamily(J, tuple(rows), (target, conjugate), basis)


def general_deformation(J: ComplexStructure) -> ComplexFamily:
    """Deform the last adapted form by ``t ω̄_1``."""
    if J.n < 2:
        raise DimensionError("the canonical family needs complex dimension at least 2")
    return deform_rule(J, J.n - 1, 0)


def instantiate(fam: ComplexFamily, t) -> ComplexStructure:
    """The real ``J_t`` whose +i eigen-covectors are the deformed span."""
    t = as_scalar(t)
    span = [[b + t * s for b, s in zip(base, slope)] for base, slope in fam.rows]
    try:
        return structure_from_span(fam.base.algebra, span, f"{fam.name}[t={t}]")
    except ValidationError as exc:
        raise DegenerateParameterError(f"t = {t}: {exc}") from None


@dataclass(frozen=True)
class ScanSample:
    t: Scalar
    integrable: bool | None
    rational: bool | None
    hodge: HodgeTable | None
    error: str | None = None


@dataclass(frozen=True)
class ScanReport:
    name: str
    samples: tuple
    constancy: dict = field(default_factory=dict)

    def sample(self, t) -> ScanSample:
        t = as_scalar(t)
        for s in self.samples:
            if s.t == t:
                return s
        raise KeyError(str(t))


def _evaluate(fam: ComplexFamily, t: Scalar) -> ScanSample:
    try:
        Jt = instantiate(fam, t)
    except NilhodgeError as exc:
        return ScanSample(t, None, None, None, f"{exc.kind}: {exc}")
    integ = is_integrable(Jt)
    rat = is_rational(Jt)
    table = None
    if integ:
        span = [[b + t * s for b, s in zip(base, slope)] for base, slope in fam.rows]
        table = full_diamond(build_complex(Jt, span), Jt.algebra)
    return ScanSample(t, integ, rat, table)


def scan(fam: ComplexFamily, samples: Sequence, threads: int = 1) -> ScanReport:
    """Evaluate the family at each sample; ``t = 0`` is always included first if absent."""
    ts = [as_scalar(t) for t in samples]
    if ZERO not in ts:
        ts.insert(0, ZERO)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: _evaluate(fam, t), ts))
    else:
        results = [_evaluate(fam, t) for t in ts]
    base = next(r for r in results if r.t == ZERO)
    constancy = {}
    if base.hodge is not None:
        n = base.hodge.n
        for p in range(n + 1):
            for q in range(n + 1):
                constancy[(p, q)] = tuple(
                    str(r.t) for r in results if r.hodge is not None and r.hodge.h[p][q] == base.hodge.h[p][q]
                )
    return ScanReport(fam.name, tuple(results), constancy)
