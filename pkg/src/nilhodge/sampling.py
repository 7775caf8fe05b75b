"""Random rational test material: basis changes and almost-complex structures."""

from __future__ import annotations

import random
from typing import Iterator

from .complex_structure import ComplexStructure
from .lie import LieAlgebra
from .linalg import ExactMatrix, inverse
from .scalars import as_scalar

# small nilpotent algebras as structure equations {k: {(i, j): a}} (0-based)
SMALL_ALGEBRAS = {
    "abelian-4": (4, {}),
    "h3+R": (4, {2: {(0, 1): 1}}),
    "filiform-4": (4, {2: {(0, 1): 1}, 3: {(0, 2): 1}}),
    "h3+R3": (6, {5: {(0, 1): 1}}),
    "h3+h3": (6, {4: {(0, 1): 1}, 5: {(2, 3): 1}}),
    "iwasawa": (6, {4: {(0, 2): 1, (1, 3): -1}, 5: {(0, 3): 1, (1, 2): 1}}),
    "h5+R": (6, {4: {(0, 1): 1, (2, 3): 1}}),
}


def small_algebra(name: str) -> LieAlgebra:
    dim, eqs = SMALL_ALGEBRAS[name]
    return LieAlgebra.from_forms(dim, eqs, name)


def standard_j(dim: int) -> ExactMatrix:
    ent = {}
    for a in range(0, dim, 2):
        ent[(a + 1, a)] = as_scalar(1)
        ent[(a, a + 1)] = as_scalar(-1)
    return ExactMatrix(dim, dim, ent)


def random_invertible(rng: random.Random, n: int, bound: int = 2) -> ExactMatrix:
    """Unimodular-ish random rational matrix: unit lower times unit upper, plus a diagonal."""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        m = ExactMatrix.from_rows(rows, cols=n)
        try:
            inverse(m)
        except ZeroDivisionError:
            continue
        return m


def change_basis(g: LieAlgebra, P: ExactMatrix, name: str = "") -> LieAlgebra:
    """The same algebra written in the basis ``f_a = Σ_k P[k, a] e_k``."""
    Pinv = inverse(P)
    cols = [P.column(a) for a in range(g.dim)]
    consts = {}
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            coords = Pinv.apply(g.bracket(cols[a], cols[b]))
            for k, c in enumerate(coords):
                if c:
                    consts[(a, b, k)] = c
    return LieAlgebra(g.dim, consts, name or g.name)


def transport(J: ComplexStructure, P: ExactMatrix) -> ComplexStructure:
    """``J`` and its algebra rewritten in the basis given by the columns of ``P``."""
    g2 = change_basis(J.algebra, P, J.algebra.name)
    return ComplexStructure(g2, inverse(P) @ J.matrix @ P, J.name)


def random_almost_complex(g: LieAlgebra, rng: random.Random, bound: int = 2) -> ComplexStructure:
    """``P J_std P^{-1}`` for a random rational ``P``; usually not integrable."""
    P = random_invertible(rng, g.dim, bound)
    return ComplexStructure(g, P @ standard_j(g.dim) @ inverse(P), g.name)


def integrable_samples(rng: random.Random, seeds, bound: int = 1) -> Iterator[ComplexStructure]:
    """Transport each seed structure by a fresh random rational basis change, cycling forever."""
    seeds = list(seeds)
    while True:
        for J in seeds:
            yield transport(J, random_invertible(rng, J.algebra.dim, bound))
