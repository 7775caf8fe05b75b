"""Exterior algebra on numbered generators.

A monomial is a strictly increasing tuple of generator indices; a form is a
dict ``monomial -> Scalar`` with no zero values.  The differential is fixed by
its values on generators (2-forms) and extended by the graded Leibniz rule.
"""

from __future__ import annotations

from itertools import combinations
from typing import Mapping, Sequence

from .linalg import ExactMatrix
from .scalars import ZERO, Field, Scalar

Form = dict


def merge_sign(a: tuple, b: tuple):
    """Sign and sorted union of ``a∧b``, or ``(0, None)`` when they share an index."""
    if set(a) & set(b):
        return 0, None
    # count pairs (x in a, y in b) with x > y: transpositions to sort the concatenation
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


def wedge(f: Mapping, g: Mapping) -> Form:
    out: dict = {}
    for ma, ca in f.items():
        for mb, cb in g.items():
            sign, m = merge_sign(ma, mb)
            if not sign:
                continue
            c = ca * cb if sign > 0 else -(ca * cb)
            out[m] = out.get(m, ZERO) + c
    return {m: c for m, c in out.items() if c}


def add_into(acc: dict, f: Mapping, scale: Scalar | None = None) -> None:
    for m, c in f.items():
        v = acc.get(m, ZERO) + (c if scale is None else scale * c)
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


class Differential:
    """``d`` on the exterior algebra generated by ``len(gen_d)`` generators.

    ``gen_d[a]`` is ``d`` of generator ``a`` as a 2-form ``{(b, c): coeff}``.
    """

    def __init__(self, gen_d: Sequence[Mapping]):
        self.gen_d = [dict(f) for f in gen_d]
        self.ngen = len(gen_d)
        self._cache: dict = {}

    def of_monomial(self, mono: tuple) -> Form:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        out: dict = {}
        for j, a in enumerate(mono):
            da = self.gen_d[a]
            if not da:
                continue
            term = wedge(wedge({mono[:j]: _ONE}, da), {mono[j + 1:]: _ONE})
            add_into(out, term, _ONE if j % 2 == 0 else _MINUS_ONE)
        self._cache[mono] = out
        return out

    def of_form(self, f: Mapping) -> Form:
        out: dict = {}
        for m, c in f.items():
            add_into(out, self.of_monomial(m), c)
        return out


_ONE = Scalar(1)
_MINUS_ONE = Scalar(-1)


def degree_basis(ngen: int, k: int) -> list:
    return list(combinations(range(ngen), k))


def matrix_of(images: Sequence[Mapping], target_basis: Sequence[tuple], field: Field | None = None) -> ExactMatrix:
    """Matrix whose column ``j`` holds ``images[j]`` in ``target_basis`` coordinates."""
    index = {m: r for r, m in enumerate(target_basis)}
    ents = {}
    for j, img in enumerate(images):
        for m, c in img.items():
            ents[(index[m], j)] = c
    return ExactMatrix(len(target_basis), len(images), ents, field)
