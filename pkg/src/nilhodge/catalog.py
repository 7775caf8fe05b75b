"""Built-in example documents."""

from __future__ import annotations

from functools import lru_cache

from .document import AlgebraDocument, emit, from_objects


def _standard_j(dim: int) -> list:
    """``J e_{2a-1} = e_{2a}``, ``J e_{2a} = -e_{2a-1}``, so ``e^{2a-1} + i e^{2a}`` has type (1,0)."""
    m = [["0"] * dim for _ in range(dim)]
    for a in range(0, dim, 2):
        m[a + 1][a] = "1"
        m[a][a + 1] = "-1"
    return m


def _torus(n: int) -> AlgebraDocument:
    return from_objects(f"torus-{n}", 2 * n, {}, matrix=_standard_j(2 * n))


def _iwasawa() -> AlgebraDocument:
    # ω1 = e1 + i e2, ω2 = e3 + i e4, ω3 = e5 + i e6 with dω3 = ω1∧ω2
    eqs = {5: {(1, 3): 1, (2, 4): -1}, 6: {(1, 4): 1, (2, 3): 1}}
    span = [
        ["1", "1*i", "0", "0", "0", "0"],
        ["0", "0", "1", "1*i", "0", "0"],
        ["0", "0", "0", "0", "1", "1*i"],
    ]
    return from_objects("iwasawa", 6, eqs, span=span, family={"deform_index": 3, "conjugate_index": 1})


def _kodaira_thurston() -> AlgebraDocument:
    return from_objects("kodaira-thurston", 4, {3: {(1, 2): 1}}, matrix=_standard_j(4))


_BUILDERS = {
    "torus-1": lambda: _torus(1),
    "torus-2": lambda: _torus(2),
    "torus-3": lambda: _torus(3),
    "iwasawa": _iwasawa,
    "kodaira-thurston": _kodaira_thurston,
}

NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get(name: str) -> AlgebraDocument:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"no catalog entry {name!r}; known: {', '.join(NAMES)}") from None


def text(name: str) -> str:
    return emit(get(name))
