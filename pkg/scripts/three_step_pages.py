"""Pages of the fibration spectral sequence on a three-step algebra with a non-trivial base action.

The E_2 page differs from the tensor product of base and fibre Hodge numbers, because
the mixed terms in dω3 twist the coefficients.  The engine's pages are compared against
the dense sympy oracle in tests/oracle.py.
"""

import sys
from math import comb
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import oracle  # noqa: E402
from nilhodge.document import from_objects  # noqa: E402
from nilhodge.spectral import build_filtration, compute_pages, fibration_data  # noqa: E402

DOC = from_objects(
    "three-step",
    6,
    {4: {(1, 2): -2}, 6: {(1, 4): -2, (2, 3): 2}},
    span=[["1", "1*i", 0, 0, 0, 0], [0, 0, "1", "1*i", 0, 0], [0, 0, 0, 0, "1", "1*i"]],
)


def main():
    g = DOC.algebra()
    J = DOC.complex_structure(g)
    f = fibration_data(J, 1)
    pages = compute_pages(f, build_filtration(f), up_to=3, check=False)
    n, nb = f.total.n, f.n_base
    hf, hb = f.fibre.hodge(), f.base.hodge()
    m, eqs, span = oracle.from_engine_objects(g, J)
    base = [a for a in range(n) if a < nb] + [n + a for a in range(nb)]
    ref = oracle.filtered_pages(m, eqs, span, base, 3)

    print(f"base n={nb}, fibre n={f.fibre.n}")
    print(" p q u | E1 (tensor) | E2 tensor | oracle E2")
    for p in range(n + 1):
        for q in range(n + 1):
            for u in range(min(2 * nb, p + q) + 1):
                e1, e2 = pages[1].dim(p, q, u), pages[2].dim(p, q, u)
                t1 = sum(hf[p - k][q - u + k] * comb(nb, k) * comb(nb, u - k)
                         for k in range(u + 1) if 0 <= p - k <= f.fibre.n and 0 <= q - u + k <= f.fibre.n)
                t2 = sum(hb[k][u - k] * hf[p - k][q - u + k]
                         for k in range(u + 1)
                         if k <= nb and u - k <= nb and 0 <= p - k <= f.fibre.n and 0 <= q - u + k <= f.fibre.n)
                flag = "" if e2 == t2 else "   <- differs"
                print(f" {p} {q} {u} | {e1:>2} ({t1:>2}) | {e2:>2} {t2:>6} | {ref[(2, p, q, u)]:>4}{flag}")


if __name__ == "__main__":
    main()
