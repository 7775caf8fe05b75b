"""Dense brute-force Dolbeault oracle built on sympy, sharing no code with nilhodge.

Forms are written in the real coframe e^1..e^m.  The (p,q) monomials in the
generators ω, ω̄ are expanded to e-monomials through minors of the coframe
matrix, d is applied there, and the result is expanded back.
"""

from itertools import combinations

import sympy as sp
from sympy.polys.matrices import DomainMatrix


def _sort_sign(seq):
    seq = list(seq)
    sign = 1
    for a in range(len(seq)):
        for b in range(len(seq) - 1 - a):
            if seq[b] > seq[b + 1]:
                seq[b], seq[b + 1] = seq[b + 1], seq[b]
                sign = -sign
    return sign, tuple(seq)


def de_rham(m, equations, k):
    """Matrix of d: Λ^k -> Λ^{k+1} in sorted e-monomial bases; equations[c] = {(a, b): coeff}."""
    src = list(combinations(range(m), k))
    dst = {mono: r for r, mono in enumerate(combinations(range(m), k + 1))}
    M = sp.zeros(len(dst), len(src))
    for col, mono in enumerate(src):
        for s, c in enumerate(mono):
            for (a, b), coeff in equations.get(c, {}).items():
                word = mono[:s] + (a, b) + mono[s + 1:]
                if len(set(word)) < len(word):
                    continue
                sign, key = _sort_sign(word)
                M[dst[key], col] += (-1) ** s * sign * sp.nsimplify(coeff)
    return M


def holomorphic_span(J):
    """Rows spanning {ω : ω J = i ω} for a sympy matrix J."""
    n = J.shape[0]
    vecs = (J.T - sp.I * sp.eye(n)).nullspace()
    return [list(v) for v in vecs]


def _gen_monomials(n, p, q):
    return [(a, b) for a in combinations(range(n), p) for b in combinations(range(n, 2 * n), q)]


def _rank(M):
    if M.rows == 0 or M.cols == 0:
        return 0
    return DomainMatrix.from_Matrix(M).to_field().rank()


def _dm(M):
    return DomainMatrix.from_Matrix(M).to_field()


def _solve(A, B):
    """A^{-1} B over the smallest exact domain containing both."""
    dA, dB = DomainMatrix.from_Matrix(A), DomainMatrix.from_Matrix(B)
    dom = dA.domain.unify(dB.domain).get_field()
    dA, dB = dA.convert_to(dom), dB.convert_to(dom)
    return (dA.inv() * dB).to_Matrix()


def _det(M):
    dm = _dm(M)
    return dm.domain.to_sympy(dm.det())


def dolbeault_diamond(m, equations, span):
    span = [[sp.nsimplify(x) for x in row] for row in span]
    n = m // 2
    theta = sp.Matrix(span + [[sp.conjugate(x) for x in row] for row in span])
    expand = {}
    for k in range(m + 1):
        emonos = list(combinations(range(m), k))
        gens = [(p, k - p, mono) for p in range(max(0, k - n), min(k, n) + 1) for mono in _gen_monomials(n, p, k - p)]
        W = sp.zeros(len(emonos), len(gens))
        for col, (_, _, (a, b)) in enumerate(gens):
            rows = list(a + b)
            for r, K in enumerate(emonos):
                W[r, col] = _det(theta.extract(rows, list(K))) if k else 1
        expand[k] = (W, gens)
    h = [[0] * (n + 1) for _ in range(n + 1)]
    dbar = {}
    for k in range(m):
        W0, g0 = expand[k]
        W1, g1 = expand[k + 1]
        D = de_rham(m, equations, k)
        op = _solve(W1, D * W0)
        for p in range(n + 1):
            q = k - p
            if not 0 <= q < n:
                continue
            cols = [c for c, g in enumerate(g0) if g[:2] == (p, q)]
            rows = [r for r, g in enumerate(g1) if g[:2] == (p, q + 1)]
            dbar[(p, q)] = _rank(op.extract(rows, cols)) if rows and cols else 0
    for p in range(n + 1):
        for q in range(n + 1):
            size = len(_gen_monomials(n, p, q))
            h[p][q] = size - dbar.get((p, q), 0) - dbar.get((p, q - 1), 0)
    return h


def betti(m, equations):
    ranks = [_rank(de_rham(m, equations, k)) for k in range(m)]
    out = []
    for k in range(m + 1):
        size = sp.binomial(m, k)
        out.append(int(size - (ranks[k] if k < m else 0) - (ranks[k - 1] if k else 0)))
    return out


def from_engine_objects(g, J):
    """Oracle inputs read off raw constants and J entries (text round trip, no engine math)."""
    m = g.dim
    eqs = {}
    for (i, j, k), c in g.constants.items():
        eqs.setdefault(k, {})[(i, j)] = -sp.Rational(str(c))
    Jm = sp.Matrix([[sp.nsimplify(_sym(str(x))) for x in row] for row in J.matrix.to_rows()])
    return m, eqs, holomorphic_span(Jm)


def _sym(text):
    return sp.sympify(text.replace("s2", "sqrt(2)").replace("i", "I"))


def dbar_blocks(m, equations, span):
    """{(p, q): sympy matrix of ∂̄ on Λ^{p,q}} in the lexicographic generator monomial bases."""
    span = [[sp.nsimplify(x) for x in row] for row in span]
    n = m // 2
    theta = sp.Matrix(span + [[sp.conjugate(x) for x in row] for row in span])
    expand = {}
    for k in range(m + 1):
        emonos = list(combinations(range(m), k))
        gens = [(p, k - p, mono) for p in range(max(0, k - n), min(k, n) + 1) for mono in _gen_monomials(n, p, k - p)]
        W = sp.zeros(len(emonos), len(gens))
        for col, (_, _, (a, b)) in enumerate(gens):
            for r, K in enumerate(emonos):
                W[r, col] = _det(theta.extract(list(a + b), list(K))) if k else 1
        expand[k] = (W, gens)
    blocks = {}
    for k in range(m):
        W0, g0 = expand[k]
        W1, g1 = expand[k + 1]
        op = _solve(W1, de_rham(m, equations, k) * W0)
        for p in range(n + 1):
            q = k - p
            if not 0 <= q < n:
                continue
            cols = [c for c, g in enumerate(g0) if g[:2] == (p, q)]
            rows = [r for r, g in enumerate(g1) if g[:2] == (p, q + 1)]
            blocks[(p, q)] = (op.extract(rows, cols), [g0[c][2] for c in cols], [g1[r][2] for r in rows])
    return blocks


def _colspace(vectors, size):
    if not vectors:
        return sp.zeros(size, 0)
    M = sp.Matrix.hstack(*vectors)
    dm = DomainMatrix.from_Matrix(M).to_field()
    return dm.columnspace().to_Matrix() if dm.rank() else sp.zeros(size, 0)


def _dim_sum(*mats):
    mats = [x for x in mats if x.cols]
    if not mats:
        return 0
    return _rank(sp.Matrix.hstack(*mats))


def filtered_pages(m, equations, span, base_gens, r_max):
    """dim E_r^u for the filtration by number of base generators, per (p, q, u), r = 0..r_max.

    Uses E_r^u = Z_r^u / (Z_{r-1}^{u+1} + d Z_{r-1}^{u-r+1}) with
    Z_r^u = {x in L_u : dx in L_{u+r}}.
    """
    blocks = dbar_blocks(m, equations, span)
    n = m // 2
    out = {}

    def bdeg(mono):
        return sum(1 for a in mono if a in base_gens)

    def monos(p, q):
        return [a + b for a, b in _gen_monomials(n, p, q)]

    def L(p, q, u):
        ms = monos(p, q)
        cols = [sp.Matrix([1 if j == i else 0 for j in range(len(ms))]) for i, mm in enumerate(ms) if bdeg(mm) >= u]
        return cols, len(ms)

    def D(p, q):
        if (p, q) in blocks:
            return blocks[(p, q)][0]
        return sp.zeros(len(monos(p, q + 1)), len(monos(p, q)))

    def Z(p, q, u, r):
        cols, size = L(p, q, u)
        if r < 0:
            return _colspace(cols, size)
        if not cols:
            return sp.zeros(size, 0)
        A = sp.Matrix.hstack(*cols)
        tgt = monos(p, q + 1)
        low = [i for i, mm in enumerate(tgt) if bdeg(mm) < u + r]
        if not low or q + 1 > n:
            return _colspace(cols, size)
        dA = (D(p, q) * A).extract(low, list(range(A.cols)))
        ker = DomainMatrix.from_Matrix(dA).to_field().nullspace().to_Matrix()
        # nullspace rows are the kernel vectors
        vecs = [A * ker.row(c).T for c in range(ker.rows)]
        return _colspace(vecs, size)

    for r in range(r_max + 1):
        for p in range(n + 1):
            for q in range(n + 1):
                for u in range(0, p + q + 1):
                    z = Z(p, q, u, r)
                    zlow = Z(p, q, u + 1, r - 1)
                    if q >= 1:
                        prev = Z(p, q - 1, u - r + 1, r - 1)
                        img = D(p, q - 1) * prev if prev.cols else sp.zeros(z.rows, 0)
                    else:
                        img = sp.zeros(z.rows, 0)
                    num = _dim_sum(z, zlow, img)
                    den = _dim_sum(zlow, img)
                    out[(r, p, q, u)] = num - den
    return out
