"""Independent reference computations in sympy.

Nothing here imports the exterior, cohomology or rank modules of nilcx: the
Chevalley-Eilenberg differential is rebuilt from the formula

    (d a)(x_0, ..., x_k) = sum_{i<j} (-1)^(i+j) a([x_i, x_j], x_0, .., ^i, .., ^j, .., x_k)

on a frame, and ranks are taken by sympy.
"""

from __future__ import annotations

from itertools import combinations

import sympy as sp


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def structure_table(g):
    """``{(i, j): {k: c}}`` as sympy Rationals, for all ordered pairs."""
    n = g.dim
    out = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = g.bracket_basis(i, j)
            row = {k: sp.Rational(str(c)) for k, c in enumerate(v) if c}
            if row:
                out[(i, j)] = row
    return out


def ce_matrix(n: int, table, k: int, rows=None, cols=None) -> sp.Matrix:
    """Matrix of d on k-forms of an n-dimensional algebra given by ``table``.

    ``table[(i, j)]`` maps k to the coefficient of e_k in [e_i, e_j].  Optional
    ``rows``/``cols`` restrict to subsets of (k+1)- and k-multi-indices.
    """
    src = list(cols) if cols is not None else list(combinations(range(n), k))
    tgt = list(rows) if rows is not None else list(combinations(range(n), k + 1))
    col_of = {I: c for c, I in enumerate(src)}
    m = sp.zeros(len(tgt), len(src))
    for r, K in enumerate(tgt):
        for a in range(len(K)):
            for b in range(a + 1, len(K)):
                br = table.get((K[a], K[b]))
                if not br:
                    continue
                rest = [K[x] for x in range(len(K)) if x not in (a, b)]
                sgn = (-1) ** (a + b)
                for mm, c in br.items():
                    t = [mm] + rest
                    if len(set(t)) < len(t):
                        continue
                    I = tuple(sorted(t))
                    if I in col_of:
                        m[r, col_of[I]] += sgn * _perm_sign(t) * c
    return m


def betti(g) -> list[int]:
    n = g.dim
    table = structure_table(g)
    ranks = [ce_matrix(n, table, k).rank() if 0 <= k < n else 0 for k in range(n + 1)]
    return [sp.binomial(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


def complex_frame_table(J):
    """Structure table of g ⊗ C on the frame (Z_1..Z_m, conj Z_1..conj Z_m), Z_a ∈ i-eigenspace."""
    g = J.algebra
    n = g.dim
    m = n // 2
    M = sp.Matrix([[sp.Rational(str(x)) for x in row] for row in J.matrix])
    z = (M - sp.I * sp.eye(n)).nullspace()
    assert len(z) == m
    frame = [sp.simplify(v) for v in z] + [v.conjugate() for v in z]
    F = sp.Matrix.hstack(*frame)
    Finv = F.inv()
    real = structure_table(g)

    def bracket(u, v):
        out = sp.zeros(n, 1)
        for (i, j), row in real.items():
            if u[i] == 0 or v[j] == 0:
                continue
            for k, c in row.items():
                out[k] += u[i] * v[j] * c
        return out

    table = {}
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            coords = sp.simplify(Finv * bracket(frame[a], frame[b]))
            row = {k: coords[k] for k in range(n) if coords[k] != 0}
            if row:
                table[(a, b)] = row
    return m, table


def hodge_numbers(J) -> list[list[int]]:
    """``h^{p,q}`` from the (p, q+1) part of the complexified differential."""
    m, table = complex_frame_table(J)
    n = 2 * m

    def bideg(I):
        p = sum(1 for x in I if x < m)
        return p, len(I) - p

    def rank(p, q):
        if q < 0 or q >= m:
            return 0
        cols = [I for I in combinations(range(n), p + q) if bideg(I) == (p, q)]
        rows = [I for I in combinations(range(n), p + q + 1) if bideg(I) == (p, q + 1)]
        return ce_matrix(n, table, p + q, rows=rows, cols=cols).rank(simplify=True)

    out = []
    for p in range(m + 1):
        out.append([sp.binomial(m, p) * sp.binomial(m, q) - rank(p, q) - rank(p, q - 1) for q in range(m + 1)])
    return [[int(x) for x in r] for r in out]


def change_basis(g, P):
    """The algebra with basis given by the columns of P: constants P^{-1}[P e_i, P e_j]."""
    from fractions import Fraction

    from nilcx.lie import LieAlgebra
    from nilcx.linalg import inverse, mat_vec

    n = g.dim
    Pinv = inverse(P)
    cols = [tuple(Fraction(P[r][c]) for r in range(n)) for c in range(n)]
    consts = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = mat_vec(Pinv, g.bracket(cols[i], cols[j]))
            row = {k: c for k, c in enumerate(v) if c}
            if row:
                consts[(i, j)] = row
    return LieAlgebra(n, consts)
