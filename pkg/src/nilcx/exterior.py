"""Exterior algebra on a dual basis: multi-indices, wedge signs, and the derivation d.

Forms are sparse dicts mapping strictly increasing index tuples to scalars.  The
basis of degree ``k`` is ``itertools.combinations(range(n), k)`` in lexicographic
order.

Sign bookkeeping example: ``e^1 ∧ e^{02} = -e^{012}`` because inserting ``1`` into
``(0, 2)`` passes one index, so the parity is odd.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping

Form = dict  # {tuple: scalar}


@lru_cache(maxsize=None)
def basis(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def index_of(n: int, k: int) -> dict:
    return {mi: pos for pos, mi in enumerate(basis(n, k))}


def bigraded_basis(m: int, p: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Indices with ``p`` entries below ``m`` (type (1,0)) and ``q`` entries at or above ``m``."""
    return tuple(a + b for a in combinations(range(m), p) for b in combinations(range(m, 2 * m), q))


def bidegree(mi: tuple, m: int) -> tuple[int, int]:
    p = sum(1 for x in mi if x < m)
    return p, len(mi) - p


def size(n: int, k: int) -> int:
    return comb(n, k)


def wedge_indices(a: tuple, b: tuple):
    """``(sign, merged)`` with ``e^a ∧ e^b = sign * e^merged``; sign 0 on repeats."""
    if set(a) & set(b):
        return 0, ()
    # parity of the merge permutation: count pairs (x in a, y in b) with x > y
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


def wedge(alpha: Mapping, beta: Mapping) -> Form:
    out: Form = {}
    for a, ca in alpha.items():
        for b, cb in beta.items():
            s, mi = wedge_indices(a, b)
            if s:
                v = out.get(mi, 0) + (ca * cb if s > 0 else -(ca * cb))
                if v:
                    out[mi] = v
                else:
                    out.pop(mi, None)
    return out


def d_of_monomial(de: list, mi: tuple) -> Form:
    """Derivation extension: ``d(e^{i1..ik}) = Σ_r (-1)^r e^{i1..} ∧ de^{ir} ∧ ...``."""
    out: Form = {}
    for r, k in enumerate(mi):
        rest = mi[:r] + mi[r + 1:]
        for pair, c in de[k].items():
            # place de^k at slot r: e^{mi[:r]} ∧ de^k ∧ e^{mi[r+1:]}
            if set(pair) & set(rest):
                continue
            s1, left = wedge_indices(mi[:r], pair)
            s2, full = wedge_indices(left, mi[r + 1:])
            s = s1 * s2 * (-1 if r & 1 else 1)
            v = out.get(full, 0) + (c if s > 0 else -c)
            if v:
                out[full] = v
            else:
                out.pop(full, None)
    return out


def d_form(de: list, alpha: Mapping) -> Form:
    out: Form = {}
    for mi, c in alpha.items():
        for mj, v in d_of_monomial(de, mi).items():
            w = out.get(mj, 0) + c * v
            if w:
                out[mj] = w
            else:
                out.pop(mj, None)
    return out


def differentials_from_constants(n: int, constants: Mapping) -> list:
    """``de^k = -Σ_{i<j} a_ij^k e^{ij}`` for structure constants ``{(i, j): {k: a}}``."""
    de: list = [dict() for _ in range(n)]
    for (i, j), row in constants.items():
        for k, c in row.items():
            if c:
                de[k][(i, j)] = de[k].get((i, j), 0) - c
    return de


def sparse_differential(de: list, n: int, k: int, rows_filter=None) -> dict:
    """Sparse matrix of ``d: Λ^k → Λ^{k+1}`` as ``{col: {row: value}}`` over lexicographic bases.

    ``rows_filter`` optionally restricts the target indices (used for bidegree projection).
    """
    tgt = index_of(n, k + 1)
    cols: dict = {}
    for c, mi in enumerate(basis(n, k)):
        col = {}
        for mj, v in d_of_monomial(de, mi).items():
            if rows_filter is None or rows_filter(mj):
                col[tgt[mj]] = v
        if col:
            cols[c] = col
    return cols
