"""Invariant de Rham and Dolbeault cohomology by exact ranks.

The de Rham side uses the Chevalley-Eilenberg differential on ``Λ g*``.  For the
Dolbeault side we pass to the complex frame ``Z_1..Z_m, conj(Z_1)..conj(Z_m)``,
compute its structure constants, run the same exterior derivative there and keep
the bidegree ``(p, q+1)`` part.  The dual frame forms ``ω^1..ω^m`` have type (1,0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from . import exterior
from .complex_structure import AlmostComplexStructure, require_integrable
from .errors import OracleDisagreement
from .fields import Gaussian, normalize
from .lie import LieAlgebra, central_series
from .linalg import Subspace, columns_to_matrix, inverse, kernel, mat_vec
from .rank import columns_rank, sparse_rank


# ---------------------------------------------------------------------------
# de Rham
# ---------------------------------------------------------------------------

def ce_differential(g: LieAlgebra, k: int, *, check: bool = True) -> dict:
    """Sparse column-wise matrix of ``d: Λ^k g* → Λ^{k+1} g*``."""
    de = g.dual_differentials()
    cols = exterior.sparse_differential(de, g.dim, k)
    if check and k + 1 < g.dim and cols:
        # d∘d = 0 on the image columns
        for mi in exterior.basis(g.dim, k):
            dd = exterior.d_form(de, exterior.d_of_monomial(de, mi))
            if dd:
                raise OracleDisagreement(f"d^2 does not vanish on e^{mi}")
    return cols


def ce_differential_dense(g: LieAlgebra, k: int) -> list:
    """Row-major dense form of :func:`ce_differential` (small degrees only)."""
    cols = ce_differential(g, k)
    rows, ncols = comb(g.dim, k + 1), comb(g.dim, k)
    m = [[Fraction(0)] * ncols for _ in range(rows)]
    for c, col in cols.items():
        for r, v in col.items():
            m[r][c] = v
    return m


class _RankCache:
    def __init__(self):
        self.values = {}

    def get(self, key, fn):
        if key not in self.values:
            self.values[key] = fn()
        return self.values[key]


def de_rham_betti(g: LieAlgebra, degrees=None) -> list:
    """Betti numbers ``b_k``; ``degrees`` limits which ones are computed."""
    n = g.dim
    ks = range(n + 1) if degrees is None else sorted(set(degrees))
    de = g.dual_differentials()
    cache = _RankCache()

    def rank_d(k):
        if k < 0 or k >= n:
            return 0
        return cache.get(k, lambda: columns_rank(exterior.sparse_differential(de, n, k)))

    out = {}
    for k in ks:
        out[k] = comb(n, k) - rank_d(k) - rank_d(k - 1)
    if degrees is None:
        return [out[k] for k in range(n + 1)]
    return out


# ---------------------------------------------------------------------------
# complex frame and Dolbeault
# ---------------------------------------------------------------------------

class ComplexFrame:
    """Structure constants of ``g_C`` in the frame adapted to J."""

    def __init__(self, J: AlmostComplexStructure):
        g = J.algebra
        self.J = J
        self.m = g.dim // 2
        self.vectors = J.complex_frame()
        n = g.dim
        self.to_frame = inverse(columns_to_matrix(self.vectors))
        consts: dict = {}
        for a in range(n):
            for b in range(a + 1, n):
                br = g.bracket(self.vectors[a], self.vectors[b])
                if any(br):
                    coords = mat_vec(self.to_frame, br)
                    row = {k: v for k, v in enumerate(coords) if v}
                    if row:
                        consts[(a, b)] = row
        self.constants = consts
        self.de = exterior.differentials_from_constants(n, consts)

    def bracket_coords(self, a: int, b: int) -> dict:
        if a == b:
            return {}
        if a < b:
            return self.constants.get((a, b), {})
        return {k: -v for k, v in self.constants.get((b, a), {}).items()}


def dbar_matrix(frame: ComplexFrame, p: int, q: int) -> dict:
    """Column-wise sparse matrix of ``∂̄: Λ^{p,q} → Λ^{p,q+1}``; columns follow ``bigraded_basis``."""
    m = frame.m
    src = exterior.bigraded_basis(m, p, q)
    tgt = {mi: r for r, mi in enumerate(exterior.bigraded_basis(m, p, q + 1))}
    cols = {}
    for c, mi in enumerate(src):
        col = {}
        for mj, v in exterior.d_of_monomial(frame.de, mi).items():
            if exterior.bidegree(mj, m) == (p, q + 1):
                col[tgt[mj]] = normalize(v)
            elif exterior.bidegree(mj, m) not in ((p + 1, q),):
                raise OracleDisagreement("d has a (-1, 2) component; J is not integrable")
        if col:
            cols[c] = col
    return cols


def _apply_dbar(frame, form, p, q):
    m = frame.m
    out = {}
    for mi, c in form.items():
        for mj, v in exterior.d_of_monomial(frame.de, mi).items():
            if exterior.bidegree(mj, m) == (p, q + 1):
                w = normalize(out.get(mj, 0) + c * v)
                if w:
                    out[mj] = w
                else:
                    out.pop(mj, None)
    return out


def check_dbar_squared(frame: ComplexFrame, p: int, q: int):
    for mi in exterior.bigraded_basis(frame.m, p, q):
        once = _apply_dbar(frame, {mi: Fraction(1)}, p, q)
        if _apply_dbar(frame, once, p, q + 1):
            raise OracleDisagreement(f"dbar^2 does not vanish in bidegree ({p},{q})")


def dolbeault_dims(J: AlmostComplexStructure, cells=None, *, check: bool = True) -> list:
    """Hodge numbers ``h^{p,q}`` of the invariant Dolbeault complex.

    ``cells`` restricts the computation to a set of ``(p, q)``; other entries are None.
    """
    require_integrable(J)
    frame = ComplexFrame(J)
    m = frame.m
    want = set(cells) if cells is not None else {(p, q) for p in range(m + 1) for q in range(m + 1)}
    ranks = {}

    def rank_dbar(p, q):
        if q < 0 or q >= m:
            return 0
        if (p, q) not in ranks:
            if check:
                check_dbar_squared(frame, p, q)
            ranks[(p, q)] = columns_rank(dbar_matrix(frame, p, q))
        return ranks[(p, q)]

    table = [[None] * (m + 1) for _ in range(m + 1)]
    for p, q in sorted(want):
        table[p][q] = comb(m, p) * comb(m, q) - rank_dbar(p, q) - rank_dbar(p, q - 1)
    return table


# ---------------------------------------------------------------------------
# closed holomorphic 1-forms
# ---------------------------------------------------------------------------

@dataclass
class HolomorphicOneForms:
    d_closed: Subspace
    annihilator: Subspace
    dbar_closed: Subspace
    dim: int
    dbar_agrees: bool

    def as_dict(self):
        return {"dim": self.dim, "d_closed": self.d_closed.dim, "annihilator": self.annihilator.dim,
                "dbar_closed": self.dbar_closed.dim, "dbar_agrees": self.dbar_agrees}


def _complexify(u: Subspace) -> Subspace:
    return Subspace(u.ambient_dim, [[Gaussian(x, 0) for x in b] for b in u.basis])


def closed_holomorphic_one_forms(J: AlmostComplexStructure) -> HolomorphicOneForms:
    """(1,0)-forms that are d-closed, computed three ways.

    Forms are coefficient vectors on the dual basis ``e^1..e^n``.  The d-closed and
    annihilator routes must agree (a bug otherwise).  The ∂̄-closed space contains
    them and can be strictly larger, e.g. for complex parallelisable structures.
    """
    require_integrable(J)
    g = J.algebra
    n = g.dim
    forms10 = J.p01().annihilator()  # (1,0)-forms kill g^{0,1}

    # route 1: kernel of the CE differential on 1-forms
    de = g.dual_differentials()
    rows = []
    for pair in exterior.basis(n, 2):
        rows.append([de[k].get(pair, Fraction(0)) for k in range(n)])
    closed = _complexify(kernel(rows, n)) & forms10

    # route 2: annihilator of C_J^1 g
    c1 = central_series(g).descending[1] if central_series(g).step else g.zero()
    cj1 = c1 + J.image(c1)
    ann = _complexify(cj1).annihilator() & forms10

    if closed != ann:
        raise OracleDisagreement("d-closed (1,0)-forms differ from Ann(C_J^1) ∩ (1,0)-forms")

    # route 3: ∂̄-closed (1,0)-forms through the complex frame
    frame = ComplexFrame(J)
    m = frame.m
    cols = dbar_matrix(frame, 1, 0)
    src = exterior.bigraded_basis(m, 1, 0)
    nrows = comb(m, 1) * comb(m, 1)
    dense = [[Fraction(0)] * len(src) for _ in range(nrows)]
    for c, col in cols.items():
        for r, v in col.items():
            dense[r][c] = v
    ker = kernel(dense, len(src)) if nrows else Subspace.full(len(src))
    # frame coefficients -> dual-basis coefficients: ω^a = row a of the inverse frame matrix
    vecs = []
    for b in ker.basis:
        v = [Fraction(0)] * n
        for a, coef in enumerate(b):
            if coef:
                row = frame.to_frame[src[a][0]]
                v = [normalize(x + coef * y) for x, y in zip(v, row)]
        vecs.append(v)
    dbar_closed = Subspace(n, vecs)
    if not dbar_closed.contains(closed):
        raise OracleDisagreement("a d-closed (1,0)-form is not dbar-closed")
    return HolomorphicOneForms(closed, ann, dbar_closed, closed.dim, dbar_closed == closed)


# ---------------------------------------------------------------------------
# cohomology with values in g^{1,0}
# ---------------------------------------------------------------------------

def valued_dolbeault(J: AlmostComplexStructure, q: int) -> int:
    """``dim H^{0,q}(g, g^{1,0})`` with ``ρ(X̄) Z = pr^{1,0} [X̄, Z]``.

    The differential is evaluated directly on cochains,
    ``(∂̄φ)(X̄_0..X̄_q) = Σ_i (-1)^i ρ(X̄_i) φ(..X̂_i..) + Σ_{i<j} (-1)^{i+j} φ([X̄_i, X̄_j], ..)``,
    which is a separate code path from the exterior-derivative machinery.
    """
    require_integrable(J)
    frame = ComplexFrame(J)
    m = frame.m

    def rank_of(k):
        if k < 0 or k >= m:
            return 0
        return sparse_rank(_valued_columns(frame, k).values())

    dim_k = comb(m, q) * m
    return dim_k - rank_of(q) - rank_of(q - 1)


def _valued_columns(frame: ComplexFrame, k: int) -> dict:
    m = frame.m
    src = list(combinations(range(m), k))
    tgt = list(combinations(range(m), k + 1))
    tgt_pos = {t: r for r, t in enumerate(tgt)}
    # bracket tables in frame coordinates: barred index a ↦ frame slot m + a
    cols = {}
    for s_idx, subset in enumerate(src):
        for a in range(m):
            col_id = s_idx * m + a
            col = {}
            # φ = ω̄^subset ⊗ Z_a; evaluate ∂̄φ on each (k+1)-subset T
            for t in tgt:
                vals = [0] * m
                for i, ti in enumerate(t):
                    rest = t[:i] + t[i + 1:]
                    if rest == subset:
                        sign = -1 if i % 2 else 1
                        # ρ(X̄_ti) Z_a = (1,0)-part of [Z̄_ti, Z_a]
                        for kk, v in frame.bracket_coords(m + ti, a).items():
                            if kk < m:
                                vals[kk] = vals[kk] + (v if sign > 0 else -v)
                for i in range(len(t)):
                    for j in range(i + 1, len(t)):
                        br = frame.bracket_coords(m + t[i], m + t[j])
                        rest = t[:i] + t[i + 1:j] + t[j + 1:]
                        sign = -1 if (i + j) % 2 else 1
                        for kk, v in br.items():
                            if kk < m:
                                raise OracleDisagreement("[g01, g01] leaves g01; J is not integrable")
                            # φ(X̄_kk, rest...) with the new entry placed first
                            args = (kk - m,) + rest
                            if len(set(args)) < len(args):
                                continue
                            perm_sign = _sort_sign(args)
                            if tuple(sorted(args)) == subset:
                                c = v * (sign * perm_sign)
                                vals[a] = vals[a] + c
                for kk in range(m):
                    w = normalize(vals[kk])
                    if w:
                        col[tgt_pos[t] * m + kk] = w
            if col:
                cols[col_id] = col
    return cols


def _sort_sign(seq) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# summary table
# ---------------------------------------------------------------------------

@dataclass
class CohomologyTable:
    betti: list
    hodge: list | None = None
    valued_h01q: list | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"format": 1, "betti": self.betti, "hodge": self.hodge, "valued_h01q": self.valued_h01q,
                "diagnostics": self.diagnostics}


def cohomology_table(g: LieAlgebra, J: AlmostComplexStructure | None = None, *, valued: bool = True) -> CohomologyTable:
    betti = de_rham_betti(g)
    diag = {"poincare_duality": all(betti[k] == betti[g.dim - k] for k in range(g.dim + 1))}
    hodge = vals = None
    if J is not None:
        hodge = dolbeault_dims(J)
        m = g.dim // 2
        diag["euler_per_p"] = [sum((-1) ** q * hodge[p][q] for q in range(m + 1)) for p in range(m + 1)]
        diag["serre_duality"] = all(hodge[p][q] == hodge[m - p][m - q] for p in range(m + 1) for q in range(m + 1))
        if valued:
            vals = [valued_dolbeault(J, q) for q in range(m + 1)]
    return CohomologyTable(betti, hodge, vals, diag)


def render_hodge(hodge: list) -> str:
    m = len(hodge) - 1
    width = max(len(str(x)) for row in hodge for x in row if x is not None) if hodge else 1
    lines = []
    for s in range(2 * m, -1, -1):
        cells = [(p, s - p) for p in range(m + 1) if 0 <= s - p <= m]
        txt = "   ".join(str(hodge[p][q]).rjust(width) for p, q in cells)
        lines.append(" " * (abs(m - s) * (width + 3) // 2) + txt)
    return "\n".join(lines)
