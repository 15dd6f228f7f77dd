"""Almost complex structures on a Lie algebra and the analyses built on them.

The matrix of ``J`` acts on column vectors: column ``c`` holds the coordinates of
``J e_c``.  Complexified objects live in ``F(i)^n``, with ``g^{1,0}`` spanned by
``x - i Jx``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import NotAlmostComplex, NotIntegrable, OracleDisagreement, ScalarSyntaxError
from .fields import Gaussian, conj, format_scalar, is_parametric, normalize, parse_scalar, specialize
from .lie import LieAlgebra, central_series, centraliser_preimage, subspace_bracket, unit
from .linalg import (
    Subspace,
    columns_to_matrix,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    real_points,
)


class AlmostComplexStructure:
    def __init__(self, algebra: LieAlgebra, matrix: Sequence[Sequence], *, name: str | None = None):
        n = algebra.dim
        if n % 2:
            raise NotAlmostComplex(f"odd dimension {n} carries no almost complex structure")
        m = [[normalize(parse_scalar(x) if isinstance(x, str) else (Fraction(x) if isinstance(x, int) else x))
              for x in row] for row in matrix]
        if len(m) != n or any(len(r) != n for r in m):
            raise NotAlmostComplex(f"J must be a {n}x{n} matrix")
        sq = mat_mul(m, m)
        for r in range(n):
            for c in range(n):
                if sq[r][c] != (-1 if r == c else 0):
                    raise NotAlmostComplex("J^2 is not -1")
        self.algebra = algebra
        self.matrix = m
        self.name = name
        self._p10 = None
        self._classification = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def apply(self, v: Sequence) -> tuple:
        return mat_vec(self.matrix, v)

    __call__ = apply

    def image(self, v: Subspace) -> Subspace:
        return v.image(self.matrix)

    def is_parametric(self) -> bool:
        return any(is_parametric(x) for r in self.matrix for x in r)

    def specialize(self, q, algebra: LieAlgebra | None = None) -> "AlmostComplexStructure":
        alg = algebra if algebra is not None else (self.algebra.specialize(q) if self.algebra.is_parametric()
                                                   else self.algebra)
        return AlmostComplexStructure(alg, [[specialize(x, q) for x in r] for r in self.matrix], name=self.name)

    def conjugate_by(self, p: Sequence[Sequence]) -> "AlmostComplexStructure":
        """``P J P^{-1}``: the structure transported by the linear map ``P``."""
        return AlmostComplexStructure(self.algebra, mat_mul(mat_mul(p, self.matrix), inverse(p)), name=self.name)

    def to_json(self) -> dict:
        return {"format": 1, "matrix": [[format_scalar(x) for x in r] for r in self.matrix]}

    def __eq__(self, other):
        if not isinstance(other, AlmostComplexStructure):
            return NotImplemented
        return self.algebra == other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.matrix))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<AlmostComplexStructure{label} on {self.algebra!r}>"

    # construction helpers -------------------------------------------------
    @classmethod
    def from_action(cls, algebra: LieAlgebra, pairs: Sequence[Sequence], *, name: str | None = None):
        """Build J from pairs ``(x, y)`` meaning ``Jx = y`` (and so ``Jy = -x``).

        Entries are basis names or linear combinations such as ``"e4 + t*e1"``.
        """
        n = algebra.dim
        xs = [parse_vector(p[0], algebra.names) if isinstance(p[0], str) else tuple(p[0]) for p in pairs]
        ys = [parse_vector(p[1], algebra.names) if isinstance(p[1], str) else tuple(p[1]) for p in pairs]
        if 2 * len(pairs) != n:
            raise NotAlmostComplex(f"need {n // 2} pairs for dimension {n}, got {len(pairs)}")
        src = columns_to_matrix(xs + ys)
        dst = columns_to_matrix(ys + [tuple(-c for c in x) for x in xs])
        try:
            src_inv = inverse(src)
        except ValueError:
            raise NotAlmostComplex("the vectors in the action list are not a basis") from None
        return cls(algebra, mat_mul(dst, src_inv), name=name)

    @classmethod
    def from_json(cls, algebra: LieAlgebra, data: Mapping, *, name: str | None = None):
        if "matrix" in data:
            return cls(algebra, data["matrix"], name=name)
        if "action" in data:
            return cls.from_action(algebra, data["action"], name=name)
        raise NotAlmostComplex("J JSON needs a 'matrix' or an 'action' field")

    # complexification ------------------------------------------------------
    def p10(self) -> Subspace:
        if self._p10 is None:
            n = self.dim
            vecs = []
            for c in range(n):
                jx = self.apply(unit(n, c))
                vecs.append([Gaussian(Fraction(int(r == c)), -jx[r]) for r in range(n)])
            self._p10 = Subspace(n, vecs)
            assert self._p10.dim == n // 2
        return self._p10

    def p01(self) -> Subspace:
        return self.p10().conjugate()

    def complex_frame(self) -> list[tuple]:
        """Basis ``Z_1..Z_m, conj(Z_1)..conj(Z_m)`` of the complexification."""
        z = list(self.p10().basis)
        return z + [tuple(conj(x) for x in v) for v in z]


def parse_vector(text: str, names: Sequence[str]) -> tuple:
    """Parse ``"e4 + t*e1"`` style linear combinations of basis names."""
    n = len(names)
    lookup = {nm: k for k, nm in enumerate(names)}
    out = [Fraction(0)] * n
    s = text.strip()
    if not s:
        raise ScalarSyntaxError("empty vector expression", text, 0)
    # split at top-level + or - that follow a basis name
    pieces, depth, start = [], 0, 0
    for idx, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and idx > 0:
            tail = re.search(r"([A-Za-z_]\w*)\s*$", s[:idx])
            if tail and tail.group(1) in lookup:
                pieces.append((start, s[start:idx]))
                start = idx
    pieces.append((start, s[start:]))
    for start, piece in pieces:
        p = piece.strip()
        sign = 1
        if p.startswith("+"):
            p = p[1:].strip()
        elif p.startswith("-"):
            sign, p = -1, p[1:].strip()
        m = re.match(r"^(.*?)\s*\*?\s*([A-Za-z_]\w*)$", p)
        if not m or m.group(2) not in lookup:
            raise ScalarSyntaxError(f"unknown basis element in {piece.strip()!r}", text, start)
        coef_txt = m.group(1).strip()
        if coef_txt.endswith("*"):
            coef_txt = coef_txt[:-1].strip()
        c = parse_scalar(coef_txt) if coef_txt else Fraction(1)
        k = lookup[m.group(2)]
        out[k] = normalize(out[k] + (c if sign > 0 else -c))
    return tuple(out)


def format_vector(v: Sequence, names: Sequence[str]) -> str:
    parts = []
    for c, nm in zip(v, names):
        if not c:
            continue
        if c == 1:
            parts.append(f"+ {nm}")
        elif c == -1:
            parts.append(f"- {nm}")
        else:
            parts.append(f"+ ({format_scalar(c)})*{nm}")
    if not parts:
        return "0"
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# integrability
# ---------------------------------------------------------------------------

def nijenhuis(J: AlmostComplexStructure, x: Sequence, y: Sequence) -> tuple:
    g = J.algebra
    jx, jy = J.apply(x), J.apply(y)
    a = g.bracket(x, y)
    b = g.bracket(jx, jy)
    c = J.apply(g.bracket(jx, y))
    d = J.apply(g.bracket(x, jy))
    return tuple(normalize(p - q + r + s) for p, q, r, s in zip(a, b, c, d))


def nijenhuis_vanishes(J: AlmostComplexStructure) -> bool:
    n = J.dim
    # bilinearity: basis pairs suffice
    return all(not any(nijenhuis(J, unit(n, i), unit(n, j))) for i, j in combinations(range(n), 2))


def p10_is_subalgebra(J: AlmostComplexStructure) -> bool:
    p, g = J.p10(), J.algebra
    b = p.basis
    # pairwise with early exit: most random structures fail on an early pair
    for a in range(len(b)):
        for c in range(a + 1, len(b)):
            if g.bracket(b[a], b[c]) not in p:
                return False
    return True


def is_integrable(J: AlmostComplexStructure, *, cross_check: bool = True) -> bool:
    a = nijenhuis_vanishes(J)
    if cross_check:
        b = p10_is_subalgebra(J)
        if a != b:
            raise OracleDisagreement("Nijenhuis tensor and subalgebra criterion disagree")
    return a


def require_integrable(J: AlmostComplexStructure):
    if not is_integrable(J):
        raise NotIntegrable("the almost complex structure is not integrable")


# ---------------------------------------------------------------------------
# invariant subspaces
# ---------------------------------------------------------------------------

def j_closure(J: AlmostComplexStructure, v: Subspace) -> Subspace:
    return v + J.image(v)


def is_j_invariant(J: AlmostComplexStructure, v: Subspace) -> bool:
    return v.contains(J.image(v))


def largest_invariant_subspace(J: AlmostComplexStructure, v: Subspace, *, cross_check: bool = False) -> Subspace:
    out = v & J.image(v)
    if cross_check:
        other = invariant_subspace_via_eigenspaces(J, v)
        if other != out:
            raise OracleDisagreement("v ∩ Jv differs from the eigenspace construction")
    return out


def invariant_subspace_via_eigenspaces(J: AlmostComplexStructure, v: Subspace) -> Subspace:
    """``real_points((v_C ∩ g^{1,0}) ⊕ (v_C ∩ g^{0,1}))``."""
    vc = Subspace(v.ambient_dim, [[Gaussian(x, 0) for x in b] for b in v.basis])
    u = (vc & J.p10()) + (vc & J.p01())
    return real_points(u)


# ---------------------------------------------------------------------------
# adapted series and classification
# ---------------------------------------------------------------------------

def t_series(J: AlmostComplexStructure) -> list:
    """``T^{i+1} = {x | [x,g] ⊆ T^i and [Jx,g] ⊆ T^i}`` until it stabilises."""
    g = J.algebra
    terms = [g.zero()]
    while True:
        a = centraliser_preimage(g, terms[-1])
        nxt = a & J.image(a)  # x and Jx both in a
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)
        if nxt.is_full():
            return terms


def cj_series(J: AlmostComplexStructure) -> list:
    return [j_closure(J, c) for c in central_series(J.algebra).descending]


def is_abelian_structure(J: AlmostComplexStructure) -> bool:
    g, n = J.algebra, J.dim
    for i, j in combinations(range(n), 2):
        x, y = unit(n, i), unit(n, j)
        if g.bracket(x, y) != g.bracket(J.apply(x), J.apply(y)):
            return False
    return True


def is_parallelisable_structure(J: AlmostComplexStructure) -> bool:
    """``ad_x`` commutes with J for every x, i.e. ``[Jx, y] = J[x, y]``."""
    g, n = J.algebra, J.dim
    for i in range(n):
        for j in range(n):
            x, y = unit(n, i), unit(n, j)
            if g.bracket(J.apply(x), y) != J.apply(g.bracket(x, y)):
                return False
    return True


@dataclass
class JClassification:
    integrable: bool
    abelian: bool
    parallelisable: bool
    nilpotent_J: bool
    t_series: list = field(default_factory=list)
    cJ_series: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "integrable": self.integrable,
            "abelian": self.abelian,
            "parallelisable": self.parallelisable,
            "nilpotent": self.nilpotent_J,
            "t_series_dims": [s.dim for s in self.t_series],
            "cJ_series_dims": [s.dim for s in self.cJ_series],
        }


def classify(J: AlmostComplexStructure) -> JClassification:
    if J._classification is not None:
        return J._classification
    require_integrable(J)
    g = J.algebra
    p10, p01 = J.p10(), J.p01()
    abel = is_abelian_structure(J)
    if abel != subspace_bracket(g, p10, p10).is_zero():
        raise OracleDisagreement("abelian test disagrees with [g10, g10] = 0")
    par = subspace_bracket(g, p10, p01).is_zero()
    if par != is_parallelisable_structure(J):
        raise OracleDisagreement("parallelisable test disagrees with ad commuting with J")
    ts = t_series(J)
    out = JClassification(True, abel, par, ts[-1].is_full(), ts, cj_series(J))
    J._classification = out
    return out


def v_series(J: AlmostComplexStructure) -> list[tuple[Subspace, Subspace]]:
    """Pairs ``(W_i, V_{i+1})`` with ``W_i = Z_J ∩ C^i`` and ``V_{i+1} = [W_i, g]``."""
    require_integrable(J)
    g = J.algebra
    s = central_series(g)
    zj = j_closure(J, s.ascending[1] if s.step else g.full())
    out = []
    for c in s.descending:
        w = zj & c
        v = subspace_bracket(g, w, g.full())
        if not is_j_invariant(J, v):
            raise OracleDisagreement("a term [W_i, g] is not J-invariant")
        out.append((w, v))
        if w.is_zero():
            break
    return out


def commutator_and_centre_invariance(J: AlmostComplexStructure) -> dict:
    s = central_series(J.algebra)
    c1 = s.descending[1] if s.step else J.algebra.zero()
    z = s.ascending[1] if s.step else J.algebra.full()
    return {"commutator": is_j_invariant(J, c1), "centre": is_j_invariant(J, z)}


# ---------------------------------------------------------------------------
# random structures
# ---------------------------------------------------------------------------

def standard_matrix(n: int) -> list:
    """``J e_{2k} = e_{2k+1}`` in 0-based pairs."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(0, n, 2):
        m[k + 1][k] = Fraction(1)
        m[k][k + 1] = Fraction(-1)
    return m


def random_unimodular(n: int, rng: random.Random, moves: int | None = None, bound: int = 2) -> list:
    p = identity(n)
    for _ in range(moves if moves is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-bound, bound)
        if c:
            p = [row[:] for row in p]
            for r in range(n):
                p[r][i] = p[r][i] + c * p[r][j]
    perm = list(range(n))
    rng.shuffle(perm)
    return [p[perm[r]] for r in range(n)]


def random_almost_complex(g: LieAlgebra, rng: random.Random) -> AlmostComplexStructure:
    p = random_unimodular(g.dim, rng)
    j0 = standard_matrix(g.dim)
    return AlmostComplexStructure(g, mat_mul(mat_mul(p, j0), inverse(p)))

