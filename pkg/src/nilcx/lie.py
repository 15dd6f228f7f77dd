"""Lie algebras given by structure constants on a fixed basis.

Indices are 0-based internally; user-facing text shows ``e1 .. en``.  The stored
constants are ``a[(i, j)][k]`` with ``[e_i, e_j] = Σ_k a_ij^k e_k`` for ``i < j``.
The dual convention is ``de^k = -Σ_{i<j} a_ij^k e^{ij}``, so an entry ``12`` in slot
5 of a Salamon tuple means ``[e1, e2] = -e5``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import exterior
from .errors import DimensionMismatch, JacobiFailure, NotAnIdeal, NotNilpotent
from .fields import format_scalar, is_parametric, normalize, parse_scalar, specialize
from .linalg import Subspace, kernel, mat_vec, transpose


def _zero_vec(n):
    return [Fraction(0)] * n


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q or Q(t).

    ``constants`` maps ``(i, j)`` with ``i < j`` to ``{k: a_ij^k}``.  Pairs given
    with ``i > j`` are folded in with a sign flip.
    """

    def __init__(self, dim: int, constants: Mapping | None = None, *, names: Sequence[str] | None = None,
                 validate: bool = True, name: str | None = None):
        self.dim = int(dim)
        self.name = name
        self.names = list(names) if names else [f"e{k + 1}" for k in range(self.dim)]
        if len(self.names) != self.dim:
            raise DimensionMismatch("number of basis names differs from the dimension")
        consts: dict = {}
        for (i, j), row in (constants or {}).items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionMismatch(f"index pair ({i + 1}, {j + 1}) out of range for dimension {self.dim}")
            if i == j:
                if any(row.values()):
                    raise ValueError("bracket [e_i, e_i] must vanish")
                continue
            sgn = 1
            if i > j:
                i, j, sgn = j, i, -1
            tgt = consts.setdefault((i, j), {})
            for k, c in row.items():
                if not 0 <= k < self.dim:
                    raise DimensionMismatch(f"target index {k + 1} out of range for dimension {self.dim}")
                c = parse_scalar(c) if isinstance(c, str) else c
                v = normalize(tgt.get(k, 0) + (c if sgn > 0 else -c))
                if v:
                    tgt[k] = v
                else:
                    tgt.pop(k, None)
        self.constants = {p: r for p, r in consts.items() if r}
        self.field = "Q(t)" if any(is_parametric(c) for r in self.constants.values() for c in r.values()) else "Q"
        self._series = None
        if validate:
            report = check_jacobi(self)
            if not report.valid:
                raise JacobiFailure(f"Jacobi identity fails on {report.witness_names(self)}", report.witness)

    # basic structure -----------------------------------------------------
    def structure_constant(self, i: int, j: int, k: int):
        if i == j:
            return Fraction(0)
        if i < j:
            return self.constants.get((i, j), {}).get(k, Fraction(0))
        return -self.constants.get((j, i), {}).get(k, Fraction(0))

    def bracket_basis(self, i: int, j: int) -> tuple:
        out = _zero_vec(self.dim)
        if i == j:
            return tuple(out)
        sgn = 1
        if i > j:
            i, j, sgn = j, i, -1
        for k, c in self.constants.get((i, j), {}).items():
            out[k] = c if sgn > 0 else -c
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionMismatch(f"vectors must have length {n}")
        out = _zero_vec(n)
        for (i, j), row in self.constants.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if coef:
                for k, c in row.items():
                    out[k] = out[k] + coef * c
        return tuple(normalize(v) for v in out)

    def ad(self, x: Sequence) -> list:
        """Matrix of ``ad_x`` acting on column vectors (column c is ``[x, e_c]``)."""
        n = self.dim
        cols = [self.bracket(x, unit(n, c)) for c in range(n)]
        return transpose([list(c) for c in cols])

    def is_abelian(self) -> bool:
        return not self.constants

    def unit(self, k: int) -> tuple:
        return unit(self.dim, k)

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim)

    def is_parametric(self) -> bool:
        return self.field == "Q(t)"

    def specialize(self, q) -> "LieAlgebra":
        consts = {p: {k: specialize(c, q) for k, c in r.items()} for p, r in self.constants.items()}
        return LieAlgebra(self.dim, consts, names=self.names, name=self.name)

    def dual_differentials(self) -> list:
        return exterior.differentials_from_constants(self.dim, self.constants)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.constants == other.constants

    def __hash__(self):
        return hash((self.dim, tuple(sorted((p, tuple(sorted(r.items()))) for p, r in self.constants.items()))))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{label} dim={self.dim} field={self.field} nonzero brackets={len(self.constants)}>"

    # serialization -------------------------------------------------------
    def bracket_list(self) -> list[dict]:
        out = []
        for (i, j) in sorted(self.constants):
            for k in sorted(self.constants[(i, j)]):
                out.append({"i": i + 1, "j": j + 1, "k": k + 1, "c": format_scalar(self.constants[(i, j)][k])})
        return out

    def to_json(self) -> dict:
        d = {"format": 1, "dim": self.dim, "field": self.field, "brackets": self.bracket_list()}
        if self.names != [f"e{k + 1}" for k in range(self.dim)]:
            d["names"] = list(self.names)
        return d

    @classmethod
    def from_json(cls, data: Mapping, *, validate: bool = True) -> "LieAlgebra":
        if "dim" not in data:
            raise ValueError("algebra JSON needs a 'dim' field")
        n = int(data["dim"])
        consts: dict = {}
        for b in data.get("brackets", []):
            i, j, k = int(b["i"]) - 1, int(b["j"]) - 1, int(b["k"]) - 1
            for idx in (i, j, k):
                if not 0 <= idx < n:
                    raise DimensionMismatch(f"bracket index {idx + 1} out of range for dimension {n}")
            c = parse_scalar(str(b["c"]))
            row = consts.setdefault((i, j), {})
            row[k] = row.get(k, 0) + c
        field_tag = data.get("field", "Q")
        if field_tag not in ("Q", "Q(t)"):
            raise ValueError(f"unknown field tag {field_tag!r}")
        return cls(n, consts, names=data.get("names"), validate=validate, name=data.get("name"))


def unit(n: int, k: int) -> tuple:
    return tuple(Fraction(int(i == k)) for i in range(n))


# ---------------------------------------------------------------------------
# Jacobi identity, two routes
# ---------------------------------------------------------------------------

@dataclass
class JacobiReport:
    valid: bool
    witness: tuple | None = None
    value: tuple | None = None

    def witness_names(self, g: LieAlgebra) -> str:
        if self.witness is None:
            return "none"
        return "(" + ", ".join(g.names[k] for k in self.witness) + ")"


def check_jacobi(g: LieAlgebra) -> JacobiReport:
    """Evaluate the Jacobiator on every basis triple; return the first failure."""
    n = g.dim
    for a, b, c in combinations(range(n), 3):
        ea, eb, ec = unit(n, a), unit(n, b), unit(n, c)
        s1 = g.bracket(g.bracket_basis(a, b), ec)
        s2 = g.bracket(g.bracket_basis(b, c), ea)
        s3 = g.bracket(g.bracket_basis(c, a), eb)
        tot = tuple(normalize(x + y + z) for x, y, z in zip(s1, s2, s3))
        if any(tot):
            return JacobiReport(False, (a, b, c), tot)
    return JacobiReport(True)


def d_squared_vanishes(g: LieAlgebra) -> bool:
    """Independent oracle: ``d(de^k) = 0`` for every basis 1-form."""
    de = g.dual_differentials()
    return all(not exterior.d_form(de, de[k]) for k in range(g.dim))


# ---------------------------------------------------------------------------
# subspace brackets and series
# ---------------------------------------------------------------------------

def subspace_bracket(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    vecs = [g.bracket(x, y) for x in a.basis for y in b.basis]
    return Subspace(g.dim, vecs)


def centraliser_preimage(g: LieAlgebra, target: Subspace, probe: Subspace | None = None) -> Subspace:
    """``{x | [x, probe] ⊆ target}`` with ``probe`` defaulting to all of g."""
    n = g.dim
    probe_vecs = probe.basis if probe is not None else [unit(n, k) for k in range(n)]
    ann = target.annihilator().basis
    if not ann:
        return Subspace.full(n)
    rows = []
    for y in probe_vecs:
        # x -> [x, y] is linear; its matrix is -ad_y
        m = g.ad(y)
        for f in ann:
            rows.append([-sum((f[r] * m[r][c] for r in range(n) if f[r] and m[r][c]), Fraction(0)) for c in range(n)])
    return kernel(rows, n)


def centre(g: LieAlgebra) -> Subspace:
    return centraliser_preimage(g, g.zero())


@dataclass
class SeriesReport:
    descending: list
    ascending: list
    step: int

    def dims(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(s.dim for s in self.descending), tuple(s.dim for s in self.ascending)


def lower_central_series(g: LieAlgebra) -> list:
    terms = [g.full()]
    while True:
        nxt = subspace_bracket(g, terms[-1], g.full())
        if nxt == terms[-1]:
            if nxt.is_zero():
                return terms
            raise NotNilpotent(f"lower central series stabilises at dimension {nxt.dim}")
        terms.append(nxt)
        if nxt.is_zero():
            return terms


def upper_central_series(g: LieAlgebra) -> list:
    terms = [g.zero()]
    while not terms[-1].is_full():
        nxt = centraliser_preimage(g, terms[-1])
        if nxt == terms[-1]:
            raise NotNilpotent(f"upper central series stabilises at dimension {nxt.dim}")
        terms.append(nxt)
    return terms


def central_series(g: LieAlgebra) -> SeriesReport:
    if g._series is None:
        desc = lower_central_series(g)
        asc = upper_central_series(g)
        step = len(desc) - 1
        assert len(asc) - 1 == step, "central series lengths differ"
        for i, c in enumerate(desc):
            assert asc[step - i].contains(c)
        g._series = SeriesReport(desc, asc, step)
    return g._series


def is_ideal(g: LieAlgebra, h: Subspace) -> bool:
    return h.contains(subspace_bracket(g, h, g.full()))


def is_subalgebra(g: LieAlgebra, h: Subspace) -> bool:
    return h.contains(subspace_bracket(g, h, h))


def quotient(g: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, list]:
    """Quotient by an ideal on the basis of the non-pivot coordinates.

    Returns the quotient algebra and the projection matrix (rows indexed by the
    quotient basis).
    """
    if not is_ideal(g, ideal):
        raise NotAnIdeal("subspace is not an ideal")
    n = g.dim
    comp = ideal.complement_coordinates()

    def project(v):
        res = ideal.residue(v)
        return tuple(res[c] for c in comp)

    proj = transpose([list(project(unit(n, c))) for c in range(n)])
    consts: dict = {}
    for a, ca in enumerate(comp):
        for b in range(a + 1, len(comp)):
            w = project(g.bracket_basis(ca, comp[b]))
            row = {k: v for k, v in enumerate(w) if v}
            if row:
                consts[(a, b)] = row
    q = LieAlgebra(len(comp), consts, names=[g.names[c] for c in comp])
    # projection is a homomorphism on basis pairs
    for i in range(n):
        for j in range(i + 1, n):
            lhs = mat_vec(proj, g.bracket_basis(i, j))
            rhs = q.bracket(mat_vec(proj, unit(n, i)), mat_vec(proj, unit(n, j))) if comp else ()
            assert tuple(lhs) == tuple(rhs)
    return q, proj


@dataclass(frozen=True)
class Fingerprint:
    lower: tuple
    upper: tuple
    commutator_centre: int
    step: int

    def as_dict(self):
        return {"lower": list(self.lower), "upper": list(self.upper),
                "commutator_centre": self.commutator_centre, "step": self.step}


def fingerprint(g: LieAlgebra) -> Fingerprint:
    s = central_series(g)
    lo, up = s.dims()
    cz = (s.descending[1] & s.ascending[1]).dim if s.step >= 1 else 0
    return Fingerprint(lo, up, cz, s.step)


def identify_small(g: LieAlgebra) -> str:
    """Name of a low-dimensional algebra from its fingerprint (reliable for dim ≤ 4 bases)."""
    fp = fingerprint(g)
    if fp.step <= 1:
        return "torus"
    if g.dim == 4 and fp.lower == (4, 1, 0) and fp.upper == (0, 2, 4):
        return "kodaira"
    if g.dim == 3 and fp.lower == (3, 1, 0):
        return "heisenberg"
    return "nilpotent"


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"abelian{n}")
