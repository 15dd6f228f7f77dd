"""Torus bundle series: verification, proposals, sampling and related quantities.

A filtration ``0 = S^0 ⊂ S^1 ⊂ … ⊂ S^t = g`` is a torus bundle series for a
complex structure J when every term is rational, J-invariant and an ideal in
the next term, with abelian successive quotients.  It is principal when in
addition ``S^{i+1}/S^i`` is central in ``g/S^i``.

Rationality is relative to the structure-constant basis: a subspace is rational
when it has a basis with constant (parameter free) entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .complex_structure import (
    AlmostComplexStructure,
    classify,
    format_vector,
    is_integrable,
    is_j_invariant,
    j_closure,
    parse_vector,
    require_integrable,
)
from .errors import BadFiltration, HypothesisViolated, SamplerExhausted
from .fields import format_scalar, parse_scalar
from .lie import LieAlgebra, central_series, identify_small, quotient, subspace_bracket
from .fields import Gaussian
from .linalg import Subspace, is_rational, rank, rational_hull, real_points, unit

LEVELS = ("none", "torus_bundle", "principal_torus_bundle")
CONDITIONS = ("rational", "j_invariant", "ideal_in_next", "quotient_abelian", "central_in_quotient")
_CONDITION_WORDS = {
    "rational": "rationality",
    "j_invariant": "J-invariance",
    "ideal_in_next": "ideal condition",
    "quotient_abelian": "abelian quotient",
    "central_in_quotient": "central quotient",
}


class Filtration:
    """Strictly increasing chain of subspaces from 0 to g.

    ``terms`` may omit the zero subspace and g; both are added.
    """

    def __init__(self, algebra: LieAlgebra, terms: Sequence[Subspace]):
        n = algebra.dim
        chain = [Subspace.zero(n)]
        for s in terms:
            if s.ambient_dim != n:
                raise BadFiltration(f"term in ambient dimension {s.ambient_dim}, expected {n}")
            if s.is_zero() and len(chain) == 1:
                continue
            chain.append(s)
        if not chain[-1].is_full():
            chain.append(Subspace.full(n))
        for k in range(1, len(chain)):
            if not (chain[k - 1] < chain[k]):
                raise BadFiltration(f"term {k} does not strictly contain term {k - 1}")
        self.algebra = algebra
        self.terms = chain

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def dims(self) -> list[int]:
        return [s.dim for s in self.terms]

    def specialize(self, q, algebra: LieAlgebra | None = None) -> "Filtration":
        alg = algebra if algebra is not None else self.algebra.specialize(q)
        return Filtration(alg, [s.specialize(q) for s in self.terms])

    def __eq__(self, other):
        return isinstance(other, Filtration) and self.terms == other.terms

    def __repr__(self):
        return f"Filtration(dims={self.dims()})"

    def to_json(self) -> dict:
        names = self.algebra.names
        return {"format": 1,
                "terms": [[format_vector(b, names) for b in s.basis] for s in self.terms[1:-1]]}

    @classmethod
    def from_json(cls, algebra: LieAlgebra, data: Mapping) -> "Filtration":
        if "terms" not in data:
            raise BadFiltration("filtration JSON needs a 'terms' field")
        n = algebra.dim
        terms = []
        for term in data["terms"]:
            vecs = []
            for v in term:
                if isinstance(v, str):
                    vecs.append(parse_vector(v, algebra.names))
                else:
                    if len(v) != n:
                        raise BadFiltration(f"vector of length {len(v)} in dimension {n}")
                    vecs.append(tuple(parse_scalar(str(x)) for x in v))
            terms.append(Subspace(n, vecs))
        return cls(algebra, terms)


@dataclass
class StepRecord:
    index: int
    dim: int
    rational: bool
    j_invariant: bool
    ideal_in_next: bool
    quotient_abelian: bool
    central_in_quotient: bool

    def failures(self) -> list[str]:
        return [c for c in CONDITIONS if not getattr(self, c)]

    def as_dict(self) -> dict:
        d = {c: getattr(self, c) for c in CONDITIONS}
        d["step"] = self.index
        d["dim"] = self.dim
        return d


@dataclass
class SeriesVerdict:
    steps: list
    overall: str

    @property
    def is_torus_bundle(self) -> bool:
        return self.overall != "none"

    @property
    def is_principal(self) -> bool:
        return self.overall == "principal_torus_bundle"

    def messages(self) -> list[str]:
        return [f"{_CONDITION_WORDS[c]} failed at step {s.index}" for s in self.steps for c in s.failures()]

    def first_failure(self) -> tuple[int, str] | None:
        for s in self.steps:
            for c in CONDITIONS:
                if not getattr(s, c) and c != "central_in_quotient":
                    return s.index, c
        return None

    def as_dict(self) -> dict:
        return {"overall": self.overall, "steps": [s.as_dict() for s in self.steps]}


def check_series(J: AlmostComplexStructure, f: Filtration) -> SeriesVerdict:
    """Evaluate every condition at every step ``i = 1..t``.

    Step ``i`` records rationality, J-invariance and the ideal property of
    ``S^i`` (ideal in ``S^{i+1}``, with ``S^{t+1} = g``), and the quotient
    ``S^i/S^{i-1}``: abelian, and central in ``g/S^{i-1}``.
    """
    require_integrable(J)
    g = J.algebra
    if f.algebra.dim != g.dim:
        raise BadFiltration("filtration and structure live on different algebras")
    full = g.full()
    terms = f.terms
    steps = []
    for i in range(1, len(terms)):
        s, prev = terms[i], terms[i - 1]
        nxt = terms[i + 1] if i + 1 < len(terms) else full
        steps.append(StepRecord(
            index=i,
            dim=s.dim,
            rational=is_rational(s),
            j_invariant=is_j_invariant(J, s),
            ideal_in_next=s.contains(subspace_bracket(g, s, nxt)),
            quotient_abelian=prev.contains(subspace_bracket(g, s, s)),
            central_in_quotient=prev.contains(subspace_bracket(g, s, full)),
        ))
    base = all(all(getattr(r, c) for c in CONDITIONS[:4]) for r in steps)
    if not base:
        overall = "none"
    elif all(r.central_in_quotient for r in steps):
        overall = "principal_torus_bundle"
    else:
        overall = "torus_bundle"
    return SeriesVerdict(steps, overall)


# ---------------------------------------------------------------------------
# base and fibre of the first fibration
# ---------------------------------------------------------------------------

def _torus_word(complex_dim: int) -> str:
    if complex_dim == 0:
        return "point"
    if complex_dim == 1:
        return "elliptic curve"
    return f"{complex_dim}-torus"


@dataclass
class BundleShape:
    fibre_dim: int
    base_dim: int
    fibre: str
    base: str

    def as_dict(self) -> dict:
        return {"fibre_dim": self.fibre_dim, "base_dim": self.base_dim, "fibre": self.fibre, "base": self.base}


def bundle_shape(f: Filtration) -> BundleShape:
    """Fibre ``S^1`` and base ``g/S^1`` (complex dimensions), named by fingerprint.

    For the one-step filtration ``0 ⊂ g`` the fibre is trivial and the base is g.
    """
    g = f.algebra
    if f.length == 1:
        return BundleShape(0, g.dim // 2, "-", _torus_word(g.dim // 2))
    s1 = f.terms[1]
    q, _ = quotient(g, s1)
    kind = identify_small(q)
    if kind == "torus":
        base = _torus_word(q.dim // 2)
    elif kind == "kodaira":
        base = "Kodaira surface"
    else:
        base = f"{kind} (real dim {q.dim})"
    return BundleShape(s1.dim // 2, q.dim // 2, _torus_word(s1.dim // 2), base)


# ---------------------------------------------------------------------------
# proposals
# ---------------------------------------------------------------------------

@dataclass
class Proposal:
    filtration: Filtration | None
    label: str
    verdict: SeriesVerdict | None
    tried: list = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"label": self.label, "tried": self.tried}
        if self.filtration is not None:
            out["dims"] = self.filtration.dims()
            out["filtration"] = self.filtration.to_json()
            out["verdict"] = self.verdict.as_dict()
            out["shape"] = bundle_shape(self.filtration).as_dict()
        return out


def canonical_candidate(J: AlmostComplexStructure) -> tuple[str, list] | None:
    """The candidate dictated by ``(dim C¹, step, dim Z, dim C¹∩Z)``.

    Case table, in order:

    ==========================  ==============================================
    abelian g                   ``0 ⊂ g``
    dim C¹ = 1                  ascending central series
    dim C¹ = 2, step 3          ascending central series
    dim C¹ = 2, step 2, Z odd   ``0 ⊂ C¹ ⊂ g``
    dim C¹ = 2, step 2, Z even  ``0 ⊂ C¹ ⊂ g`` if C¹ is J-invariant, else ``0 ⊂ Z ⊂ g``
    dim C¹ = 3, step 4          ascending central series
    dim C¹ = 3, step 3,         ``0 ⊂ C¹∩Z ⊂ Z² ⊂ g``
    dim C¹∩Z = 2, dim Z odd
    or 2, dim Z² even
    Z = C¹ of even dimension    ``0 ⊂ Z ⊂ g``
    ==========================  ==============================================
    """
    g = J.algebra
    s = central_series(g)
    full = g.full()
    if s.step <= 1:
        return "abelian: trivial filtration", [full]
    c1, z = s.descending[1], s.ascending[1]
    dc = c1.dim
    cz = c1 & z
    if dc == 1:
        return "dim C1 = 1: ascending central series", s.ascending[1:]
    if dc == 2:
        if s.step == 3:
            return "dim C1 = 2, step 3: ascending central series", s.ascending[1:]
        if z.dim % 2:
            return "dim C1 = 2, dim Z odd: 0 < C1 < g", [c1, full]
        if is_j_invariant(J, c1):
            return "dim C1 = 2, dim Z even, C1 invariant: 0 < C1 < g", [c1, full]
        return "dim C1 = 2, dim Z even, Z invariant: 0 < Z < g", [z, full]
    if dc == 3:
        if s.step == 4:
            return "dim C1 = 3, step 4: ascending central series", s.ascending[1:]
        z2 = s.ascending[2] if s.step >= 2 else full
        if s.step == 3 and cz.dim == 2 and (z.dim % 2 or z.dim == 2) and z2.dim % 2 == 0:
            return "dim C1 = 3, dim C1 cap Z = 2: 0 < C1 cap Z < Z2 < g", [cz, z2, full]
    if z == c1 and z.dim % 2 == 0:
        return "Z = C1: 0 < Z < g", [z, full]
    return None


def ad_square_zero_locus(g: LieAlgebra) -> Subspace | None:
    """``{x | (ad_x)² = 0}`` when that set is a linear subspace, else None.

    Solved symbolically; each solution branch must be a linear parametrisation.
    """
    import sympy

    n = g.dim
    xs = sympy.symbols(f"x0:{n}", real=True)
    ad = sympy.zeros(n, n)
    for c in range(n):
        for i in range(n):
            col = g.bracket_basis(i, c)
            for r in range(n):
                if col[r]:
                    ad[r, c] += xs[i] * sympy.Rational(col[r].numerator, col[r].denominator)
    sq = ad * ad
    eqs = [sympy.expand(e) for e in sq if sympy.expand(e) != 0]
    if not eqs:
        return g.full()
    sols = sympy.solve(eqs, xs, dict=True)

    def rat(c):
        return Fraction(int(sympy.numer(c)), int(sympy.denom(c)))

    comps = []
    for sol in sols:
        exprs = [sympy.expand(sol.get(x, x)) for x in xs]
        free = sorted(set().union(*(e.free_symbols for e in exprs)), key=str)
        if any(e.subs({fv: 0 for fv in free}) != 0 for e in exprs):
            return None
        vecs = []
        for fv in free:
            vec = []
            for e in exprs:
                coeff = sympy.diff(e, fv)
                if coeff.free_symbols:
                    return None  # nonlinear branch
                re, im = sympy.re(coeff), sympy.im(coeff)
                vec.append(Gaussian(rat(re), rat(im)) if im else rat(re))
            vecs.append(vec)
        branch = Subspace(n, [[x if isinstance(x, Gaussian) else Gaussian(x, 0) for x in v] for v in vecs])
        # real points of a complex branch lie in its intersection with the conjugate
        comps.append(real_points(branch & branch.conjugate()))
    if not comps:
        return g.zero()
    big = max(comps, key=lambda c: c.dim)
    if not all(big.contains(c) for c in comps):
        return None
    # independent confirmation on the basis of the answer and pairwise sums
    for v in big.basis:
        m = g.ad(v)
        if any(any(x for x in row) for row in _matsq(m)):
            return None
    for a in range(big.dim):
        for b in range(a + 1, big.dim):
            v = tuple(x + y for x, y in zip(big.basis[a], big.basis[b]))
            if any(any(x for x in row) for row in _matsq(g.ad(v))):
                return None
    return big


def _matsq(m):
    n = len(m)
    return [[sum((m[r][k] * m[k][c] for k in range(n) if m[r][k] and m[k][c]), Fraction(0))
             for c in range(n)] for r in range(n)]


def propose_series(J: AlmostComplexStructure) -> Proposal:
    """Canonical candidate, validated; then the fallbacks.

    Fallbacks: the T-series when J is nilpotent; otherwise ``0 ⊂ C¹ ⊂ g`` and
    ``0 ⊂ {x | (ad_x)² = 0} ⊂ g``.  The first candidate that is at least a torus
    bundle series for J is returned; otherwise the label is ``none``.
    """
    cls = classify(J)
    g = J.algebra
    tried = []
    candidates = []
    canon = canonical_candidate(J)
    if canon is not None:
        candidates.append(canon)
    if cls.nilpotent_J:
        candidates.append(("T-series of J", cls.t_series[1:]))
    else:
        s = central_series(g)
        candidates.append(("non-nilpotent J: 0 < C1 < g", [s.descending[1]]))
        locus = ad_square_zero_locus(g)
        if locus is not None and not locus.is_zero() and not locus.is_full():
            candidates.append(("non-nilpotent J: 0 < {x : ad_x^2 = 0} < g", [locus]))
    for label, terms in candidates:
        try:
            f = Filtration(g, terms)
        except BadFiltration:
            tried.append({"label": label, "overall": "invalid filtration"})
            continue
        v = check_series(J, f)
        tried.append({"label": label, "overall": v.overall})
        if v.is_torus_bundle:
            return Proposal(f, label, v, tried)
    return Proposal(None, "none", None, tried)


# ---------------------------------------------------------------------------
# sampling stability
# ---------------------------------------------------------------------------

EVIDENCE_NOTE = "no counterexample among the sampled structures; this is evidence, not a proof"


@dataclass
class StabilityReport:
    outcome: str  # "no_counterexample" or "counterexample"
    samples: int
    counterexample: AlmostComplexStructure | None = None
    verdict: SeriesVerdict | None = None
    note: str = EVIDENCE_NOTE

    def as_dict(self) -> dict:
        out = {"outcome": self.outcome, "samples": self.samples}
        if self.outcome == "counterexample":
            out["structure"] = self.counterexample.to_json()
            out["verdict"] = self.verdict.as_dict()
            out["failures"] = self.verdict.messages()
        else:
            out["note"] = self.note
        return out


def stability_sample(f: Filtration, sampler: Callable[[], AlmostComplexStructure], count: int, *,
                     principal: bool = False, max_attempts: int | None = None) -> StabilityReport:
    """Check ``f`` against ``count`` integrable structures drawn from ``sampler``.

    Non-integrable draws are skipped; ``SamplerExhausted`` is raised when too few
    integrable structures come out.
    """
    limit = max_attempts if max_attempts is not None else 10 * count + 10
    need = "principal_torus_bundle" if principal else "torus_bundle"
    done = attempts = 0
    while done < count:
        attempts += 1
        if attempts > limit:
            raise SamplerExhausted(f"only {done} of {count} integrable structures after {limit} draws")
        J = sampler()
        if not is_integrable(J):
            continue
        done += 1
        v = check_series(J, f)
        if LEVELS.index(v.overall) < LEVELS.index(need):
            return StabilityReport("counterexample", done, J, v)
    return StabilityReport("no_counterexample", done)


# ---------------------------------------------------------------------------
# Albanese quotient and the surjectivity hypothesis
# ---------------------------------------------------------------------------

def albanese_dimension(J: AlmostComplexStructure) -> tuple[Subspace, int]:
    """Smallest J-invariant rational ``W ⊇ C¹g`` and ``(dim g - dim W)/2``."""
    require_integrable(J)
    g = J.algebra
    s = central_series(g)
    w = s.descending[1] if s.step else g.zero()
    for _ in range(g.dim + 1):
        nxt = rational_hull(j_closure(J, w))
        if nxt == w:
            break
        w = nxt
    else:  # pragma: no cover - dimensions grow strictly
        raise AssertionError("albanese fixpoint did not stabilise")
    assert is_j_invariant(J, w) and is_rational(w)
    gap = g.dim - w.dim
    assert gap % 2 == 0, "J-invariant subspace of odd codimension"
    return w, gap // 2


@dataclass
class RefuterReport:
    outcome: str  # "no_counterexample" or "witness"
    samples: int
    witness: tuple | None = None
    witness_rank: int | None = None
    note: str = "no witness among the sampled elements; this is evidence, not a proof"

    def as_dict(self, names: Sequence[str] | None = None) -> dict:
        out = {"outcome": self.outcome, "samples": self.samples}
        if self.witness is not None:
            out["witness"] = format_vector(self.witness, names) if names else [format_scalar(x) for x in self.witness]
            out["rank"] = self.witness_rank
        else:
            out["note"] = self.note
        return out


def ad_surjectivity_refuter(g: LieAlgebra, count: int = 200, *, seed: int = 0, bound: int = 3) -> RefuterReport:
    """Look for ``x ∉ Z`` with ``ad_x: g → C¹g`` not onto.  Requires ``Z = C¹``.

    Basis vectors outside the centre are tried first, then random small-integer
    vectors.
    """
    s = central_series(g)
    n = g.dim
    c1 = s.descending[1] if s.step else g.zero()
    z = s.ascending[1] if s.step else g.full()
    if z != c1:
        raise HypothesisViolated(f"centre (dim {z.dim}) differs from the commutator (dim {c1.dim})")
    rng = random.Random(seed)

    def candidates():
        for k in range(n):
            yield unit(n, k)
        while True:
            yield tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))

    tested = 0
    for x in candidates():
        if tested >= count:
            break
        if x in z:
            continue
        tested += 1
        r = rank(g.ad(x), n)
        if r < c1.dim:
            return RefuterReport("witness", tested, x, r)
    return RefuterReport("no_counterexample", tested)
