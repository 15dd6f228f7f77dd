"""Exact dense linear algebra and the canonical :class:`Subspace` type.

A subspace is stored by the reduced row echelon form of any spanning set, so two
subspaces are equal exactly when their stored bases are identical.  Vectors are
plain tuples of scalars from :mod:`nilcx.fields`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatch, DimensionMismatch, NotConjugationStable
from .fields import (
    Gaussian,
    RationalFunction,
    _pmul,
    _pdivmod,
    conj,
    imag_part,
    is_parametric,
    normalize,
    real_part,
    specialize,
)

Vector = tuple
Matrix = list  # list of rows


def _coerce(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    m = [[_coerce(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = [x * inv if x else x for x in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    m[i] = [row[j] - f * prow[j] if prow[j] else row[j] for j in range(ncols)]
        pivots.append(c)
        r += 1
    return [[normalize(x) for x in row] for row in m[:r]], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def kernel(rows: Sequence[Sequence], ncols: int) -> "Subspace":
    """Null space ``{v : M v = 0}`` of the matrix with the given rows."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace(ncols, basis)


def reduce(m: Sequence[Sequence], ncols: int | None = None):
    """``(rref, rank, kernel)`` of a matrix given by rows."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    red, pivots = rref(m, ncols)
    return red, len(pivots), kernel(m, ncols)


# ---------------------------------------------------------------------------
# small matrix helpers (row-major lists of lists)
# ---------------------------------------------------------------------------

def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    if m and len(m[0]) != len(v):
        raise DimensionMismatch(f"matrix with {len(m[0])} columns applied to length-{len(v)} vector")
    out = []
    for row in m:
        acc = Fraction(0)
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(normalize(acc))
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [list(mat_vec(bt, row)) for row in a]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in r] for r in a]


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def is_zero_matrix(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def columns_to_matrix(cols: Sequence[Sequence]) -> Matrix:
    return transpose([list(c) for c in cols])


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

def _vec_neg(v):
    return tuple(-x for x in v)


def unit(n: int, k: int) -> Vector:
    return tuple(Fraction(int(i == k)) for i in range(n))


class Subspace:
    """Linear subspace of F^n held in reduced row echelon form."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, pivots = rref(vectors, ambient_dim) if vectors else ([], [])
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, [unit(n, k) for k in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __repr__(self):
        rows = ["(" + ", ".join(str(x) for x in b) + ")" for b in self.basis]
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, [{', '.join(rows)}])"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    # membership ----------------------------------------------------------
    def residue(self, v: Sequence) -> Vector:
        """Reduce ``v`` modulo the subspace; zero exactly when ``v`` is a member."""
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        w = [_coerce(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                w = [a - c * b if b else a for a, b in zip(w, row)]
        return tuple(normalize(x) for x in w)

    def __contains__(self, v) -> bool:
        return not any(self.residue(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the stored basis (``v`` must be a member)."""
        if v not in self:
            raise ValueError("vector is not in the subspace")
        return tuple(_coerce(v[p]) for p in self.pivots)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(b in self for b in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __ge__(self, other: "Subspace") -> bool:
        return self.contains(other)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    # lattice operations ---------------------------------------------------
    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def __and__(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection: echelonize ``[[A, A], [B, 0]]``."""
        self._check(other)
        n = self.ambient_dim
        if self.is_zero() or other.is_zero():
            return Subspace(n)
        zero = [Fraction(0)] * n
        block = [list(a) + list(a) for a in self.basis] + [list(b) + zero for b in other.basis]
        red, pivots = rref(block, 2 * n)
        return Subspace(n, [row[n:] for row, p in zip(red, pivots) if p >= n])

    sum = __add__
    intersection = __and__

    def image(self, m: Matrix) -> "Subspace":
        """Image under the linear map with matrix ``m`` (acting on column vectors)."""
        return Subspace(len(m), [mat_vec(m, b) for b in self.basis])

    def annihilator(self) -> "Subspace":
        """Linear forms (as coefficient vectors) vanishing on the subspace."""
        if self.is_zero():
            return Subspace.full(self.ambient_dim)
        return kernel([list(b) for b in self.basis], self.ambient_dim)

    def complement_coordinates(self) -> list[int]:
        piv = set(self.pivots)
        return [k for k in range(self.ambient_dim) if k not in piv]

    # field manipulations --------------------------------------------------
    def conjugate(self) -> "Subspace":
        return Subspace(self.ambient_dim, [[conj(x) for x in b] for b in self.basis])

    def is_parametric(self) -> bool:
        return any(is_parametric(x) for b in self.basis for x in b)

    def specialize(self, q) -> "Subspace":
        return Subspace(self.ambient_dim, [[specialize(x, q) for x in b] for b in self.basis])


def span(n: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace(n, vectors)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def complexify(u: Subspace) -> Subspace:
    """The same subspace regarded over F(i); echelon bases are unchanged."""
    return Subspace(u.ambient_dim, [[Gaussian(x, 0) for x in b] for b in u.basis])


def real_points(u: Subspace) -> Subspace:
    """F-subspace of conjugation-fixed vectors of a conjugation-stable ``u``."""
    if u.conjugate() != u:
        raise NotConjugationStable("subspace is not stable under complex conjugation")
    vecs = []
    for b in u.basis:
        vecs.append([real_part(x) for x in b])
        vecs.append([imag_part(x) for x in b])
    out = Subspace(u.ambient_dim, vecs)
    assert out.dim == u.dim
    return out


def _clear_denominators(v: Sequence) -> list[tuple]:
    """Numerator polynomials of ``v`` after multiplying by the lcm of denominators."""
    dens = [x.den for x in v if isinstance(x, RationalFunction)]
    lcm: tuple = (Fraction(1),)
    for d in dens:
        if len(d) > 1:
            from .fields import _pgcd

            g = _pgcd(lcm, d)
            lcm = _pdivmod(_pmul(lcm, d), g)[0]
    out = []
    for x in v:
        if isinstance(x, Gaussian):
            raise ValueError("rational hull is defined for real subspaces only")
        if isinstance(x, RationalFunction):
            out.append(_pdivmod(_pmul(x.num, lcm), x.den)[0])
        else:
            out.append(_pmul((Fraction(x),) if x else (), lcm))
    return out


def rational_hull(w: Subspace) -> Subspace:
    """Smallest subspace containing ``w`` that has a basis with constant entries."""
    vecs = []
    for b in w.basis:
        polys = _clear_denominators(b)
        top = max((len(p) for p in polys), default=0)
        for k in range(top):
            vecs.append([p[k] if k < len(p) else Fraction(0) for p in polys])
    return Subspace(w.ambient_dim, vecs)


def is_rational(w: Subspace) -> bool:
    return rational_hull(w) == w
