from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from nilcx.errors import AmbientMismatch, NotConjugationStable
from nilcx.fields import Gaussian, T, parse_scalar
from nilcx.linalg import (
    Subspace,
    complexify,
    inverse,
    is_rational,
    kernel,
    mat_mul,
    identity,
    rank,
    rational_hull,
    real_points,
    rref,
)
from nilcx.rank import sparse_rank

N = 5
entries = st.integers(-3, 3).map(Fraction)
vectors = st.lists(entries, min_size=N, max_size=N)
spanning = st.lists(vectors, min_size=0, max_size=4)
subspaces = spanning.map(lambda vs: Subspace(N, vs))

param_entries = st.sampled_from(["0", "1", "-1", "2", "t", "t+1", "1/2*t^2", "-t"]).map(parse_scalar)
param_subspaces = st.lists(st.lists(param_entries, min_size=N, max_size=N), max_size=3).map(
    lambda vs: Subspace(N, vs))


def sympy_rank(rows):
    if not rows:
        return 0
    return sp.Matrix([[sp.Rational(str(x)) for x in r] for r in rows]).rank()


@settings(max_examples=500)
@given(subspaces, subspaces)
def test_echelon_basis_is_canonical(a, b):
    mutual = all(v in b for v in a.basis) and all(v in a for v in b.basis)
    assert (a == b) == mutual
    assert (a.basis == b.basis) == mutual


@given(spanning)
def test_rank_matches_sympy(rows):
    assert rank(rows, N) == sympy_rank(rows)
    assert Subspace(N, rows).dim == sympy_rank(rows)


@given(spanning)
def test_sparse_rank_matches_sympy(rows):
    sparse = [{k: x for k, x in enumerate(r) if x} for r in rows]
    assert sparse_rank(sparse) == sympy_rank(rows)


@given(st.lists(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=4, max_size=4),
                max_size=5))
def test_gaussian_sparse_rank_matches_sympy(rows):
    sparse = [{k: Gaussian(a, b) for k, (a, b) in enumerate(r) if a or b} for r in rows]
    dense = [[a + sp.I * b for a, b in r] for r in rows]
    expect = sp.Matrix(dense).rank(simplify=True) if rows else 0
    assert sparse_rank(sparse) == expect


@given(subspaces, subspaces)
def test_modular_law(a, b):
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert a & b <= a and a <= a + b


@given(spanning)
def test_kernel_and_annihilator(rows):
    k = kernel(rows, N)
    assert k.dim == N - sympy_rank(rows)
    for v in k.basis:
        assert all(sum(r[i] * v[i] for i in range(N)) == 0 for r in rows)
    s = Subspace(N, rows)
    assert s.annihilator().dim == N - s.dim


@given(spanning)
def test_rref_is_idempotent(rows):
    red, piv = rref(rows, N)
    red2, piv2 = rref(red, N)
    assert red == red2 and piv == piv2


def test_inverse():
    m = [[Fraction(x) for x in r] for r in ([2, 1, 0], [1, 1, 0], [0, 3, 1])]
    assert mat_mul(m, inverse(m)) == identity(3)
    with pytest.raises(ValueError):
        inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace(3) + Subspace(4)


# -- rational hull ------------------------------------------------------------------

@given(param_subspaces, param_subspaces)
def test_rational_hull_is_a_closure_operator(a, b):
    h = rational_hull(a)
    assert a <= h
    assert rational_hull(h) == h
    assert is_rational(h)
    if a <= b:
        assert h <= rational_hull(b)
    assert rational_hull(a) <= rational_hull(a + b)


def test_rational_hull_examples():
    one = Fraction(1)
    v = Subspace(3, [[one, T, Fraction(0)]])
    assert rational_hull(v) == Subspace.coordinate(3, [0, 1])
    assert not is_rational(v)
    w = Subspace(3, [[T, T, Fraction(0)]])
    assert is_rational(w)
    assert rational_hull(Subspace(3, [[one, one / (T + 1), Fraction(0)]])).dim == 2


# -- complexification ---------------------------------------------------------------

@given(subspaces)
def test_real_points_of_complexify(u):
    assert real_points(complexify(u)) == u


def test_real_points_of_conjugate_pair():
    i = Gaussian(0, 1)
    one, zero = Gaussian(1), Gaussian(0)
    u = Subspace(2, [[one, i]])
    with pytest.raises(NotConjugationStable):
        real_points(u)
    both = u + u.conjugate()
    assert real_points(both) == Subspace.full(2)
    assert (u & u.conjugate()).is_zero()
    assert Subspace(2, [[one, zero]]).conjugate() == Subspace(2, [[one, zero]])
