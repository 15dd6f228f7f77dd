"""Samplers of Lie algebra automorphisms with small rational entries.

Transporting an integrable J by an automorphism gives another integrable J, so
these maps are the basis of the stability and abelian-structure samplers.

Families:

* ``exp(ad_x)`` for nilpotent algebras (a finite sum);
* central shears ``1 + D`` with ``D: g → Z g`` vanishing on ``C¹g``;
* symplectic transvections on the generators of a Heisenberg summand;
* lifts of an invertible map on a complement of ``C¹g`` through the bracket,
  kept only when the lift is a well-defined automorphism (always the case for
  free 2-step algebras such as h7).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial
from typing import Callable, Iterator, Sequence

from .errors import SamplerExhausted
from .lie import LieAlgebra, central_series
from .linalg import (
    Subspace,
    columns_to_matrix,
    identity,
    inverse,
    is_zero_matrix,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    rank,
    unit,
)


def is_automorphism(g: LieAlgebra, phi: Sequence[Sequence]) -> bool:
    n = g.dim
    if rank(phi, n) != n:
        return False
    cols = [mat_vec(phi, unit(n, c)) for c in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if mat_vec(phi, g.bracket_basis(i, j)) != g.bracket(cols[i], cols[j]):
                return False
    return True


def exp_nilpotent(m: list) -> list:
    n = len(m)
    out = identity(n)
    power = identity(n)
    for k in range(1, n + 1):
        power = mat_mul(power, m)
        if is_zero_matrix(power):
            break
        out = mat_add(out, mat_scale(power, Fraction(1, factorial(k))))
    return out


def exp_ad(g: LieAlgebra, x: Sequence) -> list:
    return exp_nilpotent(g.ad(x))


def central_shear(g: LieAlgebra, rng: random.Random, bound: int = 2) -> list:
    """``1 + D`` with ``D x = Σ f_r(x) z_r`` for forms ``f_r`` vanishing on C¹g."""
    s = central_series(g)
    n = g.dim
    if s.step == 0:
        return identity(n)
    c1, z = s.descending[1], s.ascending[1]
    forms = c1.annihilator().basis
    d = [[Fraction(0)] * n for _ in range(n)]
    for f in forms:
        coeffs = [rng.randint(-bound, bound) for _ in z.basis]
        zr = [sum((c * b[k] for c, b in zip(coeffs, z.basis)), Fraction(0)) for k in range(n)]
        for r in range(n):
            if zr[r]:
                for c in range(n):
                    if f[c]:
                        d[r][c] = d[r][c] + zr[r] * f[c]
    phi = mat_add(identity(n), d)
    if rank(phi, n) != n:
        return identity(n)
    return phi


def lift_from_generators(g: LieAlgebra, a: Sequence[Sequence]) -> list | None:
    """Extend a map on the non-pivot coordinates of C¹g through brackets.

    ``a`` is a square matrix on those coordinates.  Returns None when the lift is
    not a well-defined automorphism.
    """
    s = central_series(g)
    n = g.dim
    c1 = s.descending[1] if s.step else g.zero()
    gens = c1.complement_coordinates()
    images = {}
    for col, gc in enumerate(gens):
        v = [Fraction(0)] * n
        for row, gr in enumerate(gens):
            if a[row][col]:
                v[gr] = Fraction(a[row][col])
        images[gc] = tuple(v)
    # collect bracket words until a basis of g has images
    known = {gc: unit(n, gc) for gc in gens}
    src_vecs = list(known.values())
    dst_vecs = [images[gc] for gc in gens]
    frontier = list(zip(src_vecs, dst_vecs))
    span = Subspace(n, src_vecs)
    while span.dim < n and frontier:
        new = []
        for x, fx in frontier:
            for gc in gens:
                y = g.bracket(x, unit(n, gc))
                if any(y) and y not in span:
                    fy = g.bracket(fx, images[gc])
                    span = span + Subspace(n, [y])
                    src_vecs.append(y)
                    dst_vecs.append(fy)
                    new.append((y, fy))
        frontier = new
    if span.dim < n:
        return None
    src = columns_to_matrix(src_vecs)
    dst = columns_to_matrix(dst_vecs)
    phi = mat_mul(dst, inverse(src))
    return phi if is_automorphism(g, phi) else None


def symplectic_transvection(g: LieAlgebra, rng: random.Random, bound: int = 2) -> list | None:
    """``v ↦ v + a ω(u, v) u`` on generators, for algebras with 1-dimensional C¹g.

    ``ω(u, v)`` is the coordinate of ``[u, v]`` along the generator of C¹g; the
    map fixes C¹g and is extended by the identity on the centre.
    """
    s = central_series(g)
    n = g.dim
    if s.step != 2 or s.descending[1].dim != 1:
        return None
    c = s.descending[1].basis[0]
    piv = s.descending[1].pivots[0]
    u = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
    if not any(u):
        return None
    a = Fraction(rng.choice([-2, -1, 1, 2]))
    cols = []
    for k in range(n):
        e = unit(n, k)
        w = g.bracket(tuple(u), e)[piv] / c[piv]
        cols.append(tuple(e[r] + a * w * u[r] for r in range(n)))
    phi = columns_to_matrix(cols)
    return phi if is_automorphism(g, phi) else None


def random_automorphism(g: LieAlgebra, rng: random.Random, *, rounds: int = 3, bound: int = 1) -> list:
    """Product of a few automorphisms drawn from the families above."""
    n = g.dim
    phi = identity(n)
    for _ in range(rounds):
        kind = rng.randrange(4)
        step = None
        if kind == 0:
            x = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
            step = exp_ad(g, x)
        elif kind == 1:
            step = central_shear(g, rng, bound)
        elif kind == 2:
            step = symplectic_transvection(g, rng, bound)
        else:
            s = central_series(g)
            k = len((s.descending[1] if s.step else g.zero()).complement_coordinates())
            for _attempt in range(5):
                a = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)]
                if rank([[Fraction(x) for x in r] for r in a], k) == k:
                    step = lift_from_generators(g, a)
                    if step is not None:
                        break
        if step is not None:
            phi = mat_mul(step, phi)
    assert is_automorphism(g, phi)
    return phi


def conjugate_samples(J, rng: random.Random, count: int, *, attempts: int | None = None) -> Iterator:
    """``count`` structures ``φ J φ^{-1}`` for random automorphisms ``φ``."""
    made = 0
    tries = 0
    limit = attempts if attempts is not None else 20 * count
    while made < count:
        tries += 1
        if tries > limit:
            raise SamplerExhausted(f"produced {made} of {count} samples")
        phi = random_automorphism(J.algebra, rng)
        yield J.conjugate_by(phi)
        made += 1


def family_sampler(structures: Sequence, rng: random.Random, extra: Callable | None = None) -> Callable:
    """Sampler over fixed structures plus their automorphism conjugates."""
    structures = list(structures)

    def draw():
        if extra is not None and rng.random() < 0.3:
            return extra(rng)
        base = rng.choice(structures)
        return base.conjugate_by(random_automorphism(base.algebra, rng))

    return draw

