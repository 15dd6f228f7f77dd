import random
from fractions import Fraction

import pytest

from nilcx.automorphisms import random_automorphism
from nilcx.catalog import catalog_get, heisenberg
from nilcx.complex_structure import (
    AlmostComplexStructure,
    classify,
    format_vector,
    invariant_subspace_via_eigenspaces,
    is_integrable,
    is_j_invariant,
    largest_invariant_subspace,
    nijenhuis_vanishes,
    p10_is_subalgebra,
    parse_vector,
    random_almost_complex,
    v_series,
)
from nilcx.errors import NotAlmostComplex, NotIntegrable
from nilcx.fields import I, T
from nilcx.lie import central_series, subspace_bracket
from nilcx.linalg import Subspace, identity, mat_mul
from nilcx.notation import parse_salamon


def integrable_structures(catalog):
    out = []
    for e in catalog.values():
        for k, J in e.structures.items():
            if is_integrable(J):
                out.append((e.name, k, J))
    return out


def test_rejects_non_complex_matrix():
    g = parse_salamon("(0,0,0,0)")
    with pytest.raises(NotAlmostComplex):
        AlmostComplexStructure(g, identity(4))
    with pytest.raises(NotAlmostComplex):
        AlmostComplexStructure.from_action(g, [["e1", "e2"], ["e1", "e3"]])


def test_from_action_and_matrix_agree():
    g = catalog_get("h7").algebra
    J = AlmostComplexStructure.from_action(g, [["e1", "e2"], ["e3", "e4 + t*e1"], ["e5", "e6"]])
    assert mat_mul(J.matrix, J.matrix) == [[-x for x in r] for r in identity(6)]
    assert J.apply(parse_vector("e3", g.names)) == parse_vector("e4 + t*e1", g.names)
    again = AlmostComplexStructure.from_json(g, J.to_json())
    assert again == J


def test_vector_text():
    names = ["e1", "e2", "e3"]
    v = parse_vector("2*e1 - t*e3", names)
    assert v == (Fraction(2), Fraction(0), -T)
    assert parse_vector(format_vector(v, names), names) == v
    assert format_vector((0, 0, 0), names) == "0"


def test_p10_is_the_i_eigenspace(catalog):
    J = catalog["h5"].structure()
    p, q = J.p10(), J.p01()
    assert p.dim == 3
    for v in p.basis:
        assert J.apply(v) == tuple(I * x for x in v)
    assert q == p.conjugate()
    assert (p & q).is_zero() and (p + q).dim == 6


def test_integrability_oracles_on_catalog(catalog):
    for e in catalog.values():
        for k, J in e.structures.items():
            assert nijenhuis_vanishes(J) == p10_is_subalgebra(J), (e.name, k)


def test_integrability_oracles_on_random_structures(valid_entries):
    rng = random.Random(8)
    for e in valid_entries:
        if e.algebra.dim > 10 or e.algebra.is_parametric():
            continue
        for _ in range(10):
            J = random_almost_complex(e.algebra, rng)
            assert nijenhuis_vanishes(J) == p10_is_subalgebra(J), e.name


def test_random_structures_are_usually_not_integrable():
    rng = random.Random(2)
    g = catalog_get("h7").algebra
    flags = [is_integrable(random_almost_complex(g, rng)) for _ in range(20)]
    assert not all(flags)


def test_series_inclusions(catalog):
    for name, k, J in integrable_structures(catalog):
        g = J.algebra
        s = central_series(g)
        cls = classify(J)
        for i, t in enumerate(cls.t_series):
            assert s.ascending[min(i, s.step)].contains(t), (name, k, i)
        cj = cls.cJ_series
        for i in range(min(len(cj), len(s.descending))):
            assert cj[i].contains(s.descending[i]), (name, k, i)
        if len(cj) > 1:
            assert not cj[1].is_full()


def test_two_step_structures_are_nilpotent(catalog):
    rng = random.Random(5)
    for name, k, J in integrable_structures(catalog):
        if central_series(J.algebra).step != 2:
            continue
        assert classify(J).nilpotent_J, (name, k)
        if J.is_parametric():
            continue
        K = J.conjugate_by(random_automorphism(J.algebra, rng))
        assert is_integrable(K) and classify(K).nilpotent_J


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 3), (3, 1), (2, 3)])
def test_heisenberg_structures_are_abelian(n, m):
    rng = random.Random(n * 10 + m)
    e = heisenberg(n, m)
    J = e.structure("J")
    assert classify(J).abelian
    for _ in range(5):
        K = J.conjugate_by(random_automorphism(e.algebra, rng))
        assert is_integrable(K) and classify(K).abelian


def test_centre_lemma(catalog):
    # im(ad_{Jz}) meets <z, Jz> trivially for central z
    for name, k, J in integrable_structures(catalog):
        g = J.algebra
        for z in central_series(g).ascending[1].basis:
            jz = J.apply(z)
            image = Subspace(g.dim, [g.bracket(jz, g.unit(i)) for i in range(g.dim)])
            assert (image & Subspace(g.dim, [z, jz])).is_zero(), (name, k)


def test_no_invariant_subspace_in_commutator_implies_abelian(catalog):
    for name, k, J in integrable_structures(catalog):
        c1 = central_series(J.algebra).descending[1]
        if largest_invariant_subspace(J, c1).is_zero():
            assert classify(J).abelian, (name, k)


def test_largest_invariant_subspace_two_routes():
    rng = random.Random(9)
    pool = [catalog_get(n).structure() for n in ("h2", "h7", "h15", "h26p", "ex2ev", "badex")]
    for _ in range(200):
        J = rng.choice(pool)
        n = J.dim
        vecs = [[Fraction(rng.randint(-1, 1)) for _ in range(n)] for _ in range(rng.randint(0, n))]
        if rng.random() < 0.5 and vecs:
            vecs.append(list(J.apply(vecs[0])))
        v = Subspace(n, vecs)
        a = largest_invariant_subspace(J, v)
        assert a == invariant_subspace_via_eigenspaces(J, v)
        assert is_j_invariant(J, a) and v.contains(a)


def test_conjugation_preserves_classification():
    rng = random.Random(1)
    for name in ("h4", "h9", "h15", "h26p"):
        J = catalog_get(name).structure()
        K = J.conjugate_by(random_automorphism(J.algebra, rng))
        assert is_integrable(K)
        a, b = classify(J).as_dict(), classify(K).as_dict()
        assert a == b


def test_v_series_terms_are_invariant(catalog):
    for name, k, J in integrable_structures(catalog):
        series = v_series(J)
        zj = series[0][0]
        assert is_j_invariant(J, zj)
        for w, v in series:
            # W_i = Z_J ∩ C^i need not be invariant, V_{i+1} = [W_i, g] always is
            assert is_j_invariant(J, v) and zj.contains(w)
            assert subspace_bracket(J.algebra, w, J.algebra.full()) == v


def test_not_integrable_raises():
    rng = random.Random(3)
    g = catalog_get("h7").algebra
    while True:
        J = random_almost_complex(g, rng)
        if not is_integrable(J):
            break
    with pytest.raises(NotIntegrable):
        classify(J)


def test_specialized_parametric_structure():
    J = catalog_get("h7").structure("J_t")
    assert J.is_parametric()
    K = J.specialize(Fraction(2))
    assert not K.is_parametric() and is_integrable(K)
