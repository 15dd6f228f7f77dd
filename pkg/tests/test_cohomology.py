from math import comb

import pytest

import oracles
from nilcx.catalog import SIX_DIMENSIONAL, catalog_get, torus_over_curve
from nilcx.cohomology import (
    ComplexFrame,
    check_dbar_squared,
    closed_holomorphic_one_forms,
    cohomology_table,
    de_rham_betti,
    dolbeault_dims,
    render_hodge,
    valued_dolbeault,
)
from nilcx.complex_structure import AlmostComplexStructure, classify, is_integrable
from nilcx.lie import abelian, central_series

RATIONAL_SIX = [n for n in SIX_DIMENSIONAL if not catalog_get(n).structure().is_parametric()]


def complex_torus(m):
    g = abelian(2 * m)
    pairs = [[f"e{2 * k + 1}", f"e{2 * k + 2}"] for k in range(m)]
    return AlmostComplexStructure.from_action(g, pairs)


@pytest.mark.parametrize("name", SIX_DIMENSIONAL + ["ex2ev", "badmtbs"])
def test_betti_matches_oracle(name):
    g = catalog_get(name).algebra
    b = de_rham_betti(g)
    assert b == oracles.betti(g)
    assert b == b[::-1]


@pytest.mark.parametrize("name", RATIONAL_SIX)
def test_hodge_numbers_match_oracle(name):
    J = catalog_get(name).structure()
    assert dolbeault_dims(J) == oracles.hodge_numbers(J)


def test_dbar_squared_vanishes(catalog):
    for e in catalog.values():
        if e.algebra.dim > 10:
            continue
        for J in e.structures.values():
            if not is_integrable(J):
                continue
            frame = ComplexFrame(J)
            for p in range(frame.m + 1):
                for q in range(frame.m - 1):
                    check_dbar_squared(frame, p, q)


def test_b1_is_annihilator_of_commutator(valid_entries):
    for e in valid_entries:
        g = e.algebra
        c1 = central_series(g).descending[1] if central_series(g).step else g.zero()
        assert de_rham_betti(g, degrees=[1])[1] == c1.annihilator().dim


def test_table_diagnostics():
    for name in ("h2", "h7", "h19m"):
        J = catalog_get(name).structure()
        t = cohomology_table(J.algebra, J)
        assert t.diagnostics["poincare_duality"]
        assert t.diagnostics["euler_per_p"] == [0] * 4
        assert t.diagnostics["serre_duality"]
        assert t.to_json()["hodge"] == t.hodge


@pytest.mark.parametrize("m", [1, 2, 3])
def test_torus(m):
    J = complex_torus(m)
    h = dolbeault_dims(J)
    assert h == [[comb(m, p) * comb(m, q) for q in range(m + 1)] for p in range(m + 1)]
    assert valued_dolbeault(J, 0) == m
    assert valued_dolbeault(J, 1) == m * m


def test_iwasawa():
    J = catalog_get("h5").structure()
    assert classify(J).parallelisable
    h = dolbeault_dims(J)
    assert h[1][0] == 3
    # T^{1,0} is spanned by invariant holomorphic fields, so H^{0,q}(Θ) = C^3 ⊗ H^{0,q}
    ref = oracles.hodge_numbers(J)
    assert [valued_dolbeault(J, q) for q in range(4)] == [3 * ref[0][q] for q in range(4)] == [3, 6, 6, 3]


def test_holomorphic_one_forms_routes():
    for name in SIX_DIMENSIONAL:
        J = catalog_get(name).structure()
        h = closed_holomorphic_one_forms(J)
        assert h.d_closed == h.annihilator
        assert h.dbar_closed.contains(h.d_closed)
        assert h.dbar_closed.dim == dolbeault_dims(J, cells=[(1, 0)])[1][0]


def test_holomorphic_one_forms_examples():
    assert closed_holomorphic_one_forms(complex_torus(3)).dim == 3
    e = torus_over_curve(3)
    J = e.structure()
    assert de_rham_betti(e.algebra, degrees=[1])[1] == 7
    assert closed_holomorphic_one_forms(J).dim == 3
    assert closed_holomorphic_one_forms(J).dbar_agrees
    assert closed_holomorphic_one_forms(catalog_get("h7").structure("J0")).dim == 1


def test_iwasawa_has_non_closed_holomorphic_form():
    h = closed_holomorphic_one_forms(catalog_get("h5").structure())
    assert (h.dim, h.dbar_closed.dim) == (2, 3)


def test_eighteen_low_degrees():
    e = catalog_get("dim18r")
    g = e.algebra
    b = de_rham_betti(g, degrees=[0, 1, 2])
    assert b[0] == 1 and b[1] == 18 - 3
    J = e.structure("J1")
    h = dolbeault_dims(J, cells=[(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)])
    assert h[0][0] == 1
    assert h[1][0] == closed_holomorphic_one_forms(J).dbar_closed.dim


def test_render_hodge():
    text = render_hodge(dolbeault_dims(complex_torus(2)))
    assert text.splitlines()[2].split() == ["1", "4", "1"]


@pytest.mark.slow
def test_eighteen_full_table():
    J = catalog_get("dim18r").structure("J1")
    h = dolbeault_dims(J)
    m = 9
    for p in range(m + 1):
        assert sum((-1) ** q * h[p][q] for q in range(m + 1)) == 0
    assert all(h[p][q] == h[m - p][m - q] for p in range(m + 1) for q in range(m + 1))
