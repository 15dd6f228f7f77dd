import json
import re

import pytest

from nilcx.catalog import (
    HIGHER,
    SIX_DIMENSIONAL,
    all_entries,
    catalog_get,
    catalog_names,
    heisenberg,
    torus_over_curve,
    verify_all,
)
from nilcx.errors import UnknownEntry
from nilcx.lie import LieAlgebra, check_jacobi
from nilcx.notation import parse_extended, serialize_extended

EXPECTED_KNOWN = {
    ("dim18", "jacobi"),
    ("dim18", "d^2 = 0 oracle"),
    ("nilnonnilexam", "upper central dims"),
    ("nilnonnilexam", "J1: V = [Z_J, g]"),
}


def test_names():
    names = catalog_names()
    assert set(SIX_DIMENSIONAL + HIGHER) <= set(names)
    assert len(names) == len(set(names))
    assert {e.name for e in all_entries()} == set(names)


def test_verify_all_has_only_documented_discrepancies(verify_report):
    assert verify_report.ok
    assert verify_report.failures() == []
    assert {(r.entry, r.check) for r in verify_report.known()} == EXPECTED_KNOWN
    assert all(r.known for r in verify_report.known())
    summary = verify_report.text().splitlines()[-1]
    assert "4 known discrepancies, 0 failures" in summary
    assert json.loads(json.dumps(verify_report.to_json()))["ok"]


def test_verify_subset_without_cohomology():
    rep = verify_all(["h7", "badex"], cohomology=False)
    assert rep.ok and {r.entry for r in rep.results} == {"h7", "badex"}


def test_only_literal_dim18_fails_jacobi(catalog):
    bad = [e.name for e in catalog.values() if not check_jacobi(e.algebra).valid]
    assert bad == ["dim18"]
    assert check_jacobi(catalog["dim18r"].algebra).valid


def test_origins_are_tagged(catalog):
    for e in catalog.values():
        for key in e.structures:
            assert re.match(r"(stated|computed)\b", e.origins.get(key, "")), (e.name, key)


def test_serialize_and_reparse(catalog):
    for e in catalog.values():
        g = e.algebra
        valid = check_jacobi(g).valid
        h = parse_extended(serialize_extended(g), validate=valid)
        assert h.constants == g.constants and h.names == g.names, e.name
        assert LieAlgebra.from_json(g.to_json(), validate=valid).constants == g.constants
        data = json.loads(json.dumps(e.to_json()))
        assert set(data["structures"]) == set(e.structures)


def test_generators():
    e = catalog_get("heisenberg(2,1)")
    assert e.algebra.dim == 6 and e.algebra.names[4] == "c"
    assert heisenberg(2, 2).structures == {}
    assert catalog_get("torus_over_curve(2)").algebra.dim == 6
    assert torus_over_curve(2, twisted=True).structure().is_parametric()
    with pytest.raises(ValueError):
        heisenberg(0, 1)
    with pytest.raises(ValueError):
        torus_over_curve(1, twisted=True)


def test_unknown_entries():
    with pytest.raises(UnknownEntry):
        catalog_get("h17")
    with pytest.raises(UnknownEntry):
        catalog_get("torus_over_curve(2,3)")
    with pytest.raises(UnknownEntry):
        catalog_get("h7").structure("J9")
    with pytest.raises(UnknownEntry):
        catalog_get("h7").filtration("nope")
