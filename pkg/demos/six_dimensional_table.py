"""Torus bundle series for every six-dimensional nilpotent algebra with a complex structure.

For each catalog algebra we ask for a series, report whether it is principal,
and name the fibre and the base of the first fibration.
"""
from nilcx.bundles import bundle_shape, propose_series
from nilcx.catalog import SIX_DIMENSIONAL, catalog_get

print(f"{'algebra':<8} {'series':<24} {'fibre':<16} base")
for name in SIX_DIMENSIONAL:
    e = catalog_get(name)
    J = e.structure("J_t") if name == "h7" else e.structure()
    p = propose_series(J)
    if p.filtration is None:
        print(f"{name:<8} {'none':<24} {'-':<16} -")
        continue
    shape = bundle_shape(p.filtration)
    print(f"{name:<8} {p.verdict.overall:<24} {shape.fibre:<16} {shape.base}")

# h7 is a family: the special member J0 has a principal tower, the generic one has none
J0 = catalog_get("h7").structure("J0")
print("\nh7 with J0:", propose_series(J0).verdict.overall)
