"""A tower of J-invariant ideals that descends to a torus bundle only for rational parameters.

Run with ``python demos/badex_dichotomy.py``.
"""
from fractions import Fraction

from nilcx.bundles import check_series
from nilcx.catalog import catalog_get
from nilcx.complex_structure import format_vector, is_integrable, largest_invariant_subspace
from nilcx.lie import central_series

entry = catalog_get("badex")
J = entry.structure("J_lambda")
g = J.algebra
f = entry.filtration("V")

print("algebra", entry.source)
print("J over Q(t), integrable:", is_integrable(J))

# the centre contains a 2-dimensional J-invariant part that moves with t
part = largest_invariant_subspace(J, central_series(g).ascending[1])
print("J-invariant part of the centre:", [format_vector(v, g.names) for v in part.basis])

v = check_series(J, f)
print("\nover Q(t):", v.overall)
for line in v.messages():
    print("  ", line)

for q in (Fraction(1, 2), Fraction(3), Fraction(-7, 5)):
    Jq = J.specialize(q)
    vq = check_series(Jq, f.specialize(q, Jq.algebra))
    print(f"t = {q}: {vq.overall}")
