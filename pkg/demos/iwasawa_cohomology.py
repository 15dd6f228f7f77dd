"""Invariant cohomology of the Iwasawa manifold and of a complex torus.

The Iwasawa algebra carries a complex parallelisable structure, so its Hodge
diamond is not symmetric under p <-> q and it has a holomorphic 1-form that is
not closed.
"""
from nilcx.catalog import catalog_get
from nilcx.cohomology import closed_holomorphic_one_forms, cohomology_table, render_hodge
from nilcx.complex_structure import AlmostComplexStructure
from nilcx.lie import abelian

J = catalog_get("h5").structure()
table = cohomology_table(J.algebra, J)
print("Iwasawa (h5)")
print("Betti numbers", table.betti)
print(render_hodge(table.hodge))
print("h^{0,q}(Theta):", table.valued_h01q)

forms = closed_holomorphic_one_forms(J)
print(f"holomorphic 1-forms: {forms.dbar_closed.dim}, closed ones: {forms.dim}")

K = AlmostComplexStructure.from_action(abelian(4), [["e1", "e2"], ["e3", "e4"]])
t = cohomology_table(K.algebra, K)
print("\ncomplex 2-torus")
print(render_hodge(t.hodge))
print("h^{0,q}(Theta):", t.valued_h01q)
