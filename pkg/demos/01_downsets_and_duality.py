"""Downset algebras, the difference operation, and the table <-> poset duality."""
from coheyt.catalog import L5
from coheyt.duality import algebra_from_table, table_of_algebra
from coheyt.enumeration import isomorphic
from coheyt.lattice import jir_components, strictly_way_below

L = L5()
print("L5 is the algebra of downsets of", L.poset)
print("its elements:", L.elements())

x1, x2, c = (L.principal(n) for n in ("x1", "x2", "c"))
print()
print("Difference is the least element c with a <= b | c, computed as (A minus B) closed downward.")
print("  1 - x1 =", L.one - x1)
print("  x1 - c =", x1 - c)
print("Way-below: b << a when b <= a and a - b = a.")
print("  c << 1 ?", strictly_way_below(c, L.one), "  x1 << 1 ?", strictly_way_below(x1, L.one))
print("join-irreducible components of 1:", jir_components(L, L.one))

print()
table = table_of_algebra(L)
P, iota = algebra_from_table(table)
print(f"From the bare {table.size}-element order table we recover the poset {P}")
print("isomorphic to the original:", isomorphic(P, L.poset))
for a, img in zip(L.masks, iota):
    print(f"  iota: {L.wrap(a)!r:12} -> {img!r}")
