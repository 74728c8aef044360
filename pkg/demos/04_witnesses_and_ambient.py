"""Finite algebras fail the density and splitting axioms; growing an ambient repairs that."""
from coheyt.catalog import L2, L5, B4
from coheyt.embedding import ambient_new, embed_over
from coheyt.duality import Embedding
from coheyt.subalgebra import full_subalgebra
from coheyt.witnesses import check_density, check_splitting, density_extension, splitting_extension

print("No finite algebra is a model of the axioms:")
print("  density in L2 fails at", check_density(L2(), 1).first_failure)
print("  splitting in B4 fails at", check_splitting(B4(), 1).first_failure)

print()
L = L2()
res = density_extension(L, L.one, L.zero, 1)
print("But an extension always supplies a witness. Density for a = 1 over L2:")
print("  new poset", res.extension.poset, " witness b =", res.witnesses["b"])
L = L5()
c = L.principal("c")
res = splitting_extension(L, c, L.zero, L.zero, 4)
print("Splitting the atom of L5 while staying in V4:")
print("  plan:", res.plan.label)
print("  new poset", res.extension.poset)
print("  a1 =", res.witnesses["a1"], " a2 =", res.witnesses["a2"])

print()
print("Embedding L5 into a V4 ambient grown from the two-element algebra:")
S = full_subalgebra(L2())
A = ambient_new(S, "V4")
j = Embedding(S, L, table={0: 0, 1: L.poset.full})
emb = embed_over(A, S, L, j)
for step, _ in A.history:
    print("  grew by", step)
print("  ambient now has", len(A.current.poset), "join-irreducibles")
for a, b in emb.items():
    print(f"  {a!r:12} -> {b!r}")
