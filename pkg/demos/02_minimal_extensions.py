"""Signatures classify minimal extensions; towers rebuild an algebra one step at a time."""
from coheyt.catalog import L2, L5, L5_star
from coheyt.extensions import enumerate_signatures, iso_over, minimal_extension, primitive_check, primitive_tower
from coheyt.duality import Embedding
from coheyt.subalgebra import Subalgebra, full_subalgebra

L = L2()
S = full_subalgebra(L)
print("Over the two-element algebra there are two signatures:")
for sig in enumerate_signatures(S):
    L1, emb, tup = minimal_extension(S, sig)
    kind = "first kind (one new element squeezed in)" if sig.r == 1 else "second kind (1 splits in two)"
    print(f"  {sig!r:22} -> poset {L1.poset}   {kind}")

print()
M = L5_star()
m = M.element(["a", "b"])
T = Subalgebra(M, [0, m.mask, M.poset.full])
print("Inside L5* the elements {0, a|b, 1} form a copy of the three-element chain.")
sig = primitive_check(M, T, M.principal("a"), M.principal("b"))
print("The atoms a, b form a primitive tuple over it with signature", sig)
L1, emb, _ = minimal_extension(T, sig)
incl = Embedding(T, M, table={x: x for x in T.carrier_masks})
print("Rebuilding from that signature gives an algebra isomorphic to L5* over the chain:",
      iso_over(emb, incl) is not None)

print()
L = L5()
print("Tower from the constants up to L5:")
for k, step in enumerate(primitive_tower(L, Subalgebra(L, [0, L.poset.full])), 1):
    t = step.tuple
    print(f"  step {k}: adjoin ({t.x1!r}, {t.x2!r}) with signature {t.signature!r}"
          f" -> {len(step.result)} elements")
