"""Which small algebras lie in which Maksimova variety, and why."""
from coheyt.catalog import B4, L3, L5, L5_star
from coheyt.enumeration import enumerate_posets
from coheyt.lattice import Algebra
from coheyt.varieties import TAGS, check_equational, check_structural, dimension

for name, L in [("L3", L3()), ("B4", B4()), ("L5", L5()), ("L5*", L5_star())]:
    row = " ".join(t if check_equational(L, t).member else "--" for t in TAGS)
    print(f"{name:4} dimension {dimension(L):2}   {row}")

print()
rep = check_equational(L5(), "V2")
print("L5 leaves V2 with counterexample", rep.counterexample, "for", rep.detail)
cert = check_structural(L5_star(), "V6").certificate
print("L5* sits in V6: it embeds into a product of chains with", cert.heights, "elements")

print()
print("How many downset algebras of posets with n points lie in each variety:")
print("n   " + " ".join(f"{t:>4}" for t in TAGS))
for n in range(6):
    algebras = [Algebra(P) for P in enumerate_posets(n)]
    counts = [sum(check_equational(L, t).member for L in algebras) for t in TAGS]
    print(f"{n:<3} " + " ".join(f"{c:>4}" for c in counts))
