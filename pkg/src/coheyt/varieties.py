"""Membership in the varieties V1..V8, by equations and by the shape of the dual poset."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .duality import Embedding, fresh_name, lifted_embedding
from .errors import CoheytError
from .lattice import Algebra, Poset, bits, disjoint_union

TAGS = ("V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8")


def check_tag(tag: str) -> str:
    if tag not in TAGS:
        raise CoheytError(f"unknown variety tag {tag!r}")
    return tag


@dataclass(frozen=True)
class VarietyReport:
    tag: str
    member: bool
    counterexample: dict | None = None
    detail: str = ""
    certificate: object = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.member


# -- equations on masks ----------------------------------------------------
# each takes (poset, full, x, y) and returns the mask that must vanish

def _eq_v2(p, one, x, y):
    nx = p.close(one & ~x)
    return nx & p.close(one & ~nx)


def _eq_v3(p, one, x, y):
    nx = p.close(one & ~x)
    return p.close((nx & x) & ~y) & y


def _eq_v4(p, one, x, y):
    xy = p.close(x & ~y)
    yx = p.close(y & ~x)
    ny = p.close(one & ~y)
    tri = p.close(x & ~ny) | p.close(ny & ~x)
    return xy & yx & tri


def _eq_v6(p, one, x, y):
    return p.close(x & ~y) & p.close(y & ~x)


def _eq_v7(p, one, x, y):
    return p.close(one & ~x) & x


EQUATIONS: dict[str, list[tuple[str, int, Callable]]] = {
    "V1": [],
    "V2": [("(1-x) & (1-(1-x)) = 0", 1, _eq_v2)],
    "V3": [("(((1-x) & x) - y) & y = 0", 2, _eq_v3)],
    "V4": [("(((1-x) & x) - y) & y = 0", 2, _eq_v3),
           ("(x-y) & (y-x) & (x ^ (1-y)) = 0", 2, _eq_v4)],
    "V5": [("(1-x) & (1-(1-x)) = 0", 1, _eq_v2),
           ("(((1-x) & x) - y) & y = 0", 2, _eq_v3)],
    "V6": [("(x-y) & (y-x) = 0", 2, _eq_v6)],
    "V7": [("(1-x) & x = 0", 1, _eq_v7)],
}


def check_equational(L: Algebra, tag: str) -> VarietyReport:
    """Exhaustive evaluation of the defining equations; first counterexample wins."""
    check_tag(tag)
    p, one = L.poset, L.poset.full
    if tag == "V8":
        if one == 0:
            return VarietyReport(tag, True)
        return VarietyReport(tag, False, {}, "1 = 0")
    elems = L.masks
    for text, arity, fn in EQUATIONS[tag]:
        if arity == 1:
            for x in elems:
                if fn(p, one, x, 0):
                    return VarietyReport(tag, False, {"x": L.wrap(x)}, text)
        else:
            for x in elems:
                for y in elems:
                    if fn(p, one, x, y):
                        return VarietyReport(tag, False, {"x": L.wrap(x), "y": L.wrap(y)}, text)
    return VarietyReport(tag, True)


# -- poset-level criteria ----------------------------------------------------

def _tops_disjoint(p: Poset, k: int) -> bool:
    tops = [p.down[t] for t in p.maximal]
    for group in combinations(tops, k):
        acc = p.full
        for d in group:
            acc &= d
        if acc:
            return False
    return True


def _height_le2(p: Poset) -> bool:
    return all(i in p.maximal or i in p.minimal for i in range(len(p)))


def _up_chains(p: Poset) -> bool:
    for z in range(len(p)):
        above = list(bits(p.up[z]))
        for a, b in combinations(above, 2):
            if not (p.leq(a, b) or p.leq(b, a)):
                return False
    return True


def in_variety(L: Algebra | Poset, tag: str) -> bool:
    """Membership read off the dual poset (cheap for large algebras).

    Agreement with :func:`check_equational` is verified exhaustively in the
    test suite on all posets with at most six points.
    """
    check_tag(tag)
    p = L.poset if isinstance(L, Algebra) else L
    if tag == "V1":
        return True
    if tag == "V2":
        return _tops_disjoint(p, 2)
    if tag == "V3":
        return _height_le2(p)
    if tag == "V4":
        return _height_le2(p) and _tops_disjoint(p, 3)
    if tag == "V5":
        return _height_le2(p) and _tops_disjoint(p, 2)
    if tag == "V6":
        return _up_chains(p)
    if tag == "V7":
        return all(p.down[i] == 1 << i for i in range(len(p)))
    return len(p) == 0


def check_structural(L: Algebra, tag: str) -> VarietyReport:
    check_tag(tag)
    p = L.poset
    if tag == "V1":
        return VarietyReport(tag, True)
    if tag == "V2":
        ok = _tops_disjoint(p, 2)
        return VarietyReport(tag, ok, detail="components of 1 pairwise disjoint")
    if tag == "V3":
        return VarietyReport(tag, _height_le2(p), detail="every point maximal or minimal")
    if tag == "V4":
        ok = _height_le2(p) and _tops_disjoint(p, 3)
        return VarietyReport(tag, ok, detail="V3 shape and three components of 1 meet in 0")
    if tag == "V5":
        ok = _height_le2(p) and _tops_disjoint(p, 2)
        return VarietyReport(tag, ok, detail="non-atoms are components of 1, components disjoint")
    if tag == "V6":
        n = len(p)
        found = chain_product_embedding(L, max(n, 1), n + 1)
        return VarietyReport(tag, found is not None,
                             detail=f"chain product embedding within bounds ({max(n, 1)}, {n + 1})",
                             certificate=found)
    if tag == "V7":
        return VarietyReport(tag, all(p.down[i] == 1 << i for i in range(len(p))),
                             detail="join-irreducibles form an antichain")
    return VarietyReport(tag, len(p) == 0, detail="single element")


def dimension(L: Algebra) -> int:
    """Longest chain of join-irreducibles minus one; -1 for the one-element algebra."""
    return L.poset.height() - 1


@dataclass
class Factorization:
    """``L`` as the product of the downset algebras of its connected components."""

    algebra: Algebra
    components: list[int]
    factors: list[Algebra]
    product: Algebra
    iso: Embedding

    def project(self, a) -> list:
        out = []
        for comp, f in zip(self.components, self.factors):
            m = 0
            for k, i in enumerate(bits(comp)):
                if a.mask >> i & 1:
                    m |= 1 << k
            out.append(f.wrap(m))
        return out

    def combine(self, parts: list):
        m = 0
        for comp, part in zip(self.components, parts):
            idx = list(bits(comp))
            for k in bits(part.mask):
                m |= 1 << idx[k]
        return self.algebra.wrap(m)


def component_factorization(L: Algebra) -> Factorization:
    p = L.poset
    comps = p.connected_components()
    factors = [Algebra(p.induced(c)) for c in comps]
    prod_poset, offsets = disjoint_union([f.poset for f in factors])
    pi = []
    for c in comps:
        pi.extend(bits(c))
    # reassembly: every point used once and the order is exactly the disjoint union
    if sorted(pi) != list(range(len(p))):
        raise AssertionError("components do not partition the poset")
    for a in range(len(pi)):
        for b in range(len(pi)):
            if prod_poset.leq(a, b) != p.leq(pi[a], pi[b]):
                raise AssertionError("component product does not reassemble L")
    iso = Embedding(L, Algebra(prod_poset), pi=pi, provenance="component-factorization")
    return Factorization(L, comps, factors, iso.target, iso)


@dataclass
class ChainProduct:
    embedding: Embedding
    heights: list[int]  # element counts of the chain factors


def chain_product_embedding(L: Algebra, max_factors: int, max_height: int) -> ChainProduct | None:
    """Embedding of ``L`` into a product of at most ``max_factors`` chains with at
    most ``max_height`` elements each, or None within those bounds.

    A chain factor corresponds to a track ``z^up`` of points; the search picks
    tracks (backtracking over admissible starting points) until every point is
    covered, then lifts through the projection onto ``L``'s poset.
    """
    p = L.poset
    starts = [z for z in range(len(p))
              if all(p.leq(a, b) or p.leq(b, a) for a, b in combinations(bits(p.up[z]), 2))
              and len(list(bits(p.up[z]))) + 1 <= max_height]
    chosen: list[int] = []

    def search(covered: int, options: list[int]) -> bool:
        if covered == p.full:
            return True
        if len(chosen) >= max_factors:
            return False
        # the least uncovered point must be covered by a track starting below it
        target = next(bits(p.full & ~covered))
        for z in options:
            if p.leq(z, target):
                chosen.append(z)
                if search(covered | p.up[z], [o for o in options if o != z]):
                    return True
                chosen.pop()
        return False

    if not search(0, starts):
        return None
    names: list[str] = []
    taken = set(p.names)
    pairs = []
    pi = []
    heights = []
    for z in chosen:
        track = sorted(bits(p.up[z]), key=lambda i: bin(p.down[i]).count("1"))
        prev = None
        for i in track:
            nm = fresh_name(p.names[i], taken)
            names.append(nm)
            pi.append(i)
            if prev is not None:
                pairs.append((prev, nm))
            prev = nm
        heights.append(len(track) + 1)
    Q = Poset.from_relation(names, pairs)
    emb = lifted_embedding(L, Q, pi, provenance="chain-product")
    return ChainProduct(emb, heights)
