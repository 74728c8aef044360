"""Minimal finite extensions of a finite subalgebra, classified by signatures."""
from __future__ import annotations

from dataclasses import dataclass

from .duality import Embedding, check_embedding, lifted_embedding
from .errors import InvalidSignature, NotProper, ParentMismatch
from .lattice import Algebra, Downset, Poset, bits, mway_below, popcount
from .subalgebra import Subalgebra, generated_subalgebra

MINIMALITY_CHECK_BELOW = 7


def _key(m: int) -> tuple:
    return (popcount(m), tuple(bits(m)))


@dataclass(frozen=True)
class Signature:
    """``(g, {h1, h2}, r)``; ``h1``/``h2`` are stored in canonical order."""

    g: Downset
    h1: Downset
    h2: Downset
    r: int

    @classmethod
    def make(cls, g: Downset, h1: Downset, h2: Downset, r: int) -> "Signature":
        if _key(h2.mask) < _key(h1.mask):
            h1, h2 = h2, h1
        return cls(g, h1, h2, r)

    @property
    def H(self) -> frozenset[Downset]:
        return frozenset((self.h1, self.h2))

    def __repr__(self) -> str:
        hs = f"{self.h1!r}" if self.h1 == self.h2 and self.r == 1 else f"{self.h1!r},{self.h2!r}"
        return f"({self.g!r}, {{{hs}}}, {self.r})"

    def to_json(self) -> dict:
        return {"g": self.g.names(), "h": [self.h1.names(), self.h2.names()], "r": self.r}

    @classmethod
    def from_json(cls, algebra: Algebra, data: dict) -> "Signature":
        h = data["h"]
        if len(h) == 1:
            h = [h[0], h[0]]
        return cls.make(algebra.element(data["g"]), algebra.element(h[0]),
                        algebra.element(h[1]), int(data["r"]))

    def mapped(self, emb: Embedding) -> "Signature":
        return Signature.make(emb(self.g), emb(self.h1), emb(self.h2), self.r)


@dataclass(frozen=True)
class PrimitiveTuple:
    x1: Downset
    x2: Downset
    signature: Signature

    @property
    def r(self) -> int:
        return self.signature.r


def signature_problem(sub: Subalgebra, sig: Signature) -> str | None:
    """Why ``sig`` is not a signature over ``sub``, or None."""
    for name, e in (("g", sig.g), ("h1", sig.h1), ("h2", sig.h2)):
        if e not in sub:
            return f"{name}={e!r} is not in the subalgebra"
    if sig.g.mask not in sub.jir_masks:
        return "g is not join-irreducible in the subalgebra"
    gm = sub.predecessor_join(sig.g).mask
    if sig.r == 1:
        if sig.h1 != sig.h2:
            return "r=1 needs h1 = h2"
        if not (sig.h1.mask & ~sig.g.mask == 0 and sig.h1.mask != sig.g.mask):
            return "r=1 needs h1 < g"
        return None
    if sig.r == 2:
        if sig.h1.mask | sig.h2.mask != gm:
            return "r=2 needs h1 | h2 = predecessor of g"
        return None
    return "r must be 1 or 2"


def validate_signature(sub: Subalgebra, sig: Signature) -> None:
    problem = signature_problem(sub, sig)
    if problem:
        raise InvalidSignature(problem)


def enumerate_signatures(sub: Subalgebra) -> list[Signature]:
    L = sub.parent
    out = []
    for g in sub.jir_masks:
        gm = sub.predecessor_join(L.wrap(g)).mask
        for h in sub.carrier_masks:
            if h != g and h & ~g == 0:
                out.append(Signature(L.wrap(g), L.wrap(h), L.wrap(h), 1))
        carrier = sub.carrier_masks
        for i, h1 in enumerate(carrier):
            for h2 in carrier[i:]:
                if h1 | h2 == gm:
                    out.append(Signature(L.wrap(g), L.wrap(h1), L.wrap(h2), 2))
    return out


def primitive_check(L: Algebra, sub: Subalgebra, x1: Downset, x2: Downset) -> Signature | None:
    """Signature of ``(x1, x2)`` when the pair is primitive over ``sub``, else None."""
    if sub.parent != L:
        raise ParentMismatch("subalgebra does not live in L")
    L.check(x1)
    L.check(x2)
    a, b = x1.mask, x2.mask
    if a in sub.carrier_set or b in sub.carrier_set:
        return None
    p = L.poset
    for g in sub.jir_masks:
        gm = sub.predecessor_join(L.wrap(g)).mask
        h1, h2 = gm & a, gm & b
        if h1 not in sub.carrier_set or h2 not in sub.carrier_set:
            continue
        if a == b:
            ok = mway_below(p, h1, a) and mway_below(p, a, g)
        else:
            ok = (a & b in sub.carrier_set
                  and p.close(g & ~a) == b and p.close(g & ~b) == a)
        if not ok:
            continue
        c1, c2 = sub.min_cover(x1).mask, sub.min_cover(x2).mask
        if not c1 == c2 == g:
            raise AssertionError("primitive tuple whose g differs from its minimal cover")
        return Signature.make(L.wrap(g), L.wrap(h1), L.wrap(h2), 1 if a == b else 2)
    return None


def _unique(base: str, taken: set[str]) -> str:
    k = 1
    while f"{base}!{k}" in taken:
        k += 1
    taken.add(f"{base}!{k}")
    return f"{base}!{k}"


def extension_plan(sub: Subalgebra, sig: Signature) -> tuple[Poset, list[int], list[int]]:
    """Index poset of the minimal extension, its map onto the dual poset of
    ``sub``, and the indices of the new points."""
    validate_signature(sub, sig)
    P0 = sub.dual_poset
    gi = sub.jir_masks.index(sig.g.mask)
    gname = P0.names[gi]
    taken = set(P0.names)
    hd = [sub.to_dual(sig.h1), sub.to_dual(sig.h2)]
    keep = [i for i in range(len(P0)) if sig.r == 1 or i != gi]
    names = [P0.names[i] for i in keep]
    pi = list(keep)
    new = []
    for k in range(sig.r):
        new.append(len(names))
        names.append(_unique(gname, taken))
        pi.append(gi)
    pos = {old: i for i, old in enumerate(keep)}
    pairs = []
    for y in keep:
        for z in keep:
            if y != z and P0.leq(y, z):
                pairs.append((names[pos[y]], names[pos[z]]))
    for k, xi in enumerate(new):
        h = hd[k] if sig.r == 2 else hd[0]
        for y in keep:
            if h >> y & 1:
                pairs.append((names[pos[y]], names[xi]))
            if P0.leq(gi, y) and (sig.r == 1 or y != gi):
                pairs.append((names[xi], names[pos[y]]))
    return Poset.from_relation(names, pairs), pi, new


def _no_intermediate(L1: Algebra, image: Subalgebra) -> bool:
    whole = len(L1)
    for m in L1.masks:
        if m not in image.carrier_set:
            if len(generated_subalgebra(L1, image.elements() + [L1.wrap(m)])) != whole:
                return False
    return True


def minimal_extension(sub: Subalgebra, sig: Signature, check_minimal: bool | None = None):
    """Build the minimal extension of ``sub`` with signature ``sig``.

    Returns ``(L1, E, T)``: the extension, the embedding of ``sub`` and the
    generating primitive tuple (principal downsets of the new points).
    """
    index_set, pi, new = extension_plan(sub, sig)
    dual = lifted_embedding(sub.as_algebra(), index_set, pi, provenance="minimal-extension")
    L1 = dual.target
    emb = Embedding(sub, L1, table={m: dual.map_mask(sub.to_dual(m)) for m in sub.carrier_masks},
                    provenance=f"minimal-extension {sig!r}")
    x1 = L1.principal(new[0])
    x2 = L1.principal(new[-1])
    image_sig = sig.mapped(emb)
    tup = PrimitiveTuple(x1, x2, image_sig)

    report = check_embedding(emb)
    if not report:
        raise AssertionError(f"minimal extension embedding broken: {report.violation}")
    image = Subalgebra(L1, [emb.map_mask(m) for m in sub.carrier_masks])
    got = primitive_check(L1, image, x1, x2)
    if got != image_sig:
        raise AssertionError(f"tuple signature {got!r} differs from {image_sig!r}")
    if check_minimal is None:
        check_minimal = len(index_set) < MINIMALITY_CHECK_BELOW
    if check_minimal and not _no_intermediate(L1, image):
        raise AssertionError("extension is not minimal")
    return L1, emb, tup


def iso_over(e1: Embedding, e2: Embedding) -> Embedding | None:
    """Isomorphism ``L1 -> L2`` commuting with two embeddings of the same subalgebra."""
    if e1.source != e2.source:
        raise ParentMismatch("embeddings start from different subalgebras")
    P1, P2 = e1.target.poset, e2.target.poset
    if len(P1) != len(P2):
        return None
    src = [a.mask for a in e1.source_elements()]
    im1 = [e1.map_mask(a) for a in src]
    im2 = [e2.map_mask(a) for a in src]

    def profile(P, images, i):
        return (tuple(img >> i & 1 for img in images), popcount(P.down[i]), popcount(P.up[i]))

    prof2: dict = {}
    for q in range(len(P2)):
        prof2.setdefault(profile(P2, im2, q), []).append(q)
    order = list(P1.linear_extension)
    cands = []
    for p in order:
        c = prof2.get(profile(P1, im1, p))
        if not c:
            return None
        cands.append(c)
    sigma: dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        p = order[k]
        for q in cands[k]:
            if q in used:
                continue
            if all(P1.leq(p2, p) == P2.leq(q2, q) and P1.leq(p, p2) == P2.leq(q, q2)
                   for p2, q2 in sigma.items()):
                sigma[p] = q
                used.add(q)
                if extend(k + 1):
                    return True
                del sigma[p]
                used.discard(q)
        return False

    if not extend(0):
        return None
    pi = [0] * len(P2)
    for p, q in sigma.items():
        pi[q] = p
    return Embedding(e1.target, e2.target, pi=pi, provenance="iso-over")


def find_primitive_tuple(L: Algebra, sub: Subalgebra) -> PrimitiveTuple:
    """A primitive tuple over ``sub`` inside ``L`` built from a minimal new join-irreducible."""
    if len(sub) == len(L):
        raise NotProper("subalgebra is all of L")
    p = L.poset
    fresh = [d for d in p.down if d not in sub.carrier_set]
    minimal = [d for d in fresh if not any(e != d and e & ~d == 0 for e in fresh)]
    x = min(minimal, key=_key)
    g = sub.min_cover(L.wrap(x)).mask
    other = x if mway_below(p, x, g) else p.close(g & ~x)
    sig = primitive_check(L, sub, L.wrap(x), L.wrap(other))
    if sig is None:
        raise AssertionError("constructed tuple is not primitive")
    return PrimitiveTuple(L.wrap(x), L.wrap(other), sig)


@dataclass(frozen=True)
class TowerStep:
    base: Subalgebra
    tuple: PrimitiveTuple
    result: Subalgebra


def primitive_tower(L: Algebra, sub: Subalgebra) -> list[TowerStep]:
    """``sub = S0 < S1 < ... < Sk = L``, each step generated by a primitive tuple."""
    steps = []
    cur = sub
    while len(cur) < len(L):
        tup = find_primitive_tuple(L, cur)
        nxt = generated_subalgebra(L, cur.elements() + [tup.x1, tup.x2])
        steps.append(TowerStep(cur, tup, nxt))
        cur = nxt
    return steps
