"""A self-extending ambient algebra that realizes signatures and embeds finite
extensions over a common finite subalgebra."""
from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import L2
from .duality import Embedding, check_embedding
from .errors import HypothesisViolated, ParentMismatch, VarietyMismatch
from .extensions import PrimitiveTuple, Signature, primitive_check, primitive_tower
from .lattice import Algebra, Downset, Poset
from .subalgebra import Subalgebra, full_subalgebra
from .varieties import check_tag, in_variety
from .witnesses import WitnessResult, density_extension, splitting_extension

AMBIENT_TAGS = ("V1", "V2", "V3", "V4", "V5", "V6")


@dataclass
class Ambient:
    """Finite stand-in for an existentially closed algebra of a variety.

    ``tracked`` holds the current images of registered elements; every growth
    step is recorded in ``history`` together with its embedding.
    """

    variety: str
    current: Algebra
    tracked: dict[str, Downset] = field(default_factory=dict)
    history: list[tuple[str, Embedding]] = field(default_factory=list)
    initial: dict[str, int] = field(default_factory=dict)

    @property
    def variant(self) -> int:
        return int(self.variety[1:])

    def track(self, name: str, a: Downset) -> None:
        self.current.check(a)
        self.tracked[name] = a
        self.initial.setdefault(name, a.mask)

    def _grow(self, res: WitnessResult, tag: str) -> Embedding:
        emb = res.embedding
        if emb.source != self.current:
            raise ParentMismatch("growth step does not start from the current algebra")
        self.tracked = {k: emb(v) for k, v in self.tracked.items()}
        self.history.append((tag, emb))
        self.current = res.extension
        if not in_variety(self.current, self.variety):
            raise AssertionError(f"ambient left {self.variety}")
        return emb

    def transport(self, a: Downset | int, since: int) -> Downset:
        """Image in the current algebra of an element of the algebra current at step ``since``."""
        m = a.mask if isinstance(a, Downset) else a
        for _, emb in self.history[since:]:
            m = emb.map_mask(m)
        return self.current.wrap(m)

    def audit(self) -> bool:
        """The composed history maps every initially tracked element to its current image."""
        return all(self.transport(self.initial[k], 0).mask == v.mask
                   for k, v in self.tracked.items() if k in self.initial)

    def to_json(self) -> dict:
        return {
            "variety": self.variety,
            "current": self.current.poset.to_json(),
            "tracked": {k: v.names() for k, v in self.tracked.items()},
            "history": [tag for tag, _ in self.history],
        }


def ambient_new(S: Subalgebra, v: str) -> Ambient:
    check_tag(v)
    if v not in AMBIENT_TAGS:
        raise VarietyMismatch(f"no density/splitting axioms for {v}")
    if not in_variety(S.parent, v):
        raise VarietyMismatch(f"starting algebra is not in {v}")
    A = Ambient(v, S.parent)
    for e in S.elements():
        A.track(repr(e), e)
    return A


def ambient_density(A: Ambient, a: Downset, c: Downset | None) -> Downset:
    res = density_extension(A.current, a, c, A.variant)
    A._grow(res, f"D{A.variant} {res.plan.label}")
    return res.witnesses["b"]


def ambient_splitting(A: Ambient, a: Downset, b1: Downset, b2: Downset) -> tuple[Downset, Downset]:
    res = splitting_extension(A.current, a, b1, b2, A.variant)
    A._grow(res, f"S{A.variant} {res.plan.label}")
    return res.witnesses["a1"], res.witnesses["a2"]


def realize_signature(A: Ambient, S: Subalgebra, sig: Signature) -> PrimitiveTuple:
    """A primitive tuple in the (grown) ambient with signature ``sig`` over ``S``.

    ``S`` and ``sig`` live in the current algebra when called; the returned
    tuple and its signature live in the current algebra afterwards.
    """
    if S.parent != A.current:
        raise ParentMismatch("subalgebra is not inside the ambient")
    start = len(A.history)
    g, h1, h2 = sig.g, sig.h1, sig.h2
    gm = S.predecessor_join(g)
    v = A.variant

    def now(x: Downset) -> Downset:
        return A.transport(x, start)

    if sig.r == 2:
        x1, x2 = ambient_splitting(A, g, h1, h2)
    elif v in (3, 4, 5):
        if h1.mask:
            raise HypothesisViolated(f"r=1 signature in {A.variety} needs h = 0")
        y1, _ = ambient_splitting(A, g, h1, gm)
        x1 = x2 = ambient_density(A, y1, None)
    elif v == 6:
        y1, _ = ambient_splitting(A, g, h1, gm - h1)
        x1 = x2 = ambient_density(A, y1, now(h1))
    else:
        one = A.current.one
        if v == 2 and (h1 & (one - (one - g))).mask:
            # the splitting clause fails at g itself; squeeze b between g- and g first
            b = ambient_density(A, g, gm)
            y1, _ = ambient_splitting(A, b, now(h1), now(gm))
        else:
            y1, _ = ambient_splitting(A, g, h1, gm)
        x1 = x2 = ambient_density(A, y1, now(h1))

    S_now = Subalgebra(A.current, [A.transport(m, start).mask for m in S.carrier_masks])
    sig_now = Signature.make(now(g), now(h1), now(h2), sig.r)
    # re-verify rather than trust the derivation: g- & x must give back h
    gm_now = now(gm)
    got = {(gm_now & x1).mask, (gm_now & x2).mask}
    if got != {sig_now.h1.mask, sig_now.h2.mask}:
        raise AssertionError("realized tuple has the wrong g- intersections")
    found = primitive_check(A.current, S_now, x1, x2)
    if found != sig_now:
        raise AssertionError(f"realized tuple has signature {found!r}, wanted {sig_now!r}")
    if (gm_now & x1).mask != sig_now.h1.mask:
        x1, x2 = x2, x1
    return PrimitiveTuple(x1, x2, sig_now)


def _pair_closure(pairs: dict[int, int], src: Poset, tgt: Poset) -> dict[int, int]:
    """Close a partial map under join, meet and minus, failing on any clash."""
    out = dict(pairs)
    rev = {}
    for a, b in out.items():
        if rev.setdefault(b, a) != a:
            raise AssertionError("transport map is not injective")
    work = list(out)
    while work:
        a = work.pop()
        for b in list(out):
            fa, fb = out[a], out[b]
            for c, fc in ((a | b, fa | fb), (a & b, fa & fb),
                          (src.close(a & ~b), tgt.close(fa & ~fb)),
                          (src.close(b & ~a), tgt.close(fb & ~fa))):
                if c in out:
                    if out[c] != fc:
                        raise AssertionError("transport map is not well defined")
                    continue
                if rev.setdefault(fc, c) != c:
                    raise AssertionError("transport map is not injective")
                out[c] = fc
                work.append(c)
    return out


def embed_over(A: Ambient, S: Subalgebra, L1: Algebra, j: Embedding) -> Embedding:
    """Embed ``L1`` into the ambient so that ``j(s)`` goes to (the image of) ``s``.

    ``j`` embeds ``S`` (a subalgebra of the current ambient) into ``L1``.
    Walks the primitive tower of ``L1`` over ``j(S)``; each step realizes the
    step's signature in the ambient and transports the generators.
    """
    if S.parent != A.current:
        raise ParentMismatch("subalgebra is not inside the ambient")
    if not in_variety(L1, A.variety):
        raise VarietyMismatch(f"extension is not in {A.variety}")
    start = len(A.history)
    base = Subalgebra(L1, [j.map_mask(m) for m in S.carrier_masks])
    phi = {j.map_mask(m): m for m in S.carrier_masks}  # L1 mask -> ambient mask
    steps = primitive_tower(L1, base)
    for step in steps:
        mark = len(A.history)
        image = Subalgebra(A.current, phi.values())
        sig = step.tuple.signature
        g = A.current.wrap(phi[sig.g.mask])
        sig_a = Signature.make(g, A.current.wrap(phi[sig.h1.mask]),
                               A.current.wrap(phi[sig.h2.mask]), sig.r)
        tup = realize_signature(A, image, sig_a)
        phi = {k: A.transport(v, mark).mask for k, v in phi.items()}
        x1, x2 = step.tuple.x1, step.tuple.x2
        gm = step.base.predecessor_join(sig.g).mask
        if phi[gm & x1.mask] != (A.current.wrap(phi[gm]) & tup.x1).mask:
            x1, x2 = x2, x1
        phi = _pair_closure({**phi, x1.mask: tup.x1.mask, x2.mask: tup.x2.mask},
                            L1.poset, A.current.poset)
    if set(phi) != set(L1.masks):
        raise AssertionError("tower did not reach every element of the extension")
    emb = Embedding(L1, A.current, table=phi, provenance=f"embed-over in {A.variety}")
    report = check_embedding(emb)
    if not report:
        raise AssertionError(f"embedding check failed: {report.violation}")
    for m in S.carrier_masks:
        if phi[j.map_mask(m)] != A.transport(m, start).mask:
            raise AssertionError("embedding does not fix the common subalgebra")
    return emb


def embed_finite(L1: Algebra, v: str) -> tuple[Embedding, Ambient]:
    """Embed ``L1`` into an ambient grown from the constants (or the trivial algebra)."""
    check_tag(v)
    if not in_variety(L1, v):
        raise VarietyMismatch(f"algebra is not in {v}")
    base = Algebra(Poset([], [])) if len(L1.poset) == 0 else L2()
    S = full_subalgebra(base)
    A = ambient_new(S, v)
    table = {0: 0, base.poset.full: L1.poset.full}
    j = Embedding(S, L1, table=table, provenance="constants")
    return embed_over(A, S, L1, j), A
