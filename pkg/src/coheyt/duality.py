"""Birkhoff duality for finite distributive lattices, and embeddings.

An embedding of downset algebras ``L(P) -> L(I)`` is usually carried by a
map ``pi: I -> P`` (``a`` goes to ``pi^-1(a)``); embeddings out of a
subalgebra are stored as explicit tables.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    CapExceeded,
    LiftingFails,
    NotALattice,
    NotBounded,
    NotDistributive,
    NotIncreasing,
    NotSurjective,
    UnknownName,
)
from .lattice import Algebra, Downset, Poset, bits
from .subalgebra import Subalgebra

MAX_TABLE = 24


@dataclass(frozen=True)
class LatticeTable:
    size: int
    leq: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_json(cls, data: dict | str) -> "LatticeTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["size"]), tuple(tuple(bool(v) for v in row) for row in data["leq"]))

    def to_json(self) -> dict:
        return {"size": self.size, "leq": [list(row) for row in self.leq]}


def table_of_algebra(algebra: Algebra) -> LatticeTable:
    masks = algebra.masks
    return LatticeTable(
        len(masks), tuple(tuple(a & ~b == 0 for b in masks) for a in masks)
    )


def _bound(le, items, lower: bool):
    """Least upper (or greatest lower) bound among ``items`` or None."""
    for c in items:
        if all((le(c, d) if lower else le(d, c)) for d in items):
            return c
    return None


def algebra_from_table(table: LatticeTable, cap: int = MAX_TABLE) -> tuple[Poset, list[Downset]]:
    """Dual poset of a finite distributive lattice and the isomorphism ``iota``.

    Returns the poset of join-irreducibles (named by their table index) and, for
    each table element ``a``, the downset ``{j join-irreducible : j <= a}``.
    """
    n = table.size
    if n > cap:
        raise CapExceeded(f"lattice table of {n} elements exceeds cap {cap}")
    leq = table.leq
    if len(leq) != n or any(len(row) != n for row in leq):
        raise NotALattice("leq matrix is not size x size")
    for i in range(n):
        if not leq[i][i]:
            raise NotALattice(f"not reflexive at {i}")
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise NotALattice(f"not antisymmetric at {i},{j}")
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    raise NotALattice(f"not transitive at {i},{j},{k}")
    if n == 0:
        raise NotBounded("empty table")
    le = lambda a, b: leq[a][b]
    everything = range(n)
    bottom = next((b for b in everything if all(le(b, x) for x in everything)), None)
    top = next((t for t in everything if all(le(x, t) for x in everything)), None)
    if bottom is None or top is None:
        raise NotBounded("no bottom or no top")
    jn = [[0] * n for _ in range(n)]
    mt = [[0] * n for _ in range(n)]
    for a in everything:
        for b in everything:
            ub = [c for c in everything if le(a, c) and le(b, c)]
            lb = [c for c in everything if le(c, a) and le(c, b)]
            j = _bound(le, ub, lower=True)
            m = _bound(le, lb, lower=False)
            if j is None or m is None:
                raise NotALattice(f"{a},{b} lack a join or meet")
            jn[a][b], mt[a][b] = j, m
    for a in everything:
        for b in everything:
            for c in everything:
                if mt[a][jn[b][c]] != jn[mt[a][b]][mt[a][c]]:
                    raise NotDistributive(f"distributivity fails at {a},{b},{c}")
    # join-irreducible = exactly one lower cover
    irr = []
    for a in everything:
        if a == bottom:
            continue
        below = [b for b in everything if b != a and le(b, a)]
        covers = [b for b in below if not any(c != b and le(b, c) for c in below)]
        if len(covers) == 1:
            irr.append(a)
    pos = {a: k for k, a in enumerate(irr)}
    down = []
    for a in irr:
        d = 0
        for b in irr:
            if le(b, a):
                d |= 1 << pos[b]
        down.append(d)
    poset = Poset([str(a) for a in irr], down)
    iso = []
    for a in everything:
        d = 0
        for b in irr:
            if le(b, a):
                d |= 1 << pos[b]
        iso.append(Downset(poset, d, check=False))
    return poset, iso


class Embedding:
    """An injective co-Heyting morphism ``source -> target``.

    ``source`` is an :class:`Algebra` or a :class:`Subalgebra`; the map is
    held either as a dual map ``pi`` (target point index -> source point
    index) or as a table ``{source mask: target mask}``.
    """

    def __init__(self, source, target: Algebra, *, pi: Sequence[int] | None = None,
                 table: Mapping[int, int] | None = None, provenance: str = ""):
        if (pi is None) == (table is None):
            raise ValueError("give exactly one of pi or table")
        self.source = source
        self.target = target
        self.provenance = provenance
        self.pi = tuple(pi) if pi is not None else None
        self.table = dict(table) if table is not None else None
        if self.pi is not None:
            pre = [0] * len(source.poset)
            for i, j in enumerate(self.pi):
                pre[j] |= 1 << i
            self._pre = pre

    def __repr__(self) -> str:
        return f"Embedding({self.provenance or 'anonymous'})"

    @property
    def source_algebra(self) -> Algebra:
        return self.source.parent if isinstance(self.source, Subalgebra) else self.source

    def source_elements(self) -> list[Downset]:
        return self.source.elements()

    def map_mask(self, m: int) -> int:
        if self.pi is not None:
            out = 0
            for j in bits(m):
                out |= self._pre[j]
            return out
        return self.table[m]

    def __call__(self, a: Downset) -> Downset:
        self.source_algebra.check(a)
        return self.target.wrap(self.map_mask(a.mask))

    def items(self) -> list[tuple[Downset, Downset]]:
        return [(a, self.target.wrap(self.map_mask(a.mask))) for a in self.source_elements()]

    def then(self, other: "Embedding", provenance: str | None = None) -> "Embedding":
        """``other`` after ``self``."""
        prov = provenance if provenance is not None else f"{self.provenance};{other.provenance}"
        if self.pi is not None and other.pi is not None:
            return Embedding(self.source, other.target,
                             pi=[self.pi[j] for j in other.pi], provenance=prov)
        table = {a.mask: other.map_mask(self.map_mask(a.mask)) for a in self.source_elements()}
        return Embedding(self.source, other.target, table=table, provenance=prov)

    def restrict(self, sub: Subalgebra) -> "Embedding":
        return Embedding(sub, self.target, table={m: self.map_mask(m) for m in sub.carrier_masks},
                         provenance=self.provenance)

    def to_json(self) -> dict:
        return {
            "provenance": self.provenance,
            "map": [[a.names(), b.names()] for a, b in self.items()],
        }


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_embedding(emb: Embedding) -> EmbeddingReport:
    """Exhaustive check: constants, injectivity, join, meet and minus."""
    src = emb.source_algebra
    tgt = emb.target
    elems = [a.mask for a in emb.source_elements()]
    img = {}
    try:
        for m in elems:
            img[m] = emb.map_mask(m)
    except KeyError as exc:
        return EmbeddingReport(False, f"map undefined at {src.wrap(exc.args[0])!r}")
    for m, t in img.items():
        if t < 0 or t >> len(tgt.poset) or not tgt.poset.is_downset(t):
            return EmbeddingReport(False, f"image of {src.wrap(m)!r} is not a downset of the target")
    if img.get(0, None) != 0:
        return EmbeddingReport(False, "0 not preserved")
    if img.get(src.poset.full, None) != tgt.poset.full:
        return EmbeddingReport(False, "1 not preserved")
    seen = {}
    for m in elems:
        if img[m] in seen:
            return EmbeddingReport(
                False, f"not injective: {src.wrap(seen[img[m]])!r} and {src.wrap(m)!r} collide")
        seen[img[m]] = m
    sclose, tclose = src.poset.close, tgt.poset.close
    for a in elems:
        for b in elems:
            for op, c, expect in (
                ("|", a | b, img[a] | img[b]),
                ("&", a & b, img[a] & img[b]),
                ("-", sclose(a & ~b), tclose(img[a] & ~img[b])),
            ):
                if img.get(c) != expect:
                    return EmbeddingReport(
                        False, f"{op} not preserved at ({src.wrap(a)!r}, {src.wrap(b)!r})")
    return EmbeddingReport(True)


def identity_embedding(algebra: Algebra) -> Embedding:
    return Embedding(algebra, algebra, pi=range(len(algebra.poset)), provenance="identity")


def validate_pi(base: Poset, index_set: Poset, pi: Sequence[int]) -> None:
    """Raise unless ``pi`` is increasing, onto, and has the lifting property."""
    if len(pi) != len(index_set):
        raise NotSurjective("pi must be defined on every point of the index set")
    for z in range(len(index_set)):
        for x in bits(index_set.up[z]):
            if not base.leq(pi[z], pi[x]):
                raise NotIncreasing(f"{index_set.names[z]} <= {index_set.names[x]} but images are not ordered")
    hit = 0
    for j in pi:
        hit |= 1 << j
    if hit != base.full:
        missing = base.names_of(base.full & ~hit)
        raise NotSurjective(f"points {missing} have no preimage")
    for z in range(len(index_set)):
        reach = 0
        for x in bits(index_set.up[z]):
            reach |= 1 << pi[x]
        lacking = base.up[pi[z]] & ~reach
        if lacking:
            x = next(bits(lacking))
            raise LiftingFails(index_set.names[z], base.names[x])


def lifted_embedding(algebra: Algebra, index_set: Poset, pi: Mapping[str, str] | Sequence[int],
                     provenance: str = "lifted") -> Embedding:
    """The unique embedding ``a -> pi^-1(a)`` of ``algebra`` into the downsets of ``index_set``."""
    base = algebra.poset
    if isinstance(pi, Mapping):
        try:
            pi = [base.index(pi[name]) for name in index_set.names]
        except KeyError as exc:
            raise NotSurjective(f"pi undefined at {exc.args[0]}") from None
    else:
        pi = list(pi)
    validate_pi(base, index_set, pi)
    return Embedding(algebra, Algebra(index_set), pi=pi, provenance=provenance)


def fresh_name(base: str, taken: set[str]) -> str:
    """``base#k`` with the least counter ``k >= 1`` not in ``taken``; records it.

    A base that is itself a generated name reuses its root, so repeated
    lifting yields ``x#3`` rather than ``x#1#1``.
    """
    root, sep, tail = base.rpartition("#")
    if sep and root and tail.isdigit():
        base = root
    k = 1
    while f"{base}#{k}" in taken:
        k += 1
    name = f"{base}#{k}"
    taken.add(name)
    return name


def iso_to_table_algebra(table: LatticeTable) -> tuple[Algebra, list[Downset]]:
    poset, iso = algebra_from_table(table)
    return Algebra(poset), iso


def pi_from_names(base: Poset, index_set: Poset, pi: Mapping[str, str]) -> list[int]:
    try:
        return [base.index(pi[n]) for n in index_set.names]
    except KeyError as exc:
        raise UnknownName(str(exc.args[0])) from None
