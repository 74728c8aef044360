"""Finite operation-closed subsets of a downset algebra."""
from __future__ import annotations

from functools import cached_property
from typing import Iterable

from .errors import NotInCarrier, ParentMismatch
from .lattice import Algebra, Downset, Poset, bits, popcount


def _key(m: int) -> tuple:
    return (popcount(m), tuple(bits(m)))


class Subalgebra:
    """A subset of ``parent`` containing 0, 1 and closed under join, meet, minus.

    The carrier is kept sorted by (size, members), which fixes every
    tie-break downstream.
    """

    def __init__(self, parent: Algebra, masks: Iterable[int]):
        self.parent = parent
        self.carrier_masks = tuple(sorted(set(masks), key=_key))
        self.carrier_set = frozenset(self.carrier_masks)

    def __len__(self) -> int:
        return len(self.carrier_masks)

    def __contains__(self, a) -> bool:
        if isinstance(a, Downset):
            return a in self.parent and a.mask in self.carrier_set
        return a in self.carrier_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subalgebra)
            and self.parent == other.parent
            and self.carrier_set == other.carrier_set
        )

    def __hash__(self) -> int:
        return hash(self.carrier_set)

    def __repr__(self) -> str:
        return "Subalgebra[" + ", ".join(repr(a) for a in self.elements()) + "]"

    def elements(self) -> list[Downset]:
        return [self.parent.wrap(m) for m in self.carrier_masks]

    @property
    def zero(self) -> Downset:
        return self.parent.zero

    @property
    def one(self) -> Downset:
        return self.parent.one

    def _own(self, a: Downset) -> int:
        if a not in self.parent:
            raise ParentMismatch(f"{a!r} is not in the parent algebra")
        return a.mask

    def predecessor_join(self, a: Downset) -> Downset:
        """Join of the carrier elements strictly below ``a``."""
        m = self._own(a)
        if m not in self.carrier_set:
            raise NotInCarrier(repr(a))
        out = 0
        for b in self.carrier_masks:
            if b != m and b & ~m == 0:
                out |= b
        return self.parent.wrap(out)

    def min_cover(self, x: Downset) -> Downset:
        """Meet of the carrier elements above ``x``."""
        m = self._own(x)
        out = self.parent.poset.full
        for b in self.carrier_masks:
            if m & ~b == 0:
                out &= b
        return self.parent.wrap(out)

    @cached_property
    def jir_masks(self) -> tuple[int, ...]:
        out = []
        for m in self.carrier_masks:
            if m and self.predecessor_join(self.parent.wrap(m)).mask != m:
                out.append(m)
        return tuple(out)

    def join_irreducibles(self) -> list[Downset]:
        return [self.parent.wrap(m) for m in self.jir_masks]

    def point_name(self, m: int) -> str:
        """Readable name of a join-irreducible of the carrier."""
        p = self.parent.poset
        tops = [i for i in bits(m) if p.up[i] & m == 1 << i]
        if len(tops) == 1:
            return p.names[tops[0]]
        return "+".join(sorted(p.names[i] for i in tops))

    @cached_property
    def dual_poset(self) -> Poset:
        """Join-irreducibles of the carrier ordered by inclusion."""
        jm = self.jir_masks
        down = []
        for i, a in enumerate(jm):
            d = 0
            for j, b in enumerate(jm):
                if b & ~a == 0:
                    d |= 1 << j
            down.append(d)
        return Poset([self.point_name(m) for m in jm], down)

    def to_dual(self, a: Downset | int) -> int:
        """``iota``: carrier element to the downset of its dual poset."""
        m = a.mask if isinstance(a, Downset) else a
        out = 0
        for j, b in enumerate(self.jir_masks):
            if b & ~m == 0:
                out |= 1 << j
        return out

    def from_dual(self, d: int) -> Downset:
        out = 0
        for j in bits(d):
            out |= self.jir_masks[j]
        return self.parent.wrap(out)

    def as_algebra(self) -> Algebra:
        return Algebra(self.dual_poset)


def generated_subalgebra(algebra: Algebra, gens: Iterable[Downset]) -> Subalgebra:
    """Least subalgebra of ``algebra`` containing ``gens``."""
    p = algebra.poset
    have = {0, p.full}
    for g in gens:
        have.add(algebra.check(g).mask)
    work = list(have)
    close = p.close
    while work:
        a = work.pop()
        for b in list(have):
            for c in (a | b, a & b, close(a & ~b), close(b & ~a)):
                if c not in have:
                    have.add(c)
                    work.append(c)
    return Subalgebra(algebra, have)


def closure_violation(algebra: Algebra, elems: Iterable[Downset]):
    """First ``(a, b, op)`` whose result leaves the set, ``(None, None, const)`` for a
    missing constant, or ``None`` when the set is a subalgebra."""
    masks = sorted({algebra.check(e).mask for e in elems}, key=_key)
    s = set(masks)
    if 0 not in s:
        return (None, None, "0")
    if algebra.poset.full not in s:
        return (None, None, "1")
    close = algebra.poset.close
    for a in masks:
        for b in masks:
            for op, c in (("|", a | b), ("&", a & b), ("-", close(a & ~b))):
                if c not in s:
                    return (algebra.wrap(a), algebra.wrap(b), op)
    return None


def is_subalgebra(algebra: Algebra, elems: Iterable[Downset]) -> bool:
    return closure_violation(algebra, elems) is None


def full_subalgebra(algebra: Algebra) -> Subalgebra:
    return Subalgebra(algebra, algebra.masks)


def predecessor_join(sub: Subalgebra, a: Downset) -> Downset:
    return sub.predecessor_join(a)


def min_cover(sub: Subalgebra, x: Downset) -> Downset:
    return sub.min_cover(x)


def join_irreducibles_of(sub: Subalgebra) -> list[Downset]:
    return sub.join_irreducibles()
