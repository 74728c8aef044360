"""Finite posets and the co-Heyting algebra of their downsets.

Elements of a poset are addressed by index; a downset is stored as an int
bitmask over those indices.  All objects are immutable.
"""
from __future__ import annotations

import os
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    CycleDetected,
    DuplicateName,
    IndexOutOfRange,
    NotADownset,
    ParentMismatch,
    UnknownName,
)

DEFAULT_MAX_POSET = 64


def max_poset_size() -> int:
    return int(os.environ.get("COHEYT_MAX_POSET", DEFAULT_MAX_POSET))


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, increasing."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """A finite partial order on named points.

    ``down[i]`` is the bitmask of all ``j <= i`` (reflexive), ``up[i]`` the
    bitmask of all ``j >= i``.
    """

    __slots__ = ("names", "down", "up", "_index", "__dict__")

    def __init__(self, names: Sequence[str], down: Sequence[int]):
        self.names = tuple(names)
        self.down = tuple(down)
        n = len(self.names)
        up = [0] * n
        for i, d in enumerate(self.down):
            for j in bits(d):
                up[j] |= 1 << i
        self.up = tuple(up)
        self._index = {name: i for i, name in enumerate(self.names)}

    @classmethod
    def from_relation(cls, names: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "Poset":
        """Reflexive-transitive closure of ``pairs`` (each ``(lo, hi)``), validated."""
        names = list(names)
        if len(names) > max_poset_size():
            raise CapExceeded(f"poset of {len(names)} elements exceeds cap {max_poset_size()}")
        index: dict[str, int] = {}
        for i, name in enumerate(names):
            if not isinstance(name, str) or not name:
                raise UnknownName(f"invalid element name {name!r}")
            if name in index:
                raise DuplicateName(name)
            index[name] = i
        down = [1 << i for i in range(len(names))]
        for lo, hi in pairs:
            if lo not in index:
                raise UnknownName(lo)
            if hi not in index:
                raise UnknownName(hi)
            down[index[hi]] |= 1 << index[lo]
        # Warshall on bitmasks
        for k in range(len(names)):
            dk = down[k]
            kbit = 1 << k
            for i in range(len(names)):
                if down[i] & kbit:
                    down[i] |= dk
        for i in range(len(names)):
            for j in bits(down[i]):
                if j != i and down[j] >> i & 1:
                    raise CycleDetected(f"{names[i]} and {names[j]} are mutually below each other")
        return cls(names, down)

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.names == other.names and self.down == other.down

    def __hash__(self) -> int:
        return hash((self.names, self.down))

    def __repr__(self) -> str:
        covers = ", ".join(f"{self.names[a]}<{self.names[b]}" for a, b in self.covers)
        return f"Poset([{', '.join(self.names)}]; {covers})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownName(name) from None

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    @cached_property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(i, j)`` with ``j`` covering ``i``."""
        out = []
        for j in range(len(self.names)):
            strict = self.down[j] & ~(1 << j)
            for i in bits(strict):
                # i is covered by j iff no k strictly between
                between = strict & self.up[i] & ~(1 << i)
                if not between:
                    out.append((i, j))
        return tuple(sorted(out))

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if self.up[i] == 1 << i)

    @cached_property
    def minimal(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if self.down[i] == 1 << i)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Indices ordered so that every point comes after all points below it."""
        return tuple(sorted(range(len(self)), key=lambda i: (popcount(self.down[i]), i)))

    def close(self, mask: int) -> int:
        """Downward closure of a bitmask."""
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def close_up(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def is_downset(self, mask: int) -> bool:
        return self.close(mask) == mask

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def names_of(self, mask: int) -> list[str]:
        return sorted(self.names[i] for i in bits(mask))

    def height(self) -> int:
        """Number of points of a longest chain (0 for the empty poset)."""
        best = [0] * len(self)
        for i in self.linear_extension:
            below = self.down[i] & ~(1 << i)
            best[i] = 1 + max((best[j] for j in bits(below)), default=0)
        return max(best, default=0)

    def induced(self, mask: int) -> "Poset":
        """Subposet on the points of ``mask`` (order of indices kept)."""
        keep = list(bits(mask))
        pos = {old: new for new, old in enumerate(keep)}
        down = []
        for old in keep:
            d = 0
            for j in bits(self.down[old] & mask):
                d |= 1 << pos[j]
            down.append(d)
        return Poset([self.names[i] for i in keep], down)

    def connected_components(self) -> list[int]:
        """Bitmasks of the connected components of the comparability graph."""
        seen = 0
        comps = []
        for i in range(len(self)):
            if seen >> i & 1:
                continue
            comp = 1 << i
            frontier = comp
            while frontier:
                grow = 0
                for j in bits(frontier):
                    grow |= self.down[j] | self.up[j]
                frontier = grow & ~comp
                comp |= grow
            seen |= comp
            comps.append(comp)
        return comps

    def to_json(self) -> dict:
        return {
            "elements": list(self.names),
            "covers": [[self.names[a], self.names[b]] for a, b in self.covers],
        }


def build_poset(names: Sequence[str], covers: Iterable[Sequence[str]]) -> Poset:
    """Poset generated by a cover relation; rejects duplicates, unknown names, cycles."""
    return Poset.from_relation(names, [tuple(c) for c in covers])


def disjoint_union(posets: Sequence[Poset]) -> tuple[Poset, list[int]]:
    """Disjoint union; returns the poset and the index offset of each summand.

    Names must already be distinct across summands.
    """
    names: list[str] = []
    down: list[int] = []
    offsets = []
    for p in posets:
        off = len(names)
        offsets.append(off)
        names.extend(p.names)
        down.extend(d << off for d in p.down)
    if len(set(names)) != len(names):
        raise DuplicateName("summands share point names")
    return Poset(names, down), offsets


class Downset:
    """A downward closed subset of a poset; an element of its downset algebra."""

    __slots__ = ("poset", "mask")

    def __init__(self, poset: Poset, mask: int, *, check: bool = True):
        if check:
            if mask < 0 or mask >> len(poset):
                raise IndexOutOfRange(f"mask {mask:#x} outside poset of size {len(poset)}")
            if not poset.is_downset(mask):
                raise NotADownset(f"{poset.names_of(mask)} is not downward closed")
        self.poset = poset
        self.mask = mask

    def _peer(self, other: "Downset") -> int:
        if not isinstance(other, Downset):
            raise TypeError(f"expected Downset, got {type(other).__name__}")
        if other.poset is not self.poset and other.poset != self.poset:
            raise ParentMismatch("downsets live in different posets")
        return other.mask

    def _new(self, mask: int) -> "Downset":
        return Downset(self.poset, mask, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Downset):
            return NotImplemented
        return self.mask == other.mask and (self.poset is other.poset or self.poset == other.poset)

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: "Downset") -> bool:
        m = self._peer(other)
        return self.mask & ~m == 0

    def __lt__(self, other: "Downset") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "Downset") -> bool:
        return other <= self

    def __gt__(self, other: "Downset") -> bool:
        return other < self

    def __or__(self, other: "Downset") -> "Downset":
        return self._new(self.mask | self._peer(other))

    def __and__(self, other: "Downset") -> "Downset":
        return self._new(self.mask & self._peer(other))

    def __sub__(self, other: "Downset") -> "Downset":
        return self._new(self.poset.close(self.mask & ~self._peer(other)))

    def __bool__(self) -> bool:
        return self.mask != 0

    def __len__(self) -> int:
        return popcount(self.mask)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(bits(self.mask))

    def names(self) -> list[str]:
        return self.poset.names_of(self.mask)

    def sort_key(self) -> tuple:
        return (popcount(self.mask), tuple(bits(self.mask)))

    def __repr__(self) -> str:
        return "{" + ",".join(self.names()) + "}"


class Algebra:
    """The co-Heyting algebra of all downsets of a finite poset."""

    def __init__(self, poset: Poset):
        self.poset = poset
        self.zero = Downset(poset, 0, check=False)
        self.one = Downset(poset, poset.full, check=False)

    @classmethod
    def of(cls, names: Sequence[str], covers: Iterable[Sequence[str]] = ()) -> "Algebra":
        return cls(build_poset(names, covers))

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self.poset == other.poset

    def __hash__(self) -> int:
        return hash(self.poset)

    def __repr__(self) -> str:
        return f"Algebra({self.poset!r})"

    def __contains__(self, a) -> bool:
        return isinstance(a, Downset) and (a.poset is self.poset or a.poset == self.poset)

    def wrap(self, mask: int) -> Downset:
        return Downset(self.poset, mask, check=False)

    def element(self, names: Iterable[str]) -> Downset:
        """Downset given by its member names; must already be closed."""
        return Downset(self.poset, self.poset.mask_of(names))

    def principal(self, name: str | int) -> Downset:
        i = name if isinstance(name, int) else self.poset.index(name)
        return self.wrap(self.poset.down[i])

    def closure(self, names: Iterable[str]) -> Downset:
        return self.wrap(self.poset.close(self.poset.mask_of(names)))

    @cached_property
    def jir(self) -> tuple[Downset, ...]:
        """Principal downsets, in poset index order."""
        return tuple(self.wrap(d) for d in self.poset.down)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """All downset masks in canonical order (size, then sorted members)."""
        p = self.poset
        out = [0]
        for i in p.linear_extension:
            below = p.down[i] & ~(1 << i)
            out.extend([m | 1 << i for m in out if m & below == below])
        out.sort(key=lambda m: (popcount(m), tuple(bits(m))))
        return tuple(out)

    def elements(self) -> list[Downset]:
        return [self.wrap(m) for m in self.masks]

    def __len__(self) -> int:
        return len(self.masks)

    def check(self, a: Downset) -> Downset:
        if a not in self:
            raise ParentMismatch(f"{a!r} is not an element of this algebra")
        return a


def downward_closure(poset: Poset, indices: Iterable[int]) -> Downset:
    m = 0
    for i in indices:
        if not 0 <= i < len(poset):
            raise IndexOutOfRange(i)
        m |= 1 << i
    return Downset(poset, poset.close(m), check=False)


def join(a: Downset, b: Downset) -> Downset:
    return a | b


def meet(a: Downset, b: Downset) -> Downset:
    return a & b


def diff(a: Downset, b: Downset) -> Downset:
    """``a - b``: the least downset ``c`` with ``a <= b | c``."""
    return a - b


def strictly_way_below(b: Downset, a: Downset) -> bool:
    """``b << a``, i.e. ``a - b == a`` and ``b <= a``."""
    return b <= a and (a - b).mask == a.mask


def sym_diff(a: Downset, b: Downset) -> Downset:
    return (a - b) | (b - a)


def top_minus(a: Downset) -> Downset:
    return Downset(a.poset, a.poset.full, check=False) - a


def join_irreducibles(algebra: Algebra) -> list[Downset]:
    return list(algebra.jir)


def jir_components(algebra: Algebra, a: Downset) -> list[Downset]:
    """Maximal join-irreducibles below ``a`` (their join is ``a``)."""
    algebra.check(a)
    p = algebra.poset
    return [algebra.wrap(p.down[i]) for i in bits(a.mask) if p.up[i] & a.mask == 1 << i]


# mask-level helpers used by the hot loops elsewhere

def mdiff(poset: Poset, a: int, b: int) -> int:
    return poset.close(a & ~b)


def mway_below(poset: Poset, b: int, a: int) -> bool:
    return b & ~a == 0 and poset.close(a & ~b) == a
