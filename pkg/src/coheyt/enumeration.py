"""Brute-force universes: posets up to isomorphism and subalgebras of an algebra."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import CapExceeded
from .lattice import Algebra, Poset, bits, popcount

DEFAULT_MAX_ENUM = 7


@dataclass(frozen=True, order=True)
class CanonicalForm:
    size: int
    code: tuple[int, ...]  # down masks after canonical relabelling


def _point_labels(p: Poset) -> list[int]:
    """Isomorphism-invariant colour of each point (colour refinement)."""
    n = len(p)
    lab = [(popcount(p.down[i]), popcount(p.up[i])) for i in range(n)]
    for _ in range(n):
        sig = [
            (
                lab[i],
                tuple(sorted(lab[j] for j in bits(p.down[i]) if j != i)),
                tuple(sorted(lab[j] for j in bits(p.up[i]) if j != i)),
            )
            for i in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(lab)):
            lab = new
            break
        lab = new
    ranks = {s: r for r, s in enumerate(sorted(set(lab)))}
    return [ranks[x] for x in lab]


def _relabel_code(p: Poset, order: tuple[int, ...]) -> tuple[int, ...]:
    pos = {old: new for new, old in enumerate(order)}
    code = []
    for old in order:
        m = 0
        for j in bits(p.down[old]):
            m |= 1 << pos[j]
        code.append(m)
    return tuple(code)


def _canonical_order(p: Poset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    labels = _point_labels(p)
    cells: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        cells.setdefault(lab, []).append(i)
    groups = [cells[k] for k in sorted(cells)]
    best_code, best_order = None, None
    for parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = tuple(itertools.chain.from_iterable(parts))
        code = _relabel_code(p, order)
        if best_code is None or code < best_code:
            best_code, best_order = code, order
    return best_code or (), best_order or ()


def canonical_form(p: Poset) -> CanonicalForm:
    return CanonicalForm(len(p), _canonical_order(p)[0])


def canonical_poset(p: Poset, prefix: str = "e") -> Poset:
    code, _ = _canonical_order(p)
    return Poset([f"{prefix}{i}" for i in range(len(p))], code)


def isomorphic(p: Poset, q: Poset) -> bool:
    return canonical_form(p) == canonical_form(q)


@lru_cache(maxsize=None)
def _posets_of_size(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    seen = set()
    for code in _posets_of_size(n - 1):
        base = Poset([f"e{i}" for i in range(n - 1)], code)
        # the new point sits above exactly the downset D
        for d in Algebra(base).masks:
            grown = Poset([f"e{i}" for i in range(n)], code + (d | 1 << (n - 1),))
            seen.add(canonical_form(grown).code)
    return tuple(sorted(seen))


def enumerate_posets(n: int, cap: int | None = None) -> Iterator[Poset]:
    """One poset per isomorphism class of size ``n``, in canonical order."""
    cap = cap if cap is not None else int(os.environ.get("COHEYT_MAX_ENUM", DEFAULT_MAX_ENUM))
    if not 0 <= n <= cap:
        raise CapExceeded(f"poset enumeration size {n} outside [0, {cap}]")
    for code in _posets_of_size(n):
        yield Poset([f"e{i}" for i in range(n)], code)


def enumerate_posets_upto(n: int) -> Iterator[Poset]:
    for k in range(n + 1):
        yield from enumerate_posets(k)


def enumerate_subalgebras(algebra: Algebra, base=None, cap: int = 64):
    """All subalgebras of ``algebra`` containing ``base`` (default: the constants).

    Every subalgebra above ``base`` is reached by adjoining one element at a
    time to closures, so the breadth-first search is exhaustive.
    """
    from .subalgebra import generated_subalgebra

    if len(algebra) > cap:
        raise CapExceeded(f"algebra of {len(algebra)} elements exceeds cap {cap}")
    start = generated_subalgebra(algebra, base.elements() if base is not None else [])
    found = {start.carrier_masks: start}
    frontier = [start]
    while frontier:
        nxt = []
        for sub in frontier:
            for m in algebra.masks:
                if m in sub.carrier_set:
                    continue
                bigger = generated_subalgebra(algebra, list(sub.elements()) + [algebra.wrap(m)])
                if bigger.carrier_masks not in found:
                    found[bigger.carrier_masks] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (len(s), s.carrier_masks))
