"""Graphviz DOT export of Hasse diagrams (edges point upward, bottom drawn at the bottom)."""
from __future__ import annotations

from .lattice import Algebra, Poset

FULL_LATTICE_LIMIT = 20


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(p: Poset, name: str = "poset") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for n in p.names:
        lines.append(f"  {_quote(n)};")
    for lo, hi in p.covers:
        lines.append(f"  {_quote(p.names[lo])} -> {_quote(p.names[hi])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_dot(L: Algebra, name: str = "lattice") -> str:
    """Whole downset lattice; in a downset lattice each cover adds exactly one point."""
    masks = L.masks
    label = {m: repr(L.wrap(m)) for m in masks}
    present = set(masks)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for m in masks:
        lines.append(f"  {_quote(label[m])};")
    for m in masks:
        for i in range(len(L.poset)):
            if not m >> i & 1 and (m | 1 << i) in present:
                lines.append(f"  {_quote(label[m])} -> {_quote(label[m | 1 << i])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def algebra_to_dot(L: Algebra, name: str = "algebra", force_poset: bool = False) -> str:
    """The lattice itself when small, otherwise its poset of join-irreducibles."""
    if force_poset or not _small(L):
        return poset_to_dot(L.poset, name)
    return lattice_to_dot(L, name)


def _small(L: Algebra) -> bool:
    # count downsets without materialising more than the limit
    p = L.poset
    out = [0]
    for i in p.linear_extension:
        below = p.down[i] & ~(1 << i)
        out.extend([m | 1 << i for m in out if m & below == below])
        if len(out) > FULL_LATTICE_LIMIT:
            return False
    return True

