"""Small named algebras used throughout the tests and demos."""
from __future__ import annotations

from .lattice import Algebra


def L1() -> Algebra:
    """One-element algebra (empty poset)."""
    return Algebra.of([])


def L2() -> Algebra:
    return Algebra.of(["t"])


def chain(n_elements: int) -> Algebra:
    """Chain with ``n_elements`` elements: downsets of a chain of n-1 points."""
    names = [f"p{i}" for i in range(1, n_elements)]
    return Algebra.of(names, list(zip(names, names[1:])))


def L3() -> Algebra:
    return Algebra.of(["c", "t"], [("c", "t")])


def B4() -> Algebra:
    return Algebra.of(["p", "q"])


def L5() -> Algebra:
    """Unique atom ``c`` below two maximal points ``x1``, ``x2``."""
    return Algebra.of(["c", "x1", "x2"], [("c", "x1"), ("c", "x2")])


def L5_star() -> Algebra:
    """Two atoms ``a``, ``b`` below a single top point ``t``."""
    return Algebra.of(["a", "b", "t"], [("a", "t"), ("b", "t")])
