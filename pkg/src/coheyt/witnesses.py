"""Density and splitting axioms: checkers inside a finite algebra and
witness-producing extensions.

Every construction is a projection ``pi`` from a new index poset onto the
join-irreducibles of ``L`` with the lifting property, so the extension is
``L' = downsets(I)`` and the embedding is ``a -> pi^-1(a)``.  Outputs are
re-verified before they are returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .duality import Embedding, check_embedding, fresh_name, validate_pi
from .enumeration import enumerate_posets
from .errors import CapExceeded, FactorMismatch, HypothesisViolated, VarietyMismatch
from .lattice import Algebra, Downset, Poset, bits, max_poset_size, mway_below
from .varieties import Factorization, component_factorization, in_variety

VARIANTS = (1, 2, 3, 4, 5, 6)
# size below which outputs also get the exhaustive embedding check
EXHAUSTIVE_CHECK_POINTS = 6


def _variant(k: int) -> int:
    if k not in VARIANTS:
        raise ValueError(f"axiom variant must be 1..6, got {k}")
    return k


# -- hypotheses ---------------------------------------------------------------

def density_problem(p: Poset, variant: int, a: int, c: int) -> str | None:
    """Which hypothesis of the density axiom fails for ``(a, c)``, or None."""
    if a == 0:
        return "a != 0"
    if variant in (3, 4, 5):
        if c != 0:
            return "c = 0 (this density axiom has no lower bound)"
        if p.close(p.full & ~p.close(p.full & ~a)) != a:
            return "a = 1-(1-a)"
        return None
    if not mway_below(p, c, a):
        return "c << a"
    return None


def splitting_problem(p: Poset, variant: int, a: int, b1: int, b2: int) -> str | None:
    """Which hypothesis of the splitting axiom fails for ``(a, b1, b2)``, or None."""
    if a == 0:
        return "a != 0"
    if not mway_below(p, b1 | b2, a):
        return "b1 | b2 << a"
    one = p.full
    meet = b1 & b2
    if variant in (2, 5) and meet & p.close(one & ~p.close(one & ~a)):
        return "b1 & b2 & (1-(1-a)) = 0"
    if variant == 4 and meet & p.close(one & ~a):
        return "b1 & b2 & (1-a) = 0"
    if variant == 6 and meet:
        return "b1 & b2 = 0"
    return None


def is_density_witness(p: Poset, variant: int, a: int, c: int, b: int) -> bool:
    if b == 0 or not mway_below(p, b, a):
        return False
    return variant in (3, 4, 5) or mway_below(p, c, b)


def is_splitting_witness(p: Poset, a: int, b1: int, b2: int, a1: int, a2: int) -> bool:
    return (
        a1 != 0 and a2 != 0
        and p.close(a & ~a2) == a1 and p.close(a & ~a1) == a2
        and b1 & ~a1 == 0 and b2 & ~a2 == 0
        and a1 & a2 == b1 & b2
    )


# -- axiom checkers inside L ---------------------------------------------------

@dataclass
class AxiomReport:
    axiom: str
    holds: bool
    instances: list[tuple[dict, dict | None]]

    def __bool__(self) -> bool:
        return self.holds

    @property
    def failures(self) -> list[dict]:
        return [inp for inp, wit in self.instances if wit is None]

    @property
    def first_failure(self) -> dict | None:
        fails = self.failures
        return fails[0] if fails else None


def check_density(L: Algebra, variant: int) -> AxiomReport:
    """Every hypothesis pair ``(a, c)`` with its first witness ``b`` in ``L`` (or None)."""
    _variant(variant)
    p, elems = L.poset, L.masks
    instances = []
    lows = [0] if variant in (3, 4, 5) else elems
    for a in elems:
        for c in lows:
            if density_problem(p, variant, a, c):
                continue
            b = next((b for b in elems if is_density_witness(p, variant, a, c, b)), None)
            inp = {"a": L.wrap(a), "c": L.wrap(c)}
            instances.append((inp, None if b is None else {"b": L.wrap(b)}))
    return AxiomReport(f"D{variant}", all(w is not None for _, w in instances), instances)


def check_splitting(L: Algebra, variant: int) -> AxiomReport:
    """Every hypothesis triple ``(a, b1, b2)`` with its first witness pair in ``L``."""
    _variant(variant)
    p, elems = L.poset, L.masks
    instances = []
    for a in elems:
        for b1 in elems:
            for b2 in elems:
                if splitting_problem(p, variant, a, b1, b2):
                    continue
                found = None
                for a2 in elems:
                    a1 = p.close(a & ~a2)
                    if is_splitting_witness(p, a, b1, b2, a1, a2):
                        found = {"a1": L.wrap(a1), "a2": L.wrap(a2)}
                        break
                inp = {"a": L.wrap(a), "b1": L.wrap(b1), "b2": L.wrap(b2)}
                instances.append((inp, found))
    return AxiomReport(f"S{variant}", all(w is not None for _, w in instances), instances)


# -- plans and results ---------------------------------------------------------

@dataclass
class ExtensionPlan:
    """Index poset ``I``, projection ``pi: I -> base`` and witness masks in ``I``."""

    base: Poset
    index_set: Poset
    pi: tuple[int, ...]
    witnesses: dict[str, int]
    label: str

    def then(self, outer: "ExtensionPlan") -> "ExtensionPlan":
        """Compose with a plan whose base is this plan's index set; witnesses come from ``outer``."""
        pi = tuple(self.pi[j] for j in outer.pi)
        return ExtensionPlan(self.base, outer.index_set, pi, outer.witnesses,
                             f"{self.label}; {outer.label}")


@dataclass
class WitnessResult:
    source: Algebra
    extension: Algebra
    embedding: Embedding
    witnesses: dict[str, Downset]
    plan: ExtensionPlan
    checks: list[str] = field(default_factory=list)

    def __iter__(self):
        yield self.extension
        yield self.embedding
        yield from self.witnesses.values()

    def to_json(self) -> dict:
        return {
            "plan": self.plan.label,
            "extension": self.extension.poset.to_json(),
            "pi": {self.plan.index_set.names[z]: self.plan.base.names[x]
                   for z, x in enumerate(self.plan.pi)},
            "witnesses": {k: v.names() for k, v in self.witnesses.items()},
            "checks": self.checks,
        }


def _build(names: list[str], below: Callable[[int, int], bool]) -> Poset:
    n = len(names)
    if n > max_poset_size():
        raise CapExceeded(f"extension needs {n} points, cap is {max_poset_size()}")
    down = []
    for i in range(n):
        d = 0
        for j in range(n):
            if j == i or below(j, i):
                d |= 1 << j
        down.append(d)
    return Poset(names, down)


def identity_plan(p: Poset, witnesses: dict[str, int] | None = None, label="identity") -> ExtensionPlan:
    return ExtensionPlan(p, p, tuple(range(len(p))), dict(witnesses or {}), label)


def density_plan(p: Poset, a: int) -> ExtensionPlan:
    """A new point immediately below each join-irreducible component of ``a``."""
    comps = [i for i in bits(a) if p.up[i] & a == 1 << i]
    taken = set(p.names)
    names = list(p.names) + [fresh_name(p.names[i], taken) for i in comps]
    n0 = len(p)
    pi = list(range(n0)) + comps

    def below(j, i):
        if j < n0 and i < n0:
            return p.lt(j, i)
        if j >= n0 and i >= n0:
            return False
        if i >= n0:  # x < alpha  iff  x < a_i
            return p.lt(j, pi[i])
        return p.leq(pi[j], i)  # alpha < x  iff  a_i <= x

    I = _build(names, below)
    b = 0
    for z in range(n0, len(names)):
        b |= I.down[z]
    return ExtensionPlan(p, I, tuple(pi), {"b": b}, "density: new point below each component")


def split_plan(p: Poset, a: int, b1: int, b2: int) -> ExtensionPlan:
    """Duplicate the points of ``a`` into copies tagged 1, 2 (and 0 on ``b1 & b2``).

    Copy ``(y, j)`` lies below ``(x, i)`` when ``y <= x`` and ``{i, j} != {1, 2}``;
    points outside ``a`` are kept once and lie above every copy of a smaller
    point.
    """
    work = a
    taken = set(p.names)
    names, pi, tag = [], [], []
    for x in range(len(p)):
        if not work >> x & 1:
            names.append(p.names[x])
            pi.append(x)
            tag.append(None)
            continue
        for i, present in ((0, (b1 & b2) >> x & 1), (1, not b2 >> x & 1), (2, not b1 >> x & 1)):
            if present:
                names.append(fresh_name(p.names[x], taken))
                pi.append(x)
                tag.append(i)

    def below(j, i):
        y, x = pi[j], pi[i]
        if not p.leq(y, x):
            return False
        tj, ti = tag[j], tag[i]
        if tj is None:
            return ti is None
        if ti is None:
            return True
        return {ti, tj} != {1, 2}

    I = _build(names, below)
    comps = [x for x in bits(work) if p.up[x] & a == 1 << x]
    w1 = w2 = 0
    for z, x in enumerate(pi):
        if x in comps and tag[z] == 1:
            w1 |= I.down[z]
        if x in comps and tag[z] == 2:
            w2 |= I.down[z]
    return ExtensionPlan(p, I, tuple(pi), {"a1": w1, "a2": w2}, "splitting: copies of a glued along b1&b2")


def star_plan(p: Poset) -> ExtensionPlan:
    """Points ``(m, m)`` for minimal ``m`` and ``(m, x)`` for ``m < x``; ``pi(m, x) = x``.

    For a poset of height at most 2 every component of the result is a star
    (one minimal point and its covers), i.e. a copy of L2, L3 or L5.
    """
    if p.height() > 2:
        raise ValueError("star decomposition needs height at most 2")
    taken = set(p.names)
    names, pairs = [], []
    for m in p.minimal:
        names.append(p.names[m])
        pairs.append((m, m))
        for x in bits(p.up[m] & ~(1 << m)):
            shared = len(list(bits(p.down[x] & sum(1 << k for k in p.minimal)))) > 1
            names.append(fresh_name(p.names[x], taken) if shared else p.names[x])
            pairs.append((m, x))

    def below(j, i):
        (m1, x1), (m2, x2) = pairs[j], pairs[i]
        return x1 == m1 == m2 and x2 != m2

    I = _build(names, below)
    return ExtensionPlan(p, I, tuple(x for _, x in pairs), {}, "star decomposition")


def product_lift_witness(fact: Factorization, per_factor: Sequence[ExtensionPlan]) -> ExtensionPlan:
    """Glue per-factor plans into a plan over the product algebra.

    Witnesses are combined coordinatewise (disjoint union of the index sets),
    so a witness is non-zero as soon as one factor contributes a non-zero part.
    """
    if len(per_factor) != len(fact.factors):
        raise FactorMismatch(f"{len(per_factor)} results for {len(fact.factors)} factors")
    for j, (plan, f) in enumerate(zip(per_factor, fact.factors)):
        if plan.base != f.poset:
            raise FactorMismatch(f"result {j} is not over factor {j}")
    taken: set[str] = set()
    names, pi, downs = [], [], []
    keys = list(per_factor[0].witnesses) if per_factor else []
    wit = {k: 0 for k in keys}
    offset = 0
    for comp, plan in zip(fact.components, per_factor):
        if set(plan.witnesses) != set(keys):
            raise FactorMismatch("factors disagree on witness names")
        points = list(bits(comp))
        I = plan.index_set
        for z in range(len(I)):
            nm = I.names[z] if I.names[z] not in taken else fresh_name(I.names[z], taken)
            taken.add(nm)
            names.append(nm)
            pi.append(points[plan.pi[z]])
            downs.append(I.down[z] << offset)
        for k in keys:
            wit[k] |= plan.witnesses[k] << offset
        offset += len(I)
    if offset > max_poset_size():
        raise CapExceeded(f"product needs {offset} points, cap is {max_poset_size()}")
    I = Poset(names, downs)
    label = "product of factors [" + " | ".join(pl.label for pl in per_factor) + "]"
    return ExtensionPlan(fact.algebra.poset, I, tuple(pi), wit, label)


def _restrict(fact: Factorization, j: int, m: int) -> int:
    out = 0
    for k, i in enumerate(bits(fact.components[j])):
        if m >> i & 1:
            out |= 1 << k
    return out


def _lift_mask(plan: ExtensionPlan, m: int) -> int:
    out = 0
    for z, x in enumerate(plan.pi):
        if m >> x & 1:
            out |= 1 << z
    return out


def v4_split_plan(p: Poset, a: int, b1: int, b2: int) -> ExtensionPlan:
    """Splitting inside V4: pass to the star decomposition, then split each star.

    A star with two tops whose bottom lies in ``b1 & b2`` needs no new point:
    its two tops already witness the splitting there.
    """
    stars = star_plan(p)
    S = stars.index_set
    A, B1, B2 = (_lift_mask(stars, m) for m in (a, b1, b2))
    fact = component_factorization(Algebra(S))
    plans = []
    for j, f in enumerate(fact.factors):
        fp = f.poset
        fa, f1, f2 = (_restrict(fact, j, m) for m in (A, B1, B2))
        tops = list(fp.maximal)
        if fa == 0:
            plans.append(identity_plan(fp, {"a1": 0, "a2": 0}))
        elif f1 & f2 and len(tops) == 2:
            plans.append(identity_plan(fp, {"a1": fp.down[tops[0]], "a2": fp.down[tops[1]]},
                                       "two tops already split"))
        else:
            plans.append(split_plan(fp, fa, f1, f2))
    return stars.then(product_lift_witness(fact, plans))


# -- extensions ------------------------------------------------------------------

def _finish(L: Algebra, plan: ExtensionPlan, variant: int, checks: list[str]) -> WitnessResult:
    validate_pi(L.poset, plan.index_set, plan.pi)
    checks.append("pi increasing, onto, lifting property")
    L1 = Algebra(plan.index_set)
    emb = Embedding(L, L1, pi=plan.pi, provenance=plan.label)
    if len(L.poset) <= EXHAUSTIVE_CHECK_POINTS and len(plan.index_set) <= 2 * EXHAUSTIVE_CHECK_POINTS:
        report = check_embedding(emb)
        if not report:
            raise AssertionError(f"embedding check failed: {report.violation}")
        checks.append("embedding verified exhaustively")
    if not in_variety(L1, f"V{variant}"):
        raise AssertionError(f"extension left V{variant}")
    checks.append(f"extension in V{variant}")
    wit = {k: L1.wrap(m) for k, m in plan.witnesses.items()}
    return WitnessResult(L, L1, emb, wit, plan, checks)


def _require_variety(L: Algebra, variant: int) -> None:
    if not in_variety(L, f"V{variant}"):
        raise VarietyMismatch(f"algebra is not in V{variant}")


def density_extension(L: Algebra, a: Downset, c: Downset | None, variant: int) -> WitnessResult:
    """An extension ``L'`` of ``L`` in the same variety with a density witness ``b``.

    Unpacks as ``(L', E, b)``.
    """
    _variant(variant)
    p = L.poset
    L.check(a)
    cm = 0 if c is None else L.check(c).mask
    problem = density_problem(p, variant, a.mask, cm)
    if problem:
        raise HypothesisViolated(problem)
    _require_variety(L, variant)
    if variant in (3, 4, 5):
        comps = [i for i in bits(a.mask) if p.up[i] & a.mask == 1 << i]
        inner = next((x for x in range(len(p)) for ai in comps if p.lt(x, ai)), None)
        if inner is not None:
            plan = identity_plan(p, {"b": p.down[inner]}, "existing point below a component")
        else:
            plan = density_plan(p, a.mask)
    else:
        plan = density_plan(p, a.mask)
    res = _finish(L, plan, variant, [f"D{variant} hypotheses"])
    A, C = res.embedding.map_mask(a.mask), res.embedding.map_mask(cm)
    if not is_density_witness(res.extension.poset, variant, A, C, plan.witnesses["b"]):
        raise AssertionError("density witness does not satisfy the axiom")
    res.checks.append("b != 0 and c << b << a")
    return res


def splitting_extension(L: Algebra, a: Downset, b1: Downset, b2: Downset,
                        variant: int) -> WitnessResult:
    """An extension ``L'`` in the same variety with splitting witnesses.

    Unpacks as ``(L', E, a1, a2)``.
    """
    _variant(variant)
    p = L.poset
    for x in (a, b1, b2):
        L.check(x)
    problem = splitting_problem(p, variant, a.mask, b1.mask, b2.mask)
    if problem:
        raise HypothesisViolated(problem)
    _require_variety(L, variant)
    if variant == 4:
        plan = v4_split_plan(p, a.mask, b1.mask, b2.mask)
    else:
        plan = split_plan(p, a.mask, b1.mask, b2.mask)
    res = _finish(L, plan, variant, [f"S{variant} hypotheses"])
    E = res.embedding
    A, B1, B2 = (E.map_mask(m) for m in (a.mask, b1.mask, b2.mask))
    if not is_splitting_witness(res.extension.poset, A, B1, B2,
                                plan.witnesses["a1"], plan.witnesses["a2"]):
        raise AssertionError("splitting witnesses do not satisfy the axiom")
    res.checks.append("a-a2 = a1 >= b1, a-a1 = a2 >= b2, a1 & a2 = b1 & b2, a1, a2 != 0")
    return res


# -- bounded search over extensions ---------------------------------------------

def iter_pmorphisms(I: Poset, P: Poset) -> Iterator[tuple[int, ...]]:
    """All onto maps ``I -> P`` with ``pi(z^up) = pi(z)^up`` (increasing + lifting)."""
    order = list(reversed(I.linear_extension))
    pi = [-1] * len(I)

    def go(k: int) -> Iterator[tuple[int, ...]]:
        if k == len(order):
            hit = 0
            for x in pi:
                hit |= 1 << x
            if hit == P.full:
                yield tuple(pi)
            return
        z = order[k]
        reach = 0
        for w in bits(I.up[z] & ~(1 << z)):
            reach |= 1 << pi[w]
        for x in range(len(P)):
            if reach | 1 << x == P.up[x]:
                pi[z] = x
                yield from go(k + 1)
        pi[z] = -1

    yield from go(0)


def iter_extensions(L: Algebra, max_new_points: int, variety: str | None = None,
                    min_new_points: int = 0) -> Iterator[Embedding]:
    """Every embedding of ``L`` dual to a projection from a poset with at most
    ``max_new_points`` extra points (one poset per isomorphism class)."""
    P = L.poset
    for k in range(min_new_points, max_new_points + 1):
        for I in enumerate_posets(len(P) + k):
            if variety is not None and not in_variety(I, variety):
                continue
            target = None
            for pi in iter_pmorphisms(I, P):
                target = target or Algebra(I)
                yield Embedding(L, target, pi=pi, provenance=f"search +{k}")


def bounded_extension_search(L: Algebra, predicate: Callable[[Embedding], object],
                             max_new_points: int, variety: str | None = None):
    """First ``(L', E, witness)`` in canonical order with ``predicate(E)`` truthy."""
    for emb in iter_extensions(L, max_new_points, variety):
        found = predicate(emb)
        if found:
            return emb.target, emb, found
    return None


def density_predicate(a: Downset, c: Downset | None, variant: int):
    """Search predicate returning ``{"b": ...}`` for a density witness, else None."""
    def pred(emb: Embedding):
        q = emb.target.poset
        A = emb.map_mask(a.mask)
        C = 0 if c is None else emb.map_mask(c.mask)
        for b in emb.target.masks:
            if is_density_witness(q, variant, A, C, b):
                return {"b": emb.target.wrap(b)}
        return None
    return pred


def splitting_predicate(a: Downset, b1: Downset, b2: Downset):
    def pred(emb: Embedding):
        q = emb.target.poset
        A, B1, B2 = (emb.map_mask(x.mask) for x in (a, b1, b2))
        for a2 in emb.target.masks:
            a1 = q.close(A & ~a2)
            if is_splitting_witness(q, A, B1, B2, a1, a2):
                return {"a1": emb.target.wrap(a1), "a2": emb.target.wrap(a2)}
        return None
    return pred
