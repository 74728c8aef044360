"""``coheyt`` command line.

Exit codes: 0 success (or membership / existence true), 1 membership false or
nothing found, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .dot import algebra_to_dot, poset_to_dot
from .duality import Embedding, LatticeTable, algebra_from_table
from .embedding import ambient_new, embed_finite, embed_over
from .enumeration import enumerate_posets
from .errors import CoheytError, ParseError, VarietyMismatch
from .extensions import Signature, enumerate_signatures, iso_over, minimal_extension, primitive_tower
from .lattice import Algebra, Downset, build_poset
from .subalgebra import Subalgebra, full_subalgebra, generated_subalgebra
from .terms import eval_term
from .varieties import TAGS, check_equational, check_structural, dimension
from .witnesses import check_density, check_splitting, density_extension, splitting_extension

BUILTIN = {
    "L1": catalog.L1, "L2": catalog.L2, "L3": catalog.L3, "B4": catalog.B4,
    "L5": catalog.L5, "L5*": catalog.L5_star, "L5_star": catalog.L5_star,
}


# -- input helpers ---------------------------------------------------------------

def _load_json(source: str):
    try:
        return json.loads(Path(source).read_text())
    except FileNotFoundError:
        raise CoheytError(f"no such file: {source}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc.msg})") from None


def load_algebra(source: str) -> Algebra:
    """A poset file, a lattice-table file, or a built-in name (L1, L2, L3, B4, L5, L5*)."""
    if not Path(source).exists() and source in BUILTIN:
        return BUILTIN[source]()
    data = _load_json(source)
    if not isinstance(data, dict):
        raise ParseError(f"{source}: expected a JSON object")
    if "leq" in data:
        poset, _ = algebra_from_table(LatticeTable.from_json(data))
        return Algebra(poset)
    if "elements" not in data:
        raise ParseError(f"{source}: expected 'elements' and 'covers'")
    return Algebra(build_poset(data["elements"], data.get("covers", [])))


def parse_element(L: Algebra, text: str) -> Downset:
    """Comma-separated point names, closed downward; ``0`` and ``1`` are the constants."""
    text = text.strip()
    p = L.poset
    if text in ("0", "[]", "") and text not in p.names:
        return L.zero
    if text == "1" and text not in p.names:
        return L.one
    if text.startswith("["):
        try:
            names = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad element {text!r}: {exc.msg}") from None
    else:
        names = [n.strip() for n in text.split(",") if n.strip()]
    return L.closure(names)


def subalgebra_from(L: Algebra, gens: list[str] | None) -> Subalgebra:
    return generated_subalgebra(L, [parse_element(L, g) for g in gens or []])


def parse_signature(L: Algebra, text: str) -> Signature:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad signature JSON: {exc.msg}") from None
    else:
        data = _load_json(text)
    try:
        return Signature.from_json(L, data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad signature: {exc}") from None


def emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False))


def element_json(a: Downset) -> list[str]:
    return a.names()


# -- commands --------------------------------------------------------------------

def cmd_validate(args) -> int:
    L = load_algebra(args.file)
    emit({"ok": True, "points": len(L.poset), "elements": len(L),
          "poset": L.poset.to_json()})
    return 0


def cmd_eval(args) -> int:
    L = load_algebra(args.algebra)
    env = {}
    for b in args.bind or []:
        if "=" not in b:
            raise ParseError(f"--bind expects name=elements, got {b!r}")
        k, v = b.split("=", 1)
        env[k.strip()] = parse_element(L, v)
    print(repr(eval_term(L, args.term, env)))
    return 0


def cmd_irr(args) -> int:
    L = load_algebra(args.algebra)
    if args.gen:
        S = subalgebra_from(L, args.gen)
        emit([element_json(a) for a in S.join_irreducibles()])
    else:
        emit([element_json(a) for a in L.jir])
    return 0


def cmd_variety(args) -> int:
    L = load_algebra(args.algebra)
    eq = check_equational(L, args.tag)
    st = check_structural(L, args.tag)
    word = lambda r: "member" if r.member else "non-member"
    print(f"equational: {word(eq)}; structural: {word(st)}")
    if eq.counterexample is not None:
        cx = {k: element_json(v) for k, v in eq.counterexample.items()}
        print(f"counterexample: {json.dumps(cx)} violates {eq.detail}")
    print(f"agreement: {'true' if eq.member == st.member else 'false'}; dimension: {dimension(L)}")
    return 0 if eq.member and st.member else 1


def cmd_signatures(args) -> int:
    L = load_algebra(args.algebra)
    S = subalgebra_from(L, args.gen)
    sigs = enumerate_signatures(S)
    for s in sigs:
        emit(s.to_json())
    return 0 if sigs else 1


def cmd_extend(args) -> int:
    L = load_algebra(args.algebra)
    S = subalgebra_from(L, args.gen)
    sig = parse_signature(L, args.signature)
    L1, emb, tup = minimal_extension(S, sig)
    emit({
        "extension": L1.poset.to_json(),
        "embedding": [[a.names(), b.names()] for a, b in emb.items()],
        "tuple": [tup.x1.names(), tup.x2.names()],
        "signature": tup.signature.to_json(),
    })
    return 0


def cmd_tower(args) -> int:
    L = load_algebra(args.algebra)
    S = subalgebra_from(L, args.gen)
    for k, step in enumerate(primitive_tower(L, S), 1):
        emit({"step": k, "tuple": [step.tuple.x1.names(), step.tuple.x2.names()],
              "signature": step.tuple.signature.to_json(), "size": len(step.result)})
    return 0


def cmd_iso_over(args) -> int:
    L = load_algebra(args.algebra)
    S = subalgebra_from(L, args.gen)
    _, e1, _ = minimal_extension(S, parse_signature(L, args.signature))
    _, e2, _ = minimal_extension(S, parse_signature(L, args.other))
    iso = iso_over(e1, e2)
    if iso is None:
        print("absent")
        return 1
    emit({"iso": [[a.names(), b.names()] for a, b in iso.items()]})
    return 0


def cmd_axiom(args) -> int:
    L = load_algebra(args.algebra)
    fn = check_density if args.kind == "density" else check_splitting
    rep = fn(L, args.variant)
    fail = rep.first_failure
    emit({"axiom": rep.axiom, "holds": rep.holds, "instances": len(rep.instances),
          "first_failure": None if fail is None else {k: v.names() for k, v in fail.items()}})
    return 0 if rep.holds else 1


def cmd_witness(args) -> int:
    L = load_algebra(args.algebra)
    a = parse_element(L, args.a)
    if args.kind == "density":
        c = parse_element(L, args.c) if args.c is not None else None
        res = density_extension(L, a, c, args.variant)
        inp = {"a": a.names(), "c": None if c is None else c.names()}
    else:
        b1, b2 = parse_element(L, args.b1 or "0"), parse_element(L, args.b2 or "0")
        res = splitting_extension(L, a, b1, b2, args.variant)
        inp = {"a": a.names(), "b1": b1.names(), "b2": b2.names()}
    out = {"input": inp, **res.to_json()}
    out["L'"] = out.pop("extension")
    emit(out)
    return 0


def cmd_embed(args) -> int:
    L1 = load_algebra(args.algebra)
    if args.gen:
        T = subalgebra_from(L1, args.gen)
        S0 = T.as_algebra()
        S = full_subalgebra(S0)
        A = ambient_new(S, args.tag)
        j = Embedding(S, L1, table={d: T.from_dual(d).mask for d in S0.masks})
        emb = embed_over(A, S, L1, j)
    else:
        emb, A = embed_finite(L1, args.tag)
    emit({"ambient": A.current.poset.to_json(),
          "embedding": {repr(a): b.names() for a, b in emb.items()},
          "history": [tag for tag, _ in A.history]})
    return 0


def cmd_enumerate(args) -> int:
    sizes = range(args.max_size + 1) if args.all_sizes else [args.max_size]
    count = 0
    for n in sizes:
        for p in enumerate_posets(n):
            emit(p.to_json())
            count += 1
    return 0 if count else 1


def cmd_export_dot(args) -> int:
    L = load_algebra(args.algebra)
    text = poset_to_dot(L.poset) if args.poset else algebra_to_dot(L)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coheyt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_algebra(name, help_, gens=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--algebra", required=True,
                        help="poset or lattice-table JSON file, or a built-in name")
        if gens:
            sp.add_argument("--gen", action="append",
                            help="generator of the subalgebra (comma-separated names); repeatable")
        return sp

    sp = sub.add_parser("validate", help="validate a poset or lattice-table file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = with_algebra("eval", "evaluate a term")
    sp.add_argument("--term", required=True)
    sp.add_argument("--bind", action="append", help="name=elements, e.g. x=x1")
    sp.set_defaults(func=cmd_eval)

    with_algebra("irr", "join-irreducibles (of a subalgebra with --gen)", gens=True).set_defaults(func=cmd_irr)

    sp = with_algebra("variety", "equational and structural membership")
    sp.add_argument("--tag", required=True, choices=TAGS)
    sp.set_defaults(func=cmd_variety)

    with_algebra("signatures", "signatures over a subalgebra", gens=True).set_defaults(func=cmd_signatures)

    sp = with_algebra("extend", "minimal extension with a given signature", gens=True)
    sp.add_argument("--signature", required=True, help="signature JSON (inline or file)")
    sp.set_defaults(func=cmd_extend)

    with_algebra("tower", "primitive tower from a subalgebra up to the algebra", gens=True).set_defaults(func=cmd_tower)

    sp = with_algebra("iso-over", "compare two minimal extensions over a subalgebra", gens=True)
    sp.add_argument("--signature", required=True)
    sp.add_argument("--other", required=True)
    sp.set_defaults(func=cmd_iso_over)

    sp = with_algebra("axiom", "check a density or splitting axiom inside the algebra")
    sp.add_argument("--kind", required=True, choices=["density", "splitting"])
    sp.add_argument("--variant", required=True, type=int, choices=range(1, 7))
    sp.set_defaults(func=cmd_axiom)

    sp = with_algebra("witness", "build an extension carrying an axiom witness")
    sp.add_argument("--kind", required=True, choices=["density", "splitting"])
    sp.add_argument("--variant", required=True, type=int, choices=range(1, 7))
    sp.add_argument("--a", required=True)
    sp.add_argument("--c")
    sp.add_argument("--b1")
    sp.add_argument("--b2")
    sp.set_defaults(func=cmd_witness)

    sp = with_algebra("embed", "embed into a self-extending ambient of a variety", gens=True)
    sp.add_argument("--tag", required=True, choices=TAGS)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("enumerate", help="posets up to isomorphism, one JSON object per line")
    sp.add_argument("--max-size", type=int, required=True)
    sp.add_argument("--all-sizes", action="store_true", help="every size from 0 up to --max-size")
    sp.set_defaults(func=cmd_enumerate)

    sp = with_algebra("export-dot", "Graphviz Hasse diagram")
    sp.add_argument("--poset", action="store_true", help="draw the join-irreducibles only")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VarietyMismatch as exc:
        # a membership answer, not malformed input
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except CoheytError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
