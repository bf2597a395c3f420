"""Command line front end: ``polyquot <subcommand> --polytope FILE --coloring FILE``.

Every subcommand prints one JSON object on stdout (or a plain text rendering
with ``--human``).  Input errors exit with status 2 and a one-line JSON error
on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from typing import Any, Optional, Sequence

from . import coloring as col
from . import complexes, hamilton, homology, polytope, spheres
from .errors import NotDecidableWarning, PolyquotError, SchemaError
from .gf2 import bitstring, parse_bitstring


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise SchemaError(f"usage: {message}")


def _default_limit() -> Optional[int]:
    raw = os.environ.get("POLYQUOT_LIMIT")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SchemaError("POLYQUOT_LIMIT must be an integer") from None


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc.msg}") from None


def _polytope(args) -> polytope.SimplePolytope:
    if args.builtin:
        return polytope.builtin(args.builtin, args.param)
    if not args.polytope:
        raise SchemaError("--polytope or --builtin is required")
    return polytope.from_document(_read_json(args.polytope))


def _coloring(args) -> col.Coloring:
    if not args.coloring:
        raise SchemaError("--coloring is required")
    return col.from_document(_read_json(args.coloring))


def _vector(c: col.Coloring) -> col.VectorColoring:
    if isinstance(c, col.VectorColoring):
        return c
    if isinstance(c, col.AffineColoring):
        return c.to_vector()
    raise SchemaError("this subcommand needs a GF(2) coloring")


def _affine(c: col.Coloring) -> Optional[col.AffineColoring]:
    if isinstance(c, col.AffineColoring):
        return c
    return _vector(c).to_affine()


def _integer(c: col.Coloring) -> col.IntegerColoring:
    if not isinstance(c, col.IntegerColoring):
        raise SchemaError("this subcommand needs an integer coloring")
    return c


def cmd_validate(args) -> dict:
    if args.builtin:
        p = polytope.builtin(args.builtin, args.param)
        problems = polytope.validate(p.num_facets, p.vertices)
        return {"result": not problems, "violations": problems}
    if not args.polytope:
        raise SchemaError("--polytope or --builtin is required")
    doc = _read_json(args.polytope)
    try:
        polytope.from_document(doc)
    except PolyquotError as exc:
        if exc.kind == "SchemaError":
            raise
        problems = polytope.validate(doc["num_facets"], doc["vertices"])
        return {"result": False, "violations": problems}
    return {"result": True, "violations": []}


def cmd_library(args) -> Any:
    if args.get:
        return polytope.builtin(args.get, args.param).to_dict()
    return {"names": list(polytope.BUILTIN_NAMES)}


def cmd_complex(args) -> dict:
    p = _polytope(args)
    c = _coloring(args)
    labels = c.columns if not isinstance(c, col.AffineColoring) else c.points
    cx = complexes.build_complex(p, labels)
    out = cx.to_dict()
    out["c3r"] = complexes.recognize_c3r(cx, p)
    out["violations"] = complexes.validate_complex(cx)
    return out


def cmd_manifold(args) -> dict:
    p = _polytope(args)
    lam = _vector(_coloring(args))
    st = col.is_manifold(p, lam)
    return {"result": st.kind != "not_manifold", **st.to_dict(), "free": col.is_free(p, lam)}


def cmd_orientable(args) -> dict:
    lam = _vector(_coloring(args))
    c = col.orientation_character(lam)
    closed = not lam.has_zero_column()
    return {"result": c is not None and closed, "character": bitstring(c) if c is not None else None, "closed": closed}


def cmd_sphere(args) -> dict:
    p = _polytope(args)
    lam = _affine(_coloring(args))
    if lam is None:
        return {"result": False, "r": None, "complex": None}
    result = spheres.is_sphere(p, lam)
    k = complexes.recognize_c3r(complexes.build_complex(p, lam.points), p)
    return {
        "result": result,
        "r": lam.affine_rank,
        "complex": f"C(3,{k})" if k is not None else None,
    }


def cmd_rhs(args) -> dict:
    p = _polytope(args)
    c = _coloring(args)
    lam = _affine(c)
    if lam is None:
        return {"result": False, "closed_orientable": False}
    point = parse_bitstring(args.through_point) if args.through_point else None
    return {"result": homology.is_rhs(p, lam, point), "closed_orientable": True}


def cmd_betti(args) -> dict:
    p = _polytope(args)
    lam = _vector(_coloring(args))
    cp = homology.betti(p, lam, "choi-park")
    if not args.direct:
        return cp.to_dict()
    d = homology.betti(p, lam, "direct")
    return {"choi-park": cp.to_dict(), "direct": d.to_dict(), "equal": cp.b == d.b}


def cmd_hyperelliptic(args) -> dict:
    p = _polytope(args)
    lam = _affine(_coloring(args))
    if lam is None:
        raise SchemaError("coloring is not closed and orientable")
    return spheres.enumerate_hyperelliptic(p, lam).to_dict()


def cmd_hamiltonian(args) -> dict:
    p = _polytope(args)
    g = polytope.graph(p)
    limit = args.limit if args.limit is not None else _default_limit()
    if args.consistent_triples:
        res = hamilton.find_consistent_triples(g, limit)
        return {"triples": [[list(c) for c in t] for t in res.items], "truncated": res.truncated}
    if args.theta or args.k4:
        kind = "theta" if args.theta else "k4"
        res = hamilton.enumerate_subgraphs(g, kind, args.spanning, limit)
        return {"subgraphs": [s.to_dict() for s in res.items], "truncated": res.truncated}
    res = hamilton.enumerate_hamiltonian_cycles(g, limit)
    cycles = []
    for cyc in res.items:
        k = hamilton.count_perfect_pairs(g, hamilton.factorization_from_cycle(g, cyc))
        cycles.append({"edges": list(cyc), "perfect_pairs": k})
    return {"cycles": cycles, "truncated": res.truncated}


def cmd_sphere_subgroups(args) -> dict:
    p = _polytope(args)
    limit = args.limit if args.limit is not None else _default_limit()
    res = spheres.sphere_subgroups(p, limit)
    return {"subgroups": [s.to_dict() for s in res.items], "truncated": res.truncated}


def cmd_torus_manifold(args) -> dict:
    p = _polytope(args)
    return {"result": col.torus_is_manifold(p, _integer(_coloring(args)))}


def cmd_torus_sphere(args) -> dict:
    p = _polytope(args)
    lam = _integer(_coloring(args))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NotDecidableWarning)
        result = col.torus_is_sphere(p, lam)
    decidable = not any(issubclass(w.category, NotDecidableWarning) for w in caught)
    return {"result": result, "decidable": decidable}


COMMANDS = {
    "validate": cmd_validate,
    "library": cmd_library,
    "complex": cmd_complex,
    "manifold": cmd_manifold,
    "orientable": cmd_orientable,
    "sphere": cmd_sphere,
    "rhs": cmd_rhs,
    "betti": cmd_betti,
    "hyperelliptic": cmd_hyperelliptic,
    "hamiltonian": cmd_hamiltonian,
    "sphere-subgroups": cmd_sphere_subgroups,
    "torus-manifold": cmd_torus_manifold,
    "torus-sphere": cmd_torus_sphere,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyquot", description="Decision procedures for quotients of real moment-angle manifolds.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--polytope")
        sp.add_argument("--builtin")
        sp.add_argument("--param", type=int)
        sp.add_argument("--coloring")
        sp.add_argument("--human", action="store_true", help="plain text instead of JSON")
        sp.add_argument("--json", action="store_true", help="JSON output (the default)")
        if name == "library":
            sp.add_argument("--list", action="store_true")
            sp.add_argument("--get")
        if name == "rhs":
            sp.add_argument("--through-point")
        if name == "betti":
            sp.add_argument("--direct", action="store_true")
        if name == "hamiltonian":
            kind = sp.add_mutually_exclusive_group()
            kind.add_argument("--theta", action="store_true")
            kind.add_argument("--k4", action="store_true")
            sp.add_argument("--spanning", action="store_true")
            sp.add_argument("--consistent-triples", action="store_true")
        if name in ("hamiltonian", "sphere-subgroups"):
            sp.add_argument("--limit", type=int)
    return parser


def render_human(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(x)}" if not isinstance(x, dict) else f"{pad}-\n{render_human(x, indent + 1)}" for x in obj)
    return f"{pad}{json.dumps(obj)}"


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise SchemaError("a subcommand is required")
        result = COMMANDS[args.command](args)
    except PolyquotError as exc:
        err.write(json.dumps({"error": exc.kind, "message": str(exc)}) + "\n")
        return 2
    if args.human:
        out.write(render_human(result) + "\n")
    else:
        out.write(json.dumps(result) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
