"""Command line front end: ``polydir <command> ...`` or ``python -m polydir``.

Expressions use the syntax of :mod:`polydir.expr`.  Functions, bundles and
morphisms are given as JSON, or for functions and bundles in the compact form
``"0,0,1:2"`` (0-based images, then the codomain size).
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import nullcontext

from . import bundle, dirichlet, expr, finset, laws, poly, topos
from .bundle import Bundle, BunMorphism
from .dirichlet import Dir, DirMorphism
from .errors import ExprSyntaxError, PolyDirError
from .finset import FinFunction
from .poly import Poly, PolyMorphism


class UsageError(Exception):
    pass


# -- argument readers ----------------------------------------------------------

def _read_obj(args, text: str):
    kind = "poly" if args.poly else "dir" if args.dir else None
    try:
        return expr.parse(kind, text)
    except ExprSyntaxError as e:
        raise UsageError(f"{e}\n  {text}\n  {' ' * e.position}^") from None


def _read_kind(args, *texts):
    objs = [_read_obj(args, t) for t in texts]
    kinds = {type(o) for o in objs}
    if len(kinds) > 1:
        raise UsageError("cannot mix polynomial and Dirichlet arguments")
    return objs


def _json_or(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return None


def _read_function(text: str) -> FinFunction:
    data = _json_or(text)
    if isinstance(data, dict):
        return FinFunction.from_json(data)
    images, sep, cod = text.partition(":")
    if not sep:
        raise UsageError(f"expected JSON or 'images:codomain', got {text!r}")
    try:
        values = tuple(int(v) for v in images.split(",") if v.strip())
        return FinFunction(len(values), int(cod), values)
    except ValueError:
        raise UsageError(f"bad function {text!r}") from None


def _read_bundle(text: str) -> Bundle:
    data = _json_or(text)
    if isinstance(data, dict):
        return Bundle.from_json(data)
    return Bundle(_read_function(text))


def _read_subset(text: str | None) -> list[int]:
    if not text:
        return []
    return [int(v) for v in text.split(",") if v.strip()]


def _read_morphism(text: str):
    data = _json_or(text)
    if not isinstance(data, dict):
        return _read_function(text)
    if "on_positions" in data:
        return PolyMorphism.from_json(data)
    if "on_terms" in data:
        return DirMorphism.from_json(data)
    if "total_map" in data:
        return BunMorphism.from_json(data)
    if "map" in data:
        return FinFunction.from_json(data)
    raise UsageError("unrecognized morphism JSON")


# -- output --------------------------------------------------------------------

def _to_json(value):
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [_to_json(v) for v in value]
    if isinstance(value, dict):
        return {k: _to_json(v) for k, v in value.items()}
    return value


def _to_text(value) -> str:
    if isinstance(value, (Poly, Dir)):
        return expr.format(value)
    if isinstance(value, (list, tuple)):
        return "\n".join(_to_text(v) for v in value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {_to_text(v)}" for k, v in value.items())
    return str(value)


def _emit(args, value, out):
    if args.json:
        if isinstance(value, int):
            value = {"value": value}
        out.write(json.dumps(_to_json(value), sort_keys=True) + "\n")
    else:
        out.write(_to_text(value) + "\n")


# -- commands ------------------------------------------------------------------

def cmd_eval(args):
    (obj,) = _read_kind(args, args.expr)
    return obj(args.x)


def cmd_hom(args):
    a, b = _read_kind(args, args.source, args.target)
    return poly.hom_count(a, b) if isinstance(a, Poly) else dirichlet.hom_count(a, b)


def cmd_enum(args):
    a, b = _read_kind(args, args.source, args.target)
    module = poly if isinstance(a, Poly) else dirichlet
    return module.hom_enumerate(a, b, args.limit)


def _binary(name_poly, name_dir=None):
    def run(args):
        a, b = _read_kind(args, args.left, args.right)
        if isinstance(a, Poly):
            return name_poly(a, b)
        if name_dir is None:
            raise UsageError(f"{args.command} is defined for polynomials only")
        return name_dir(a, b)
    return run


def _poly_only(args, *texts):
    objs = _read_kind(args, *texts)
    if not isinstance(objs[0], Poly):
        raise UsageError(f"{args.command} is defined for polynomials only")
    return objs


def cmd_ihom(args):
    A, Q = _poly_only(args, args.left, args.right)
    return poly.internal_hom(A, Q)


def cmd_power(args):
    Q, A = _poly_only(args, args.left, args.right)
    return poly.power(Q, A)


def cmd_gamma(args):
    (P,) = _poly_only(args, args.expr)
    return poly.global_sections(P)


def cmd_transform(args):
    (obj,) = _read_kind(args, args.expr)
    if isinstance(obj, Poly):
        return bundle.dirichlet_transform(obj)
    return bundle.inverse_transform(obj)


def cmd_to_bundle(args):
    (obj,) = _read_kind(args, args.expr)
    return bundle.bundle_of_poly(obj) if isinstance(obj, Poly) else bundle.bundle_of_dir(obj)


def cmd_from_bundle(args):
    b = _read_bundle(args.bundle)
    if args.poly:
        return bundle.poly_of_bundle(b)
    if args.dir:
        return bundle.dir_of_bundle(b)
    return {"poly": bundle.poly_of_bundle(b), "dir": bundle.dir_of_bundle(b)}


def cmd_pullback(args):
    f, g = _read_morphism(args.f), _read_morphism(args.g)
    if type(f) is not type(g):
        raise UsageError("both legs must be morphisms of the same kind")
    if isinstance(f, FinFunction):
        apex, p, q = finset.pullback(f, g)
        return {"apex": apex.size, "left": p, "right": q}
    if isinstance(f, PolyMorphism):
        R, p, q = poly.pullback_poly(f, g)
    elif isinstance(f, DirMorphism):
        R, p, q = dirichlet.pullback_dir(f, g)
    else:
        raise UsageError("pullback takes functions, Poly or Dir morphisms")
    return {"apex": R, "left": p, "right": q}


def cmd_factorize(args):
    m = _read_morphism(args.morphism)
    if not isinstance(m, BunMorphism):
        raise UsageError("factorize takes a bundle morphism")
    vertical, cartesian = bundle.factorize(m)
    return {"vertical": vertical, "cartesian": cartesian}


def cmd_omega(args):
    om, truth = topos.omega()
    return {"omega": om, "true": truth}


def cmd_classify(args):
    F = _read_bundle(args.bundle)
    w = topos.subobject(F, _read_subset(args.total), _read_subset(args.base))
    return topos.classify(w)


def cmd_exp(args):
    E, F = _read_bundle(args.base), _read_bundle(args.exponent)
    return topos.exponential(E, F, args.limit).bundle


def cmd_check(args):
    grid = laws.Grid.parse(args.grid) if args.grid else laws.Grid()
    names = list(laws.SUITES) if args.suite == "all" else [args.suite]
    return [laws.run_suite(n, grid, args.seed, args.mutate) for n in names]


# -- parser -------------------------------------------------------------------

def _flags(parser, suppress=False):
    # the subcommand copies must not reset flags given before the subcommand
    quiet = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--json", action="store_true", help="machine-readable output", **quiet)
    parser.add_argument("--budget", type=int, help="largest collection any enumeration may build",
                        **(quiet or {"default": None}))
    kind = parser.add_mutually_exclusive_group()
    kind.add_argument("--poly", action="store_true", help="read expressions as polynomials", **quiet)
    kind.add_argument("--dir", action="store_true", help="read expressions as Dirichlet", **quiet)
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _flags(argparse.ArgumentParser(add_help=False), suppress=True)
    parser = _flags(argparse.ArgumentParser(
        prog="polydir", description="Polynomial and Dirichlet functors on finite sets."))
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help, *positionals):
        p = sub.add_parser(name, parents=[common], help=help)
        for pos in positionals:
            if isinstance(pos, tuple):
                p.add_argument(pos[0], **pos[1])
            else:
                p.add_argument(pos)
        p.set_defaults(fn=fn)
        return p

    add("eval", cmd_eval, "evaluate at a finite set", "expr", ("x", {"type": int}))
    add("hom", cmd_hom, "count morphisms", "source", "target")
    p = add("enum", cmd_enum, "list morphisms", "source", "target")
    p.add_argument("--limit", type=int, default=None)
    add("add", _binary(poly.add, dirichlet.add), "sum", "left", "right")
    add("mul", _binary(poly.multiply, dirichlet.multiply), "product", "left", "right")
    add("compose", _binary(poly.substitute), "substitution P(Q)", "left", "right")
    add("tensor", _binary(poly.tensor), "Dirichlet product of polynomials", "left", "right")
    add("ihom", cmd_ihom, "internal hom [A, Q]", "left", "right")
    add("power", cmd_power, "cartesian exponential Q^A", "left", "right")
    add("gamma", cmd_gamma, "global sections", "expr")
    add("transform", cmd_transform, "swap y^k and k^y", "expr")
    add("to-bundle", cmd_to_bundle, "canonical bundle", "expr")
    add("from-bundle", cmd_from_bundle, "polynomial and Dirichlet of a bundle", "bundle")
    add("pullback", cmd_pullback, "pullback of two functions or morphisms", "f", "g")
    add("factorize", cmd_factorize, "vertical/cartesian factorization", "morphism")
    add("omega", cmd_omega, "the subobject classifier")
    p = add("classify", cmd_classify, "characteristic map of a subobject", "bundle")
    p.add_argument("--total", default="", help="comma-separated total elements")
    p.add_argument("--base", default="", help="comma-separated base elements")
    p = add("exp", cmd_exp, "exponential bundle E^F", "base", "exponent")
    p.add_argument("--limit", type=int, default=None)
    p = add("check", cmd_check, "run law suites",
            ("suite", {"choices": [*laws.SUITES, "all"]}))
    p.add_argument("--grid", default=None, help="e.g. exp=2,terms=2,set=3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutate", choices=sorted(laws.MUTATIONS), default=None,
                   help="corrupt one formula on purpose")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        with finset.budget(args.budget) if args.budget is not None else nullcontext():
            result = args.fn(args)
    except (UsageError, ExprSyntaxError, ValueError, IndexError, PolyDirError) as e:
        sys.stderr.write(f"polydir {args.command}: {e}\n")
        return 2
    if args.command == "check":
        if args.json:
            out.write(json.dumps([r.to_json() for r in result], sort_keys=True) + "\n")
        else:
            out.write("\n".join(r.line() for r in result) + "\n")
        return 0 if all(r.passed for r in result) else 1
    _emit(args, result, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
