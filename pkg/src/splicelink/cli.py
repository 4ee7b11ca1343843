"""Command-line front end.

Every subcommand prints one JSON document (or an aligned text rendering
with ``--format table``).  Exit status is 0 on success, 1 on domain errors
and 2 on usage errors; domain errors are also reported as
``{"error": {"code": ..., "detail": ...}}`` on the output stream.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import atlas, moduli
from .algebra import TowerPoly, parse_poly
from .approx_roots import approximate_roots, verify_pole_orders
from .errors import ParseError, SpliceError
from .recognize import ParamCurve, expand_at_infinity, recognize
from .semigroup import gaps_brute_force, normal_form, tower
from .splice import PuiseuxChain, invariants, validate

log = logging.getLogger("splicelink")


class UsageError(Exception):
    code = "USAGE"


def _chain(text: str) -> PuiseuxChain:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--chain is not valid JSON: {exc}") from None
    return PuiseuxChain.from_json(data)


def _curve(args) -> ParamCurve:
    return ParamCurve(parse_poly(args.x, "t"), parse_poly(args.y, "t"))


def _terms(p: TowerPoly) -> list:
    return [[i, j, str(c)] for (i, j), c in p.sorted_terms()]


# --- subcommands -------------------------------------------------------------

def cmd_validate(args):
    report = validate(_chain(args.chain))
    return report.to_dict(), 0 if report.valid else 1


def cmd_invariants(args):
    chain = _chain(args.chain)
    doc = {"chain": chain.to_json(), **invariants(chain).to_dict(),
           "pole_orders": chain.pole_orders(), "deltas": chain.deltas()}
    return doc, 0


def cmd_semigroup(args):
    chain = _chain(args.chain)
    invariants(chain)  # validates
    t = tower(chain)
    doc = t.to_dict()
    doc["gaps"] = gaps_brute_force(chain.pole_orders())
    if args.value is not None:
        level = args.level or chain.n
        nf = normal_form(t, level, args.value)
        doc["normal_form"] = {
            "level": level, "value": args.value,
            "coefficients": None if nf is None else list(nf.coefficients),
        }
    return doc, 0


def cmd_recognize(args):
    result = recognize(_curve(args))
    doc = {
        "chain": result.chain.to_json(),
        "curve": result.curve.to_dict(),
        "pole_orders": list(result.pole_orders),
        "stage_degrees": result.stage_degrees(),
        "stage_traces": [list(t) for t in result.stage_traces],
        "preprocessing": list(result.preprocessing_log),
    }
    if args.emit_defining:
        doc["defining"] = _terms(result.defining)
    if args.emit_tower:
        doc["tower"] = [str(p) for p in result.tower]
    if args.expand is not None:
        exp = expand_at_infinity(result.curve, args.expand)
        doc["expansion"] = exp.to_dict()
    return doc, 0


def cmd_expand(args):
    exp = expand_at_infinity(_curve(args), args.order)
    doc = exp.to_dict()
    doc["chain"] = exp.chain().to_json()
    return doc, 0


def cmd_approx_roots(args):
    result = recognize(_curve(args))
    roots = approximate_roots(result.defining, result.chain)
    report = verify_pole_orders(roots, result.curve.x, result.curve.y, strict=False)
    doc = {
        "chain": result.chain.to_json(),
        "roots": [str(r) for r in roots.roots],
        "pole_orders": report.to_dict(),
    }
    return doc, 0 if report.ok else 1


def cmd_solve(args):
    chain = _chain(args.chain)
    y = parse_poly(args.y, "t") if args.y else None
    seed = args.seed if args.seed is not None else 0
    report = moduli.solve_with_retries(chain, y, args.free, seed)
    doc = report.to_dict()
    doc["threshold_checks"] = [list(c) for c in report.threshold_checks]
    return doc, 0


def cmd_build(args):
    chain = _chain(args.chain)
    curve = moduli.build_positive_braid_curve(chain, args.seed)
    doc = {"chain": chain.to_json(), "x": str(curve.x), "y": str(curve.y),
           "roundtrip": True}
    if args.seed is not None:
        doc["seed"] = args.seed
    return doc, 0


def cmd_enumerate(args):
    return atlas.atlas_document(args.degree, not args.exclude_positive_braids), 0


# --- rendering ---------------------------------------------------------------

def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        if isinstance(value, list):
            value = json.dumps(value, default=_json_default)
        elif isinstance(value, bool):
            value = "yes" if value else "no"
        out.append((prefix, str(value)))


def render_table(doc) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", doc, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the document here instead of stdout")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(
        prog="splicelink",
        description="Splice diagrams at infinity of polynomially parametrised curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    chain_help = "chain as JSON, e.g. '[[2,3],[9,2],[31,2]]'"
    p = add("validate", cmd_validate, "check the realizability conditions of a chain")
    p.add_argument("--chain", required=True, help=chain_help)

    p = add("invariants", cmd_invariants, "genus, d_k, self-linking numbers and flags")
    p.add_argument("--chain", required=True, help=chain_help)

    p = add("semigroup", cmd_semigroup, "semigroup tower, gaps and normal forms")
    p.add_argument("--chain", required=True, help=chain_help)
    p.add_argument("--value", type=int, help="integer to put in normal form")
    p.add_argument("--level", type=int, help="level k of H_k for --value (default n)")

    p = add("recognize", cmd_recognize, "chain and defining polynomial of (x(t), y(t))")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--emit-defining", action="store_true")
    p.add_argument("--emit-tower", action="store_true")
    p.add_argument("--expand", type=int, metavar="ORDER",
                   help="also expand at infinity through w^ORDER")

    p = add("approx-roots", cmd_approx_roots, "approximate roots and their pole orders")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = add("expand", cmd_expand, "Puiseux expansion of y at infinity")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--order", type=int, help="truncation order (default: automatic)")

    p = add("solve", cmd_solve, "solve for x(t) realizing a chain with a given y(t)")
    p.add_argument("--chain", required=True, help=chain_help)
    p.add_argument("--y", help="monic y(t); default t^M plus a seeded random tail")
    p.add_argument("--free", choices=("zero", "random"), default="zero")
    p.add_argument("--seed", type=int)

    p = add("build", cmd_build, "construct a curve for a positive-braid chain")
    p.add_argument("--chain", required=True, help=chain_help)
    p.add_argument("--seed", type=int)

    p = add("enumerate", cmd_enumerate, "all valid chains of a degree")
    p.add_argument("--degree", required=True, type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--include-positive-braids", action="store_true",
                       help="list positive braids (the default)")
    group.add_argument("--exclude-positive-braids", action="store_true")
    return parser


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    status = 0
    try:
        doc, status = args.func(args)
    except (UsageError, ParseError) as exc:
        code = "USAGE" if isinstance(exc, UsageError) else exc.code
        doc, status = {"error": {"code": code, "detail": str(exc)}}, 2
    except SpliceError as exc:
        doc, status = {"error": {"code": exc.code, "detail": str(exc)}}, 1
    except ValueError as exc:
        doc, status = {"error": {"code": "INVALID_INPUT", "detail": str(exc)}}, 1
    if "error" in doc:
        print(f"splicelink {args.command}: {doc['error']['code']}: "
              f"{doc['error']['detail']}", file=sys.stderr)
    elif status:
        print(f"splicelink {args.command}: failed", file=sys.stderr)
    text = render_json(doc) if args.format == "json" else render_table(doc)
    if args.command == "enumerate" and args.format == "table" and "error" not in doc:
        text = atlas.format_table(doc)
    try:
        _emit(text, args)
    except OSError as exc:
        print(f"splicelink: cannot write output: {exc}", file=sys.stderr)
        return 1
    return status


if __name__ == "__main__":
    sys.exit(main())
