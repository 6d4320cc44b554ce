"""Command-line front end.

Every subcommand prints one JSON object on stdout (compact, sorted keys;
``--pretty`` indents it).  Exit status: 0 on success, 1 on a domain error
(the JSON then carries ``error`` with a machine-readable reason), 2 on a
usage error.

Integer and element lists are comma separated; extension-field elements
are bracketed digit lists, e.g. ``--num "[1,2],0,[0,1]"``.  Lists that
start with a minus sign must be attached with ``=``: ``--lift=-1,1``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import dessins, forms, search, types
from .algebra import GF, Polynomial, RationalFunction, parse_element
from .errors import DefdatumError


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        vals = json.loads("[" + text + "]")
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse integer list {text!r}") from exc
    if not all(isinstance(v, int) for v in vals):
        raise UsageError(f"expected integers in {text!r}")
    return vals


def _items(text: str) -> list:
    try:
        return json.loads("[" + text + "]")
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse list {text!r}") from exc


def _cycle_type(text: Optional[str], n: int) -> dessins.CycleType:
    return dessins.CycleType.padded(_ints(text) if text else [], n)


# -- handlers ------------------------------------------------------------------


def cmd_realizable(args) -> dict:
    A = _ints(args.lift)
    n, k = types.stats(A)
    return {"realizable": types.realizable(A), "n": n, "k": k}


def cmd_tree(args) -> dict:
    A = _ints(args.lift)
    T = dessins.build_tree(A)
    out = {"tree": T.to_json(), "generating_system": dessins.tree_to_generating_system(T).to_json()}
    if args.dot:
        out["dot"] = T.to_dot()
    return out


def cmd_dessin(args) -> dict:
    n = args.n
    C = dessins.CombinatorialType(
        n, _cycle_type(args.c1, n), _cycle_type(args.c2, n), _cycle_type(args.c3, n)
    )
    if args.action == "count":
        return {"type": C.to_json(), "count": dessins.count_classes(C)}
    systems = dessins.search_generating_systems(C, limit=args.limit)
    return {"type": C.to_json(), "systems": [g.to_json() for g in systems], "found": len(systems)}


def _type(args, text) -> types.ResidueType:
    return types.ResidueType(args.p, args.m, tuple(_ints(text)))


def cmd_type(args) -> dict:
    a = _type(args, args.type)
    if args.action == "canon":
        return {"canonical": list(types.canonicalize(a).entries)}
    if args.action == "equiv":
        if not args.other:
            raise UsageError("type equiv needs --other")
        return {"equivalent": types.equivalent(a, _type(args, args.other))}
    if args.action == "lifts":
        bound = args.bound
        lifts = list(types.enumerate_lifts(a, bound))
        return {"lifts": [list(A) for A in lifts]}
    if args.action == "certificate":
        A = types.nonexistence_certificate(a, args.bound)
        return {"certificate": None if A is None else list(A)}
    A = types.existence_window(a, args.bound)
    return {"window": None if A is None else list(A)}


def _report(omega, m) -> dict:
    ctx = forms.EquivariantContext.for_field(omega.field, m)
    return {"form": omega.to_json(), "report": forms.goodness(omega, ctx).to_json()}


def cmd_defdatum(args) -> dict:
    if args.action == "construct":
        if args.primitive:
            omega = search.construct_prop1(args.p, args.m, args.h)
        else:
            omega = search.construct_nonprimitive(args.p, args.m, args.h)
        return _report(omega, args.m)
    if args.action == "verify":
        if args.form:
            omega = forms.DifferentialForm.from_json(args.form)
            if omega.field.p != args.p:
                raise UsageError("--form and --p disagree")
        else:
            if args.num is None or args.den is None:
                raise UsageError("defdatum verify needs --num and --den, or --form")
            F = GF(args.p, args.ext)
            num = Polynomial(F, [parse_element(F, c) for c in _items(args.num)])
            den = Polynomial(F, [parse_element(F, c) for c in _items(args.den)])
            omega = forms.DifferentialForm(RationalFunction(num, den))
        return _report(omega, args.m)
    a = _type(args, args.type)
    if args.prime_field_forms:
        rep = search.search_prime_field_forms(args.p, args.m, a, cap=args.cap)
    else:
        rep = search.search_good_deformation(
            args.p, args.m, a, args.ext, cap=args.cap,
            start_offset=args.start_offset, threads=args.threads,
        )
    return rep.to_json(emit_witness=args.emit_witness)


def cmd_lift(args) -> dict:
    if args.action == "necessary":
        v = types.necessary_conditions(args.p, args.m, args.h)
        return {"status": v.status.value, "reason": v.reason}
    return types.decide_lifting(args.p, args.m, args.h).to_json()


def cmd_prop4(args) -> dict:
    F = GF(args.p, args.ext)
    A = _ints(args.lift)
    ctx = forms.EquivariantContext.for_field(F, 2)
    config = search.PoleConfiguration(ctx, tuple(parse_element(F, z) for z in _items(args.poles)))
    gt = search.m2_reduce(A, config)
    check = search.verify_prop4(gt, A, config.poles)
    return {
        "reduced": {"num": gt.num.to_list(), "den": gt.den.to_list()},
        "check": check.to_json(),
    }


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defdatum",
        description="Good deformation data, Belyi-type realizability and local lifting checks.",
    )
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realizable", help="is a zero-sum lift realizable")
    p.add_argument("--lift", required=True)
    p.set_defaults(func=cmd_realizable)

    p = sub.add_parser("tree", help="weighted plane tree with a given valency list")
    p.add_argument("--lift", required=True)
    p.add_argument("--dot", action="store_true", help="include a DOT rendering")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("dessin", help="generating systems of a combinatorial type")
    p.add_argument("action", choices=["search", "count"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c1", default="")
    p.add_argument("--c2", default="")
    p.add_argument("--c3", default="")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--threads", type=int, default=1, help="accepted for interface stability")
    p.set_defaults(func=cmd_dessin)

    p = sub.add_parser("type", help="residue types and their lifts")
    p.add_argument("action", choices=["canon", "equiv", "lifts", "certificate", "window"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--type", required=True)
    p.add_argument("--other")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_type)

    p = sub.add_parser("defdatum", help="construct, search or verify deformation data")
    p.add_argument("action", choices=["construct", "search", "verify"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--h", type=int)
    p.add_argument("--primitive", action="store_true", help="use the primitive construction")
    p.add_argument("--type")
    p.add_argument("--ext", type=int, default=1, help="extension degree d of F_(p^d)")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--start-offset", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--emit-witness", action="store_true")
    p.add_argument("--prime-field-forms", action="store_true",
                   help="search forms defined over F_p instead of rational pole tuples")
    p.add_argument("--num")
    p.add_argument("--den")
    p.add_argument("--form", help="a form as emitted in witness JSON")
    p.set_defaults(func=cmd_defdatum)

    p = sub.add_parser("lift", help="local lifting decision")
    p.add_argument("action", choices=["decide", "necessary"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("prop4", help="fiber structure of the m=2 reduced map")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ext", type=int, default=1)
    p.add_argument("--lift", required=True)
    p.add_argument("--poles", required=True)
    p.set_defaults(func=cmd_prop4)
    return parser


def _require(args):
    if args.command == "defdatum":
        if args.action == "construct" and args.h is None:
            raise UsageError("defdatum construct needs --h")
        if args.action == "search" and not args.type:
            raise UsageError("defdatum search needs --type")
    if args.command == "type" and args.action in ("lifts", "certificate", "window") and args.bound is not None and args.bound < 1:
        raise UsageError("--bound must be positive")


def dump(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _require(args)
        out = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"defdatum: error: {exc}", file=sys.stderr)
        return 2
    except DefdatumError as exc:
        print(dump({"error": exc.reason, "message": str(exc)}, args.pretty))
        return 1
    print(dump(out, args.pretty))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
