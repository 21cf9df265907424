"""Command-line front end.

Exit status: 0 positive answer, 1 negative, 2 unknown or budget exhausted,
3 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .checking import Judgment, SearchBudget, System, Verdict, check, inhabit
from .corpus import corpus
from .intersection import is_strict, leq, members, normalize, show_type, subtype_std
from .invert import left_inverse, right_inverse_arity, xi_membership
from .retraction import Status, retract_strict, simple_retract_std, verify
from .syntax import ParseError, parse_term, parse_type, show_term
from .terms import BudgetExceeded, head_normal_form, simple_right_inverse

POSITIVE, NEGATIVE, UNKNOWN, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


class Out:
    def __init__(self, fmt: str, unicode: bool):
        self.json = fmt == "json"
        self.unicode = unicode

    def term(self, t) -> str:
        return show_term(t, self.unicode)

    def type(self, t) -> str:
        return show_type(t, self.unicode)

    def emit(self, payload: dict, text: str) -> None:
        print(json.dumps(payload, ensure_ascii=False) if self.json else text)


def _budget(args) -> SearchBudget:
    return SearchBudget(args.depth, args.candidates)


def _system(args, *types) -> System:
    if args.system:
        return System(args.system)
    return System.ESSENTIAL if all(is_strict(t) and len(members(normalize(t))) <= 1 for t in types) else System.STANDARD


# -- commands ------------------------------------------------------------------------


def cmd_hnf(args, out: Out) -> int:
    h = head_normal_form(parse_term(args.term), args.steps)
    if h is None:
        out.emit({"status": "unsolvable"}, "unsolvable")
        return NEGATIVE
    payload = {
        "status": "hnf",
        "term": out.term(h.to_term()),
        "binders": len(h.binders),
        "head_pos": h.head_pos,
        "args": len(h.args),
    }
    out.emit(payload, payload["term"])
    return POSITIVE


def cmd_xi(args, out: Out) -> int:
    d = xi_membership(parse_term(args.term), args.steps)
    if d is None:
        out.emit({"member": False, "path": None}, "no")
        return NEGATIVE
    path = [list(p) for p in d.path]
    out.emit({"member": True, "path": path}, f"yes {_compact(path)}")
    return POSITIVE


def cmd_path(args, out: Out) -> int:
    d = xi_membership(parse_term(args.term), args.steps)
    if d is None:
        print("null" if out.json else "no path: term is not left invertible")
        return NEGATIVE
    print(_compact([list(p) for p in d.path]))
    return POSITIVE


def cmd_left_inverse(args, out: Out) -> int:
    L = left_inverse(parse_term(args.term), args.steps)
    if L is None:
        out.emit({"left_inverse": None}, "none: term is not left invertible")
        return NEGATIVE
    out.emit({"left_inverse": out.term(L)}, out.term(L))
    return POSITIVE


def cmd_right_inverse(args, out: Out) -> int:
    m = right_inverse_arity(parse_term(args.term), args.steps)
    if m is None:
        out.emit({"arity": None, "right_inverse": None}, "none: term is not right invertible")
        return NEGATIVE
    r = out.term(simple_right_inverse(m))
    out.emit({"arity": m, "right_inverse": r}, r)
    return POSITIVE


def _parse_env(items: list[str]) -> dict:
    env = {}
    for item in items or []:
        name, sep, ty = item.partition(":")
        if not sep or not name.strip():
            raise UsageError(f"environment entry {item!r} is not NAME:TYPE")
        if name.strip() in env:
            raise UsageError(f"variable {name.strip()} bound twice")
        env[name.strip()] = parse_type(ty)
    return env


def cmd_check(args, out: Out) -> int:
    term, ty, env = parse_term(args.term), parse_type(args.type), _parse_env(args.env)
    system = _system(args, ty, *env.values())
    j = Judgment.of(term, ty, env, system)
    v = check(j, args.steps)
    out.emit({**j.to_json(), "verdict": v.value}, v.value)
    return {Verdict.DERIVABLE: POSITIVE, Verdict.NOT_DERIVABLE: NEGATIVE}.get(v, UNKNOWN)


def cmd_subtype(args, out: Out) -> int:
    a, b = parse_type(args.a), parse_type(args.b)
    system = _system(args, a, b)
    if system is System.STANDARD:
        ok = subtype_std(a, b)
    else:
        for t in (a, b):
            if not is_strict(t):
                raise UsageError(f"not a strict intersection type: {show_type(t)}")
        ok = leq(normalize(a), normalize(b))
    out.emit({"a": out.type(a), "b": out.type(b), "system": system.value, "subtype": ok}, "yes" if ok else "no")
    return POSITIVE if ok else NEGATIVE


def cmd_inhabit(args, out: Out) -> int:
    t = inhabit(parse_type(args.type), _budget(args))
    if t is None:
        out.emit({"status": "none_found", "inhabitant": None}, "none found within budget")
        return UNKNOWN
    out.emit({"status": "inhabitant", "inhabitant": out.term(t)}, out.term(t))
    return POSITIVE


def cmd_retract(args, out: Out) -> int:
    mu, nu = parse_type(args.mu), parse_type(args.nu)
    system = _system(args, mu, nu)
    if system is System.ESSENTIAL:
        try:
            r = retract_strict(mu, nu, _budget(args), args.steps)
        except ValueError as e:
            raise UsageError(f"{e}; use --system standard") from e
    else:
        r = simple_retract_std(mu, nu, _budget(args), args.steps)
    payload = r.to_json()
    if r.witness:
        payload["left"], payload["right"] = out.term(r.witness.left), out.term(r.witness.right)
    text = r.status.value
    if r.witness:
        text += f"\nL = {payload['left']}\nR = {payload['right']}"
    out.emit(payload, text)
    return {Status.WITNESS: POSITIVE, Status.PROVABLY_NO: NEGATIVE}.get(r.status, UNKNOWN)


def cmd_verify(args, out: Out) -> int:
    L, R = parse_term(args.left), parse_term(args.right)
    mu, nu = parse_type(args.mu), parse_type(args.nu)
    system = _system(args, mu, nu)
    rep = verify(L, R, mu, nu, system, args.steps)
    lines = [
        f"|- L : nu -> mu   {rep.left_typed.value}",
        f"|- R : mu -> nu   {rep.right_typed.value}",
        f"L . R = I         {rep.composes.value}",
        f"R simple          {'yes' if rep.right_simple else 'no'}",
        "retraction holds" if rep.holds else "retraction not verified",
    ]
    out.emit({"system": system.value, **rep.to_json()}, "\n".join(lines))
    if rep.holds:
        return POSITIVE
    verdicts = (rep.left_typed, rep.right_typed, rep.composes)
    return NEGATIVE if Verdict.NOT_DERIVABLE in verdicts else UNKNOWN


def cmd_enumerate(args, out: Out) -> int:
    names = tuple(v.lstrip("'") for v in args.vars.split(","))
    types = corpus(args.depth, names, args.width)
    if out.json:
        print(json.dumps([out.type(t) for t in types], ensure_ascii=False))
    else:
        for i, t in enumerate(types):
            print(f"{i}\t{out.type(t)}")
    return POSITIVE


def cmd_selftest(args, out: Out) -> int:
    from .selftest import run

    results = run(args.seed, args.steps, _budget(args), log=None if out.json else print)
    ok = all(r["ok"] for r in results)
    if out.json:
        print(json.dumps({"seed": args.seed, "ok": ok, "checks": results}))
    return POSITIVE if ok else NEGATIVE


# -- wiring ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    fmt.add_argument("--unicode", action="store_true", help="print with unicode symbols")
    common = argparse.ArgumentParser(add_help=False, parents=[fmt])
    common.add_argument("--steps", type=int, default=10_000, help="reduction step budget")
    common.add_argument("--depth", type=int, default=6, help="inhabitation search depth")
    common.add_argument("--candidates", type=int, default=10_000, help="inhabitation candidate budget")

    def system_flag(p):
        p.add_argument("--system", choices=("essential", "standard"), default=None,
                       help="type system (default: essential when all types are strict)")

    parser = _Parser(prog="retrakt", description="Left inverses, intersection types and type retractions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, help_ in (
        ("hnf", cmd_hnf, "head normal form of a term"),
        ("xi", cmd_xi, "is the term left invertible"),
        ("path", cmd_path, "path of the left invertibility derivation"),
        ("left-inverse", cmd_left_inverse, "synthesize a left inverse"),
        ("right-inverse", cmd_right_inverse, "simple right inverse of a right invertible term"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("term")
        p.set_defaults(func=fn)

    p = sub.add_parser("check", parents=[common], help="type check a judgment")
    p.add_argument("term")
    p.add_argument("type")
    p.add_argument("--env", action="append", metavar="NAME:TYPE", help="environment binding (repeatable)")
    system_flag(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("subtype", parents=[common], help="decide a <= b")
    p.add_argument("a")
    p.add_argument("b")
    system_flag(p)
    p.set_defaults(func=cmd_subtype)

    p = sub.add_parser("inhabit", parents=[common], help="search a closed inhabitant")
    p.add_argument("type")
    p.set_defaults(func=cmd_inhabit)

    p = sub.add_parser("retract", parents=[common], help="decide mu <| nu and synthesize a witness")
    p.add_argument("mu")
    p.add_argument("nu")
    system_flag(p)
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("verify", parents=[common], help="audit a claimed witness L, R of mu <| nu")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("mu")
    p.add_argument("nu")
    system_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[fmt], help="list the small strict-type corpus")
    p.add_argument("--depth", type=int, default=2, help="maximum arrow depth")
    p.add_argument("--vars", default="a,b", help="comma separated type variable names")
    p.add_argument("--width", type=int, default=2)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", parents=[common], help="run seeded property checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Out(args.format, args.unicode)
    try:
        if args.command != "enumerate" and min(args.steps, args.candidates, args.depth) < 1:
            raise UsageError("budgets must be positive")
        return args.func(args, out)
    except (ParseError, UsageError) as e:
        print(f"retrakt: {e}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as e:
        print(f"retrakt: {e}", file=sys.stderr)
        if out.json:
            print(json.dumps({"status": "unknown", "budget": e.budget, "limit": e.limit}))
        return UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
