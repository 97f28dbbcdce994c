"""Command line front end.

Exit codes: 0 on success or passing checks, 1 when a check fails (the
first failing degree goes to stderr), 2 on usage errors.
"""

import argparse
import json
import re
import sys

from .freelie import lie_from_bracket_expr, lie_zero
from .assoc import bch
from .tder import TDer, div, j_of, taut_apply
from .arrowcalc import (aone_el, arrow, delete_strand, exp_el, mul, place, switch_sign)
from . import kv
from .wiring import WiringDiagram, wcompose, WiringError

__all__ = ["TangleWord", "z_eval", "main", "parse_tangle"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- tangle words

_MOVES = {"Xp": 2, "Xm": 2, "P": 2, "S": 1, "D": 1}


class TangleWord:
    """A pure w-tangle word: crossings, virtual swaps, orientation switches, deletions.

    Moves are read bottom to top.  ("Xp", i, j) is a positive crossing
    with strand i over strand j, ("Xm", i, j) the negative one.
    """

    def __init__(self, n, moves):
        self.n = n
        self.moves = [tuple(m) for m in moves]
        k = n
        for m in self.moves:
            op, args = m[0], m[1:]
            if op not in _MOVES or len(args) != _MOVES[op]:
                raise ValueError("malformed move %r" % (m,))
            if any(not isinstance(a, int) or not 1 <= a <= k for a in args):
                raise IndexError("move %r out of range for %d strands" % (m, k))
            if len(args) == 2 and args[0] == args[1]:
                raise ValueError("move %r needs two distinct strands" % (m,))
            if op == "D":
                k -= 1
        self.final_n = k

    def __add__(self, other):
        if self.final_n != other.n:
            raise ValueError("strand counts do not match")
        return TangleWord(self.n, self.moves + other.moves)

    def __repr__(self):
        return "TangleWord(%d, %s)" % (self.n, "; ".join(" ".join(map(str, m)) for m in self.moves))


def parse_tangle(n, text):
    moves = []
    for part in re.split(r"[;,\n]", text):
        toks = part.split()
        if not toks:
            continue
        try:
            moves.append((toks[0],) + tuple(int(t) for t in toks[1:]))
        except ValueError:
            raise ValueError("malformed move %r" % part.strip())
    return TangleWord(n, moves)


def _swap(n, i, j):
    f = {k: k for k in range(1, n + 1)}
    f[i], f[j] = j, i
    return f


def z_eval(t, N):
    """Z of a tangle word as an element of A(up_n) truncated at degree N."""
    n = t.n
    z = aone_el(n, N)
    for m in t.moves:
        op = m[0]
        if op == "Xp":
            z = mul(z, exp_el(arrow(m[1], m[2], n, N)))
        elif op == "Xm":
            z = mul(z, exp_el(-arrow(m[1], m[2], n, N)))
        elif op == "P":
            z = place(z, n, _swap(n, m[1], m[2]))
        elif op == "S":
            z = switch_sign(z, m[1])
        elif op == "D":
            z = delete_strand(z, m[1])
            n -= 1
    return z


# ---------------------------------------------------------------- output

def _emit(args, text, data):
    if args.format == "structured":
        print(json.dumps(data, sort_keys=True, indent=1))
    else:
        print(text)


def _lie(expr, n, N):
    if expr.strip() == "0":
        return lie_zero(n, N)
    return lie_from_bracket_expr(expr, n, N)


def _tder(exprs, n, N):
    if len(exprs) != n:
        raise UsageError("expected %d slot expressions, got %d" % (n, len(exprs)))
    return TDer([_lie(e, n, N) for e in exprs], n, N)


# ---------------------------------------------------------------- subcommands

def cmd_bch(args):
    a, b = _lie(args.x, args.n, args.degree), _lie(args.y, args.n, args.degree)
    z = bch(a, b)
    _emit(args, repr(z), z.to_dict())
    return 0


def cmd_div(args):
    w = div(_tder(args.slots, args.n, args.degree))
    _emit(args, repr(w), w.to_dict())
    return 0


def cmd_jfun(args):
    w = j_of(_tder(args.slots, args.n, args.degree))
    _emit(args, repr(w), w.to_dict())
    return 0


def cmd_exp_act(args):
    D = _tder(args.slots, args.n, args.degree)
    z = taut_apply(D, _lie(args.target, args.n, args.degree))
    _emit(args, repr(z), z.to_dict())
    return 0


def cmd_dims(args):
    from .diagoracle import dims_raw, dims_pbw
    modes = [m for m in ("raw", "pbw") if getattr(args, m)] or ["pbw"]
    rows = []
    for d in range(args.degree + 1):
        row = {"degree": d}
        for m in modes:
            row[m] = (dims_raw if m == "raw" else dims_pbw)(args.strands, d, args.sw)
        rows.append(row)
    text = "\n".join(["degree " + " ".join(modes)] +
                     ["%d %s" % (r["degree"], " ".join(str(r[m]) for m in modes)) for r in rows])
    _emit(args, text, {"strands": args.strands, "sw": args.sw, "rows": rows})
    return 0


def cmd_solve_kv(args):
    try:
        sol = kv.solve_kv(args.degree, even_duflo=args.even_duflo)
    except kv.InconsistentSystem as e:
        print(str(e), file=sys.stderr)
        return 1
    if args.output:
        kv.save_solution(sol, args.output)
    text = "Dlog: %r\nduflo: %r" % (sol.Dlog, sol.duflo)
    _emit(args, text, sol.to_dict())
    return 0


def cmd_check_kv(args):
    try:
        sol = kv.load_solution(args.file)
    except (OSError, ValueError, KeyError) as e:
        raise UsageError("cannot read solution: %s" % e)
    N = sol.N if args.degree is None else args.degree
    if N > sol.N:
        raise UsageError("solution only has degree %d" % sol.N)
    reports = kv.check_all(sol, N, structured=True, untranslated=True)
    if args.all:
        reports += [kv.check_twist(sol, N), kv.check_even_duflo(sol, N)]
        vc = kv.make_V_C(sol)
        reports.append(kv.check_R4_easy(vc.V, N))
    ok = all(reports)
    text = "\n".join(r.line() for r in reports)
    _emit(args, text, [{"check": r.name, "passed": r.passed, "degree": r.degree,
                        "residual": r.residual} for r in reports])
    for r in reports:
        if not r.passed:
            print("%s failed at degree %s" % (r.name, r.degree), file=sys.stderr)
            break
    return 0 if ok else 1


def cmd_z_eval(args):
    try:
        t = parse_tangle(args.n, args.word)
    except (ValueError, IndexError) as e:
        raise UsageError(str(e))
    z = z_eval(t, args.degree)
    _emit(args, repr(z), z.to_dict())
    return 0


def cmd_wiring(args):
    try:
        with (sys.stdin if args.file == "-" else open(args.file)) as fh:
            data = json.load(fh)
        outer = WiringDiagram.from_dict(data["outer"])
        inner = [WiringDiagram.from_dict(d) for d in data["inner"]]
        w = wcompose(outer, inner)
    except (OSError, ValueError, KeyError, TypeError, WiringError) as e:
        raise UsageError(str(e))
    _emit(args, repr(w), w.to_dict())
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="wkv", description="Arrow-diagram calculus and KV equations, exact and truncated.")
    p.add_argument("--format", choices=["text", "structured"], default="text")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(q, n=True):
        q.add_argument("--degree", type=int, required=True, help="truncation degree")
        if n:
            q.add_argument("--n", type=int, required=True, help="number of generators")

    q = sub.add_parser("bch", help="log(e^x e^y) in lie_n")
    common(q)
    q.add_argument("x")
    q.add_argument("y")
    q.set_defaults(func=cmd_bch)

    for name, fn, hlp in (("div", cmd_div, "divergence of a tangential derivation"),
                          ("jfun", cmd_jfun, "j(e^D) in tr_n")):
        q = sub.add_parser(name, help=hlp)
        common(q)
        q.add_argument("slots", nargs="+", help="one Lie expression per slot")
        q.set_defaults(func=fn)

    q = sub.add_parser("exp-act", help="apply e^D to a Lie element")
    common(q)
    q.add_argument("--target", required=True)
    q.add_argument("slots", nargs="+")
    q.set_defaults(func=cmd_exp_act)

    q = sub.add_parser("dims", help="graded dimensions of A(up_n)")
    common(q, n=False)
    q.add_argument("--strands", type=int, required=True)
    q.add_argument("--raw", action="store_true", help="quotient of raw diagrams")
    q.add_argument("--pbw", action="store_true", help="PBW prediction")
    q.add_argument("--sw", action="store_true", help="drop one-wheels")
    q.set_defaults(func=cmd_dims)

    q = sub.add_parser("solve-kv", help="solve the KV equations degree by degree")
    common(q, n=False)
    q.add_argument("--even-duflo", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_solve_kv)

    q = sub.add_parser("check-kv", help="run the equation checks on a solution file")
    q.add_argument("file")
    q.add_argument("--degree", type=int, help="defaults to the degree stored in the file")
    q.add_argument("--all", action="store_true", help="also twist, even Duflo and easy R4")
    q.set_defaults(func=cmd_check_kv)

    q = sub.add_parser("z-eval", help="Z of a pure w-tangle word")
    common(q)
    q.add_argument("word", help='moves like "Xp 1 2; Xm 2 3; P 1 2; S 1; D 3"')
    q.set_defaults(func=cmd_z_eval)

    q = sub.add_parser("wiring-compose", help="compose wiring diagrams from a JSON document")
    q.add_argument("file", help='JSON with "outer" and "inner"; - for stdin')
    q.set_defaults(func=cmd_wiring)
    return p


def main(argv=None):
    p = build_parser()
    args = p.parse_args(argv)
    for name in ("degree", "n", "strands"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            p.error("--%s must be non-negative" % name)
    try:
        return args.func(args)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (ValueError, IndexError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
