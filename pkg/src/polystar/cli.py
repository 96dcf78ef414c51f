"""``polystar`` command line.

Exit codes: 0 success, 1 domain error (JSON ``{"error": ...}`` on stdout),
2 usage or syntax error (message on stderr).  JSON output always uses sorted
keys and exact rationals as strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from polystar import checks, neglog, polyzeta, ratl, starpoly
from polystar.lifun import CFunction
from polystar.ncpoly import (
    DEFAULT_TERM_BUDGET,
    NCPoly,
    fmt_q,
    format_poly,
    parse_poly,
    term_budget,
)
from polystar.words import Alphabet, parse_word


class UsageError(Exception):
    pass


def _q(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _int(text: str) -> int:
    q = _q(text)
    if q.denominator != 1:
        raise UsageError(f"not an integer: {text!r}")
    return int(q)


def _syntax(fn, *args):
    """Run a parser; malformed text becomes a usage error."""
    try:
        return fn(*args)
    except ratl.ImproperStarError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _poly_out(key: str, p: NCPoly):
    return {key: p.to_json()}, f"{key}: {format_poly(p)}"


# verbs


def cmd_shuffle(args):
    p = _syntax(parse_poly, args.p)
    q = _syntax(parse_poly, args.q, p.alphabet if p.degree > 0 else None)
    if p.degree == 0:  # constants carry no alphabet of their own
        p = _syntax(parse_poly, args.p, q.alphabet)
    return _poly_out("shuffle", p.shuffle(q))


def cmd_stuffle(args):
    p = _syntax(parse_poly, args.p, Alphabet.Y0)
    q = _syntax(parse_poly, args.q, Alphabet.Y0)
    return _poly_out("stuffle", p.stuffle(q))


def cmd_coeff(args):
    rep = _syntax(ratl.compile_expr, args.expr)
    w = _syntax(parse_word, args.word, rep.alphabet)
    c = rep.coeff(w)
    return {"coeff": fmt_q(c)}, f"coeff: {fmt_q(c)}"


def cmd_truncate(args):
    rep = _syntax(ratl.compile_expr, args.expr)
    return _poly_out("truncate", rep.truncate(_int(args.N)))


def cmd_lazard_check(args):
    ok = ratl.lazard_check(_int(args.N), args.rhs)
    return {"lazard": ok}, f"lazard: {ok}"


def cmd_rewrite(args):
    p = _syntax(starpoly.parse_starpoly, args.expr)
    nf = starpoly.rewrite_mod_J(p)
    return {"normal_form": nf.to_json()}, f"normal_form: {nf}"


def cmd_negli(args):
    w = _syntax(parse_word, args.word, Alphabet.Y0)
    a = neglog.a_coeffs(w)
    return {"a": [str(x) for x in a]}, "a: " + " ".join(map(str, a))


def cmd_hsum(args):
    w = _syntax(parse_word, args.word, Alphabet.Y0)
    n = _int(args.N)
    if n < 0:
        raise ValueError("N must be non-negative")
    if args.neg:
        v = neglog.neg_hsum(w, n)
    else:
        v = polyzeta.harmonic_sum(w.letters, n)
    return {"hsum": fmt_q(v)}, f"hsum: {fmt_q(v)}"


def _triples_json(terms):
    return [{"coef": fmt_q(c), "n": n, "m": m} for c, n, m in terms]


def _triples_text(terms):
    return " + ".join(f"{fmt_q(c)} C(N+{n},{m})" for c, n, m in terms)


def cmd_faulhaber(args):
    w = _syntax(parse_word, args.word, Alphabet.Y0)
    try:
        terms = neglog.faulhaber_reduce(w)
    except neglog.FaulhaberBoundError as exc:
        best = exc.terms or []
        payload = {"error": str(exc), "terms": _triples_json(best)}
        return 1, payload, f"error: {exc}\nbest found: {_triples_text(best)}"
    return {"terms": _triples_json(terms)}, "H-(N) = " + _triples_text(terms)


def cmd_gamma(args):
    s = [_int(x) for x in args.s]
    if any(x > 0 for x in s):
        raise UsageError("gamma takes non-positive integers (write them after --)")
    g = polyzeta.gamma_neg(s)
    return {"gamma": fmt_q(g)}, f"gamma: {fmt_q(g)}"


def _li_function(text: str) -> CFunction:
    try:
        w = parse_word(text, Alphabet.X)
    except ValueError:
        return starpoly.li_ext(_syntax(starpoly.parse_starpoly, text))
    return CFunction.from_word(w)


def cmd_li_eval(args):
    f = _li_function(args.expr)
    z = float(_q(args.z))
    if not 0 < z < 1:
        raise UsageError("z must lie in (0, 1)")
    v = f.eval(z, args.trunc)
    return {"terms": f.to_json(), "value": v, "z": args.z}, f"{v!r}"


def _checks_out(results):
    passed = sum(r.ok for r in results)
    payload = {
        "failed": len(results) - passed,
        "passed": passed,
        "results": [r.to_json() for r in results],
    }
    lines = [f"{'PASS' if r.ok else 'FAIL'} {r.name}  {r.detail}" for r in results]
    lines.append(f"{passed} passed, {len(results) - passed} failed")
    return (0 if passed == len(results) else 1), payload, "\n".join(lines)


def cmd_check(args):
    if args.suite == "all":
        return _checks_out(checks.run_all())
    if args.suite == "newton-girard":
        return _checks_out(checks.check_newton_girard(_int(args.N), _int(args.kmax)))
    if args.suite == "gamma-star":
        ts = [_q(t) for t in (args.t or ["1/2", "-1/4", "1/3"])]
        return _checks_out(checks.check_gamma_star(ts))
    return _checks_out(checks.SUITES[args.suite]())


# parser


def _global_flags(p: argparse.ArgumentParser, defaults: bool):
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--trunc", type=int, default=d(2000), help="series truncation for numeric evaluation")
    p.add_argument("--json", action=argparse.BooleanOptionalAction, default=d(True),
                   help="JSON output (default) or plain text")
    p.add_argument("--term-budget", type=int, default=d(DEFAULT_TERM_BUDGET),
                   help="maximum number of terms in any intermediate result")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polystar", description=__doc__.split("\n")[0],
                                     allow_abbrev=False)
    _global_flags(parser, True)
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    _global_flags(common, False)
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_, allow_abbrev=False)
        p.set_defaults(fn=fn)
        return p

    p = verb("shuffle", cmd_shuffle, "shuffle product of two polynomials")
    p.add_argument("p")
    p.add_argument("q")
    p = verb("stuffle", cmd_stuffle, "stuffle product of two polynomials over Y0")
    p.add_argument("p")
    p.add_argument("q")
    p = verb("coeff", cmd_coeff, "coefficient of a word in a rational expression")
    p.add_argument("expr")
    p.add_argument("word")
    p = verb("truncate", cmd_truncate, "all terms of degree <= N of a rational expression")
    p.add_argument("expr")
    p.add_argument("N")
    p = verb("lazard-check", cmd_lazard_check, "(x0+x1)* against a factorized form up to degree N")
    p.add_argument("N")
    p.add_argument("--rhs", default="(x0* x1)* x0*")
    p = verb("rewrite", cmd_rewrite, "normal form of a star polynomial modulo the kernel")
    p.add_argument("expr")
    p = verb("negli", cmd_negli, "a-vector of a negative polylogarithm")
    p.add_argument("word")
    p = verb("hsum", cmd_hsum, "harmonic sum H_w(N), or H-_w(N) with --neg")
    p.add_argument("--neg", action="store_true")
    p.add_argument("word")
    p.add_argument("N")
    p = verb("faulhaber", cmd_faulhaber, "compact binomial form of H-_w(N)")
    p.add_argument("word")
    p = verb("gamma", cmd_gamma, "regularized value at non-positive indices (after --)")
    p.add_argument("s", nargs="+")
    p = verb("li-eval", cmd_li_eval, "evaluate Li of a word or star polynomial at z")
    p.add_argument("expr")
    p.add_argument("z")
    p = verb("check", cmd_check, "run property suites")
    p.add_argument("suite", choices=["all", "newton-girard", "gamma-star", *checks.SUITES])
    p.add_argument("--N", default="20")
    p.add_argument("--kmax", default="8")
    p.add_argument("--t", action="append")
    return parser


def _emit(payload, text, as_json: bool, stream):
    if as_json:
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        stream.write(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with term_budget(args.term_budget):
            out = args.fn(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"polystar {args.verb}: error: {exc}\n")
        return 2
    except (ValueError, ArithmeticError) as exc:
        _emit({"error": str(exc)}, f"error: {exc}", args.json, sys.stdout)
        return 1
    code, payload, text = out if len(out) == 3 else (0, *out)
    _emit(payload, text, args.json, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
