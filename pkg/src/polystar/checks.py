"""Property suites behind ``polystar check``.

Each suite returns a list of :class:`CheckResult`.  Sizes are chosen so that
``check all`` finishes in well under a minute; the test-suite runs the same
properties at full size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np

from polystar import lifun, neglog, polyzeta, ratl, starpoly
from polystar.lifun import BasisElem, CFunction, DivergentConstantError, Ppow, Zpow
from polystar.ncpoly import NCPoly, coproduct_shuffle, x0_tail_eliminate
from polystar.words import (
    Alphabet,
    Word,
    is_lyndon,
    lyndon_factorization,
    pi_X,
    pi_Y_word,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _run(name, fn):
    try:
        out = fn()
    except Exception as exc:  # a crashing property is a failing property
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, tuple):
        return CheckResult(name, bool(out[0]), str(out[1]))
    return CheckResult(name, bool(out))


# random generators shared with the tests


def random_poly(rng: random.Random, alphabet=Alphabet.X, max_deg=5, n_terms=4, top=1):
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        w = tuple(rng.randint(0, top) for _ in range(rng.randint(0, max_deg)))
        terms[w] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return NCPoly(alphabet, terms)


def random_expr(rng: random.Random, size: int) -> str:
    """Random rational expression over X with about ``size`` nodes, stars kept proper."""
    if size <= 1:
        return rng.choice(["x0", "x1", "1/2 x0", "-x1", "2", "1/3"])
    op = rng.choice(["+", "conc", "#", "*"])
    if op == "*":
        inner = random_expr(rng, size - 1)
        return f"({rng.choice(['x0', 'x1'])} ({inner}))*"
    left = rng.randint(1, size - 1)
    a, b = random_expr(rng, left), random_expr(rng, size - left)
    if op == "+":
        return f"({a} + {b})"
    if op == "#":
        return f"({a} # {b})"
    return f"({a})({b})"


def random_cfunction(rng: random.Random, n_terms=10, kmax=3, lmax=3, umax=3, nmax=2) -> CFunction:
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        c = Zpow(rng.randint(-kmax, kmax)) if rng.random() < 0.6 else Ppow(rng.randint(1, lmax))
        length = rng.randint(0, umax)
        u = tuple(rng.randint(0, 1) for _ in range(length - 1)) + ((1,) if length else ())
        terms[BasisElem(c, u, rng.randint(0, nmax))] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return CFunction(terms)


def all_words(alphabet, max_len, top=1):
    for n in range(max_len + 1):
        for w in product(range(top + 1), repeat=n):
            yield Word(alphabet, w)


# suites


def suite_words(max_len=8):
    def roundtrip():
        for w in all_words(Alphabet.Y0, 4, top=3):
            if 0 in w.letters:
                continue
            if pi_Y_word(pi_X(w)) != w:
                return False, f"pi_Y(pi_X({w})) != {w}"
        for w in all_words(Alphabet.X, 6):
            if w.letters and w.letters[-1] == 0:
                continue
            if pi_X(pi_Y_word(w)) != w:
                return False, f"pi_X(pi_Y({w})) != {w}"
        return True, "ok"

    def factorization():
        for w in all_words(Alphabet.X, max_len):
            fs = lyndon_factorization(w)
            if sum((f.letters for f in fs), ()) != w.letters:
                return False, f"factors of {w} do not concatenate back"
            if not all(is_lyndon(f) for f in fs):
                return False, f"non-Lyndon factor for {w}"
            if any(fs[i] < fs[i + 1] for i in range(len(fs) - 1)):
                return False, f"factors of {w} increase"
        return True, f"all words up to length {max_len}"

    return [_run("words.pi_roundtrip", roundtrip), _run("words.lyndon_factorization", factorization)]


def suite_ncpoly(cases=100, seed=0):
    rng = random.Random(seed)

    def algebra(op, alphabet, top):
        def go():
            for _ in range(cases):
                p, q, r = (random_poly(rng, alphabet, 3, 3, top) for _ in range(3))
                f = getattr(NCPoly, op)
                if f(p, q) != f(q, p):
                    return False, f"{op} not commutative on {p}, {q}"
                if f(f(p, q), r) != f(p, f(q, r)):
                    return False, f"{op} not associative"
                if f(p, NCPoly.one(alphabet)) != p:
                    return False, f"{op} unit fails"
            return True, f"{cases} random triples"
        return go

    def duality():
        for w in all_words(Alphabet.X, 6):
            for (u, v), m in coproduct_shuffle(w).items():
                lhs = NCPoly.from_word(u).shuffle(NCPoly.from_word(v)).coeff(w)
                if lhs != m:
                    return False, f"<{u} sh {v}|{w}> = {lhs} but coproduct gives {m}"
        return True, "all |w| <= 6"

    def powers():
        for x in (0, 1):
            letter = NCPoly.letter(Alphabet.X, x)
            for n in range(11):
                if letter.shuffle_power(n) != NCPoly.from_word(Word(Alphabet.X, (x,) * n), factorial(n)):
                    return False, f"x{x}^sh{n}"
        return True, "n <= 10"

    def tail():
        for u in all_words(Alphabet.X, 4):
            for n in range(5):
                rhs = NCPoly.zero()
                for m, p in x0_tail_eliminate(u, n).items():
                    rhs = rhs + p.conc(NCPoly.letter(Alphabet.X, 1)).shuffle(
                        NCPoly.from_word(Word(Alphabet.X, (0,) * m)))
                if rhs != NCPoly.from_word(Word(Alphabet.X, u.letters + (1,) + (0,) * n)):
                    return False, f"u={u}, n={n}"
        return True, "|u| <= 4, n <= 4"

    return [
        _run("ncpoly.shuffle_algebra", algebra("shuffle", Alphabet.X, 1)),
        _run("ncpoly.stuffle_algebra", algebra("stuffle", Alphabet.Y0, 3)),
        _run("ncpoly.coproduct_duality", duality),
        _run("ncpoly.letter_shuffle_powers", powers),
        _run("ncpoly.x0_tail_elimination", tail),
    ]


def suite_ratl(n_expr=25, max_len=6, seed=1):
    rng = random.Random(seed)

    def consistency():
        for i in range(n_expr):
            text = random_expr(rng, rng.randint(2, 8))
            rep = ratl.compile_expr(text)
            oracle = ratl.expand_truncated(text, max_len)
            for w in all_words(Alphabet.X, max_len):
                if rep.coeff(w) != oracle.coeff(w):
                    return False, f"{text} at {w}"
        return True, f"{n_expr} expressions, |w| <= {max_len}"

    def kronecker():
        for _ in range(10):
            a, b = random_expr(rng, 4), random_expr(rng, 4)
            ra, rb = ratl.compile_expr(a), ratl.compile_expr(b)
            rs = ratl.rep_shuffle(ra, rb)
            for n in range(7):
                lhs = rs.truncate(n)
                rhs = ra.truncate(n).shuffle(rb.truncate(n)).truncate(n)
                if lhs != rhs:
                    return False, f"{a} # {b} at N={n}"
        return True, "N <= 6"

    def star_powers():
        for a in ("1", "1/2", "-1/3"):
            for i in range(1, 5):
                lhs = ratl.compile_expr(f"({a} x0)*^{i}").truncate(12)
                rhs = ratl.compile_expr(f"({a} x0)* # (1 + {a} x0)^{i - 1}").truncate(12)
                if lhs != rhs:
                    return False, f"a={a}, i={i}"
        return True, "degree 12"

    def binomial():
        return all(ratl.binomial_identity(n, i) for n in range(31) for i in range(1, 31)), "n, i <= 30"

    def tame():
        for _ in range(10):
            rep = ratl.compile_expr(random_expr(rng, 5))
            if not ratl.tame_check(rep, 6):
                return False, "bound violated"
        return True, "|w| <= 6"

    def lazard():
        return ratl.lazard_check(8) and not ratl.lazard_check(2, "(x0* x1)* x1*"), "N = 8"

    return [
        _run("ratl.kleene_schutzenberger", consistency),
        _run("ratl.shuffle_kronecker", kronecker),
        _run("ratl.star_power_identity", star_powers),
        _run("ratl.binomial_identity", binomial),
        _run("ratl.tame_growth", tame),
        _run("ratl.lazard_elimination", lazard),
    ]


SAMPLE_Z = [0.1 + 0.08 * i for i in range(10)]


def suite_starpoly(n_cases=20, seed=2, trunc=2000):
    rng = random.Random(seed)

    def confluence():
        for i in range(n_cases):
            p = starpoly.random_starpoly(rng)
            ref = starpoly.rewrite_mod_J(p)
            for j in range(3):
                if starpoly.rewrite_mod_J(p, rng=random.Random(1000 * i + j)) != ref:
                    return False, f"order dependence on case {i}"
        return True, f"{n_cases} polynomials, 3 random orders each"

    def soundness():
        for _ in range(5):
            p = starpoly.random_starpoly(rng, n_terms=8)
            nf = starpoly.rewrite_mod_J(p)
            for z in SAMPLE_Z:
                a, b = starpoly.li_ext_eval(p, z, trunc), starpoly.li_ext_eval(nf, z, trunc)
                if abs(a - b) > 1e-10 * max(1.0, abs(a)):
                    return False, f"z={z}: {a} vs {b}"
        return True, "10 points"

    def kernel():
        gen = starpoly.kernel_generator()
        if starpoly.rewrite_mod_J(gen):
            return False, "generator does not reduce to 0"
        for _ in range(5):
            j = starpoly.random_J_element(rng, n_terms=5)
            if starpoly.rewrite_mod_J(j):
                return False, "J element has a nonzero normal form"
            if max(abs(starpoly.li_ext_eval(j, z, trunc)) for z in SAMPLE_Z) > 1e-10:
                return False, "Li of a J element is not 0"
        return True, "generator and random multiples"

    def rank():
        # singular behaviour at 0 and 1 keeps the sampled matrix well conditioned
        keys = [((), -3, 0), ((), -2, 0), ((), -1, 0), ((), 1, 0), ((), 0, 1), ((), 0, 2), ((), 0, 3),
                ((0,), 0, 0), ((0, 0), 0, 0), ((1,), 0, 0), ((1, 1), 0, 0), ((0, 1), -1, 0)]
        zs = [0.01, 0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.95, 0.98]
        funcs = [starpoly.li_ext(starpoly.StarPoly({k: 1})) for k in keys]
        mat = np.array([[f.eval(z, max(trunc, 5000)) for f in funcs] for z in zs])
        mat = mat / np.linalg.norm(mat, axis=1, keepdims=True)
        s = np.linalg.svd(mat, compute_uv=False)
        return s[-1] > 1e-8, f"smallest singular value {s[-1]:.3e}"

    return [
        _run("starpoly.confluence", confluence),
        _run("starpoly.soundness", soundness),
        _run("starpoly.kernel", kernel),
        _run("starpoly.basis_rank", rank),
    ]


def operator_identities(f: CFunction) -> list[str]:
    """Names of the operator identities that fail on f (ι-undefined ones are skipped)."""
    failures = []
    d = f.deriv()
    if f.theta0() + f.theta1() != d:
        failures.append("theta0+theta1")
    if f.theta0().theta1() - f.theta1().theta0() != d:
        failures.append("[theta1,theta0]")
    try:
        if f.iota0().theta0() != f:
            failures.append("theta0 iota0")
    except DivergentConstantError:
        pass
    try:
        g = f.iota1()
        if g.theta1() != f:
            failures.append("theta1 iota1")
        if g.theta0() != f.times_monomial(1, 1):
            failures.append("theta0 iota1 = z/(1-z)")
    except DivergentConstantError:
        pass
    try:
        h = f.iota0().theta1()
        if h.iota1().theta0() != f:
            failures.append("(theta0 iota1)(theta1 iota0)")
        k = f.iota1().theta0()
        if k.iota0().theta1() != f:
            failures.append("(theta1 iota0)(theta0 iota1)")
    except DivergentConstantError:
        pass
    return failures


def suite_lifun(n_cases=50, seed=3, trunc=2000):
    rng = random.Random(seed)

    def operators():
        for i in range(n_cases):
            f = random_cfunction(rng)
            bad = operator_identities(f)
            if bad:
                return False, f"case {i}: {', '.join(bad)}"
        return True, f"{n_cases} random functions"

    def morphism():
        words = [w for w in all_words(Alphabet.X, 3)]
        worst = 0.0
        for u in words:
            for v in words:
                fu, fv = lifun.from_word(u), lifun.from_word(v)
                lhs = fu.mul(fv).eval(0.5, trunc)
                rhs = fu.eval(0.5, trunc) * fv.eval(0.5, trunc)
                err = abs(lhs - rhs) / max(1e-300, abs(rhs)) if rhs else abs(lhs)
                worst = max(worst, err)
        return worst < 1e-8, f"max relative error {worst:.2e}"

    return [_run("lifun.operators", operators), _run("lifun.li_morphism", morphism)]


def suite_neglog(max_deg=10, n_max=50):
    words = [w for r in range(0, max_deg + 1) for w in product(range(5), repeat=r)
             if sum(w) + len(w) <= max_deg]

    def oracle():
        for w in words:
            a = neglog.a_coeffs(w)
            if a != neglog.a_coeffs_oracle(w):
                return False, f"{w}"
            if not all(isinstance(x, int) for x in a):
                return False, f"non-integer entry for {w}"
            if w and sum(a) != 0:
                return False, f"sum rule fails for {w}"
        return True, f"{len(words)} words"

    def sums():
        for w in words:
            if len(w) > 3:
                continue
            for n in range(0, n_max + 1, 7):
                if neglog.neg_hsum(w, n) != neglog.neg_hsum_oracle(w, n):
                    return False, f"{w}, N={n}"
        return True, "depth <= 3"

    def faulhaber():
        bad = []
        for w in words:
            try:
                neglog.faulhaber_reduce(w)
            except neglog.FaulhaberBoundError:
                bad.append(w)
        return not bad, f"{len(bad)} of {len(words)} words exceed the term bound" if bad else "all within bound"

    return [
        _run("neglog.a_vector_oracle", oracle),
        _run("neglog.harmonic_sums", sums),
        _run("neglog.faulhaber_bound", faulhaber),
    ]


def check_newton_girard(N=20, kmax=8):
    def go():
        return all(polyzeta.newton_girard_check(n, k) for n in range(N + 1) for k in range(1, kmax + 1)), f"N <= {N}, kmax <= {kmax}"
    return [_run("polyzeta.newton_girard", go)]


def check_gamma_star(ts=(Fraction(1, 2), Fraction(-1, 4), Fraction(1, 3)), tol=1e-8):
    out = []
    for t in ts:
        r = polyzeta.gamma_star_check(t)
        out.append(CheckResult(f"polyzeta.gamma_star[t={t}]", r < tol, f"residual {r:.3e}"))
    return out


def suite_polyzeta():
    def zeros():
        want = {1: Fraction(0), 2: Fraction(-1, 2), 3: Fraction(2, 3)}
        return all(polyzeta.gamma_neg([0] * r) == v for r, v in want.items()), "r = 1, 2, 3"

    def two_routes():
        for w in product(range(4), repeat=2):
            s = [-x for x in w]
            if polyzeta.gamma_neg(s) != polyzeta.gamma_neg_oracle(s):
                return False, f"{s}"
        return True, "depth 2, entries >= -3"

    return [_run("polyzeta.gamma_zero_strings", zeros), _run("polyzeta.gamma_two_routes", two_routes)] + \
        check_newton_girard(10, 6) + check_gamma_star()


SUITES = {
    "words": suite_words,
    "ncpoly": suite_ncpoly,
    "ratl": suite_ratl,
    "starpoly": suite_starpoly,
    "lifun": suite_lifun,
    "neglog": suite_neglog,
    "polyzeta": suite_polyzeta,
}


def run_all() -> list[CheckResult]:
    results = []
    for name in SUITES:
        results.extend(SUITES[name]())
    return results


__all__ = ["CheckResult", "SUITES", "run_all", "check_newton_girard", "check_gamma_star",
           "random_poly", "random_expr", "random_cfunction", "operator_identities"]
