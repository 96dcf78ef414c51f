"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from itertools import product
from math import comb, factorial, log

import pytest

from polystar import neglog, polyzeta, ratl, starpoly
from polystar.checks import operator_identities, random_cfunction, random_expr
from polystar.domain import ConstructiveSeries, li_x0_series
from polystar.lifun import CFunction, DivergentConstantError
from polystar.ncpoly import NCPoly
from polystar.words import Alphabet, Word


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail, elapsed, limit):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {n:>2}] {status}  {detail}  ({elapsed:.2f}s, limit {limit}s)")
        assert ok, detail
        assert elapsed < limit, f"took {elapsed:.2f}s"

    return emit


def x_words(max_len):
    return [Word(Alphabet.X, t) for n in range(max_len + 1) for t in product((0, 1), repeat=n)]


def test_criterion_01_a_vectors_of_yk_y0(report):
    rows = {
        0: [1, -2, 1],
        1: [0, 2, -4, 2],
        2: [0, -2, 10, -14, 6],
        3: [0, 2, -22, 62, -66, 24],
        4: [0, -2, 46, -230, 450, -384, 120],
    }
    t = time.perf_counter()
    bad = [k for k, row in rows.items() if neglog.a_coeffs((k, 0)) != row]
    report(1, not bad, f"rows k=0..4 exact; mismatching rows: {bad}", time.perf_counter() - t, 1)


# compact binomial forms as (coefficient, n, m) for C(N+n, m)
EXPECTED_COMPACT_FORMS = {
    (0,): [(1, 0, 1)],
    (1,): [(1, 1, 2)],
    (2,): [(2, 2, 3), (-1, 1, 1)],
    (3,): [(6, 2, 4), (1, 1, 2)],
    (0, 0): [(1, 0, 2)],
    (1, 0): [(2, 1, 3)],
    (2, 0): [(6, 2, 4), (2, 1, 2)],
}


def test_criterion_02_harmonic_sum_closed_forms(report):
    t = time.perf_counter()
    failures = []
    for w, form in EXPECTED_COMPACT_FORMS.items():
        poly = neglog.neg_hsum_poly(w)
        symbolic = poly == neglog.combination_poly(form)
        numeric = all(
            neglog.neg_hsum_oracle(w, N) == sum(c * comb(N + n, m) for c, n, m in form) == neglog.neg_hsum(w, N)
            for N in range(51)
        )
        if not (symbolic and numeric):
            first = next(
                (N for N in range(51) if neglog.neg_hsum_oracle(w, N) != sum(c * comb(N + n, m) for c, n, m in form)),
                None,
            )
            failures.append(f"{Word(Alphabet.Y0, w)} (first wrong N={first})")
    detail = "7 compact forms vs expansion and nested sums, N=0..50"
    if failures:
        detail += "; mismatches: " + ", ".join(failures)
    report(2, not failures, detail, time.perf_counter() - t, 1)


GAMMA_TABLE = [
    ((0,), Fraction(0)),
    ((-1,), Fraction(-1, 2)),
    ((-2,), Fraction(-1, 6)),
    ((-3,), Fraction(3, 4)),
    ((-4,), Fraction(-7, 15)),
    ((0, 0), Fraction(-1, 2)),
    ((0, -1), Fraction(-5, 6)),
    ((-2, 0), Fraction(11, 12)),
    ((0, -2), Fraction(1, 4)),
    ((-1, -1), Fraction(11, 24)),
    ((0, 0, 0), Fraction(2, 3)),
    ((0, -1, 0), Fraction(1, 12)),
    ((0, -2, 0), Fraction(-47, 60)),
    ((-4, -4, -6), Fraction(-47315637837661, 137837700)),
]


def test_criterion_03_gamma_table(report):
    t = time.perf_counter()
    bad = []
    for s, want in GAMMA_TABLE:
        got = polyzeta.gamma_neg(s)
        if got != want:
            bad.append(f"{s}: got {got}, expected {want}")
    detail = f"{len(GAMMA_TABLE) - len(bad)}/{len(GAMMA_TABLE)} values exact"
    if bad:
        detail += "; " + "; ".join(bad)
    report(3, not bad, detail, time.perf_counter() - t, 5)


def test_criterion_04_kernel_of_li(report):
    t = time.perf_counter()
    rng = random.Random(2024)
    zs = [0.1 + 0.8 * (i + 0.5) / 10 for i in range(10)]
    ok = starpoly.rewrite_mod_J(starpoly.kernel_generator()) == starpoly.StarPoly()
    worst = 0.0
    for _ in range(20):
        j = starpoly.random_J_element(rng)
        worst = max(worst, max(abs(starpoly.li_ext_eval(j, z, 2000)) for z in zs))
    ok = ok and worst < 1e-10
    report(4, ok, f"generator reduces to 0; max |Li| over 20 elements x 10 points = {worst:.2e}",
           time.perf_counter() - t, 30)


def test_criterion_05_shuffle_morphism(report):
    t = time.perf_counter()
    z = 0.5
    worst = 0.0
    words = x_words(3)
    funcs = {w: CFunction.from_word(w) for w in words}
    vals = {w: f.eval(z, 2000) for w, f in funcs.items()}
    for u in words:
        for v in words:
            prod = CFunction.from_poly(NCPoly.from_word(u).shuffle(NCPoly.from_word(v))).eval(z, 2000)
            worst = max(worst, abs(prod - vals[u] * vals[v]) / abs(vals[u] * vals[v]))
    rng = random.Random(5)

    def series():
        w = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 2))) + (1,)
        p = NCPoly.from_word(Word(Alphabet.X, w), Fraction(rng.randint(1, 4), rng.randint(1, 3)))
        a, b = Fraction(rng.randint(-3, 3), 4), Fraction(rng.randint(-3, 3), 4)
        return ConstructiveSeries.from_text(p, f"({a} x0)*", f"({b} x1)*")

    for _ in range(5):
        s, s2 = series(), series()
        lhs, rhs = s.shuffle(s2).li_eval(z, 2000), s.li_eval(z, 2000) * s2.li_eval(z, 2000)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    report(5, worst < 1e-8, f"{len(words) ** 2} word pairs + 5 series pairs, max rel err {worst:.2e}",
           time.perf_counter() - t, 60)


def test_criterion_06_star_power_closed_form(report):
    t = time.perf_counter()
    z = 0.5
    worst = 0.0
    for a in (Fraction(1, 3), Fraction(1, 2)):
        for i in (1, 2, 3):
            rep = ratl.compile_expr(f"({a} x0)*^{i}")
            got = li_x0_series(rep, z, degree=60)
            af = float(a)
            want = z**af * sum(comb(i - 1, k) * (af * log(z)) ** k / factorial(k) for k in range(i))
            worst = max(worst, abs(got - want) / abs(want))
    binom_ok = all(ratl.binomial_identity(n, i) for n in range(31) for i in range(1, 31))
    report(6, worst < 1e-8 and binom_ok, f"max rel err {worst:.2e}; binomial identity n,i<=30: {binom_ok}",
           time.perf_counter() - t, 10)


def test_criterion_07_representation_consistency(report):
    t = time.perf_counter()
    rng = random.Random(7)
    words = x_words(6)
    bad = []
    for _ in range(25):
        text = random_expr(rng, rng.randint(2, 8))
        rep = ratl.compile_expr(text)
        oracle = ratl.expand_truncated(text, 6)
        if any(rep.coeff(w) != oracle.coeff(w) for w in words):
            bad.append(text)
    lazard = ratl.lazard_check(8)
    report(7, not bad and lazard, f"25 expressions x {len(words)} words, mismatches {len(bad)}; lazard N=8: {lazard}",
           time.perf_counter() - t, 30)


def test_criterion_08_operator_suite(report):
    t = time.perf_counter()
    rng = random.Random(8)
    counts = {"theta": 0, "iota0": 0, "iota1": 0, "mixed": 0}
    failures = []
    tries = 0
    while min(counts.values()) < 50 and tries < 5000:
        tries += 1
        f = random_cfunction(rng)
        failures += operator_identities(f)
        counts["theta"] += 1
        try:
            f.iota0()
            counts["iota0"] += 1
        except DivergentConstantError:
            pass
        try:
            f.iota1()
            counts["iota1"] += 1
        except DivergentConstantError:
            pass
        try:
            f.iota0().theta1().iota1()
            f.iota1().theta0().iota0()
            counts["mixed"] += 1
        except DivergentConstantError:
            pass
    ok = not failures and min(counts.values()) >= 50
    report(8, ok, f"exact checks per identity {counts} over {tries} functions; failures {failures[:3]}",
           time.perf_counter() - t, 10)


def test_criterion_09_star_exponential_law(report):
    t = time.perf_counter()
    ok = ratl.truncate("x0* # (-x0)*", 12) == NCPoly.one()
    for x in (0, 1):
        letter = NCPoly.letter(Alphabet.X, x)
        ok = ok and all(
            letter.shuffle_power(n) == NCPoly.from_word(Word(Alphabet.X, (x,) * n), factorial(n)) for n in range(11)
        )
    report(9, ok, "x0* # (-x0)* = 1 to degree 12; x^#n = n! x^n for n<=10", time.perf_counter() - t, 1)


def test_criterion_10_generating_series(report):
    t = time.perf_counter()
    ng = all(polyzeta.newton_girard_check(N, k) for N in range(21) for k in range(1, 9))
    res = {str(s): polyzeta.gamma_star_check(s) for s in (Fraction(1, 2), Fraction(-1, 4), Fraction(1, 3))}
    ok = ng and max(res.values()) < 1e-8
    detail = f"newton-girard N<=20, kmax<=8: {ng}; gamma residuals " + ", ".join(f"t={k}: {v:.1e}" for k, v in res.items())
    report(10, ok, detail, time.perf_counter() - t, 30)
