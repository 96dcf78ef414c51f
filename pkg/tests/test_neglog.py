from fractions import Fraction
from itertools import product
from math import comb

import pytest

from polystar import neglog
from polystar.neglog import (
    FaulhaberBoundError,
    a_coeffs,
    a_coeffs_oracle,
    combination_poly,
    faulhaber_reduce,
    neg_hsum,
    neg_hsum_oracle,
    neg_hsum_poly,
    neg_li_numeric,
    neg_li_poly,
    poly_eval,
)
from polystar.starpoly import StarPoly, li_ext

WORDS = [w for r in range(11) for w in product(range(5), repeat=r) if sum(w) + len(w) <= 10]


@pytest.mark.parametrize(
    "w, a",
    [
        ("y0 y0", [1, -2, 1]),
        ("y2 y0", [0, -2, 10, -14, 6]),
        ("y4 y0", [0, -2, 46, -230, 450, -384, 120]),
        ("y1", [0, -1, 1]),
        ("y0", [-1, 1]),
        ("y1 y0", [0, 2, -4, 2]),
        ("1", [1]),
    ],
)
def test_a_vector_examples(w, a):
    assert a_coeffs(w) == a
    assert a_coeffs_oracle(w) == a


def test_a_vector_matches_oracle_everywhere():
    for w in WORDS:
        a = a_coeffs(w)
        assert a == a_coeffs_oracle(w), w
        assert len(a) == neglog.degree_bound(w) + 1
        assert all(isinstance(x, int) for x in a)
        if w:
            assert sum(a) == 0, w


@pytest.mark.parametrize("w", ["y0", "y1", "y2 y0", "y1 y1", "y3 y0 y1"])
@pytest.mark.parametrize("z", [0.1, 0.35, 0.6])
def test_negative_polylog_numerically(w, z):
    closed = sum(c * (1 - z) ** (-k) for k, c in enumerate(a_coeffs(w)))
    assert closed == pytest.approx(neg_li_numeric(w, z, 800), rel=1e-9)


def test_star_polynomial():
    assert neg_li_poly("1") == StarPoly.term()
    assert neg_li_poly("y0") == StarPoly.term(l=1) - StarPoly.term()
    f = li_ext(neg_li_poly("y2 y0"))
    assert f.eval(0.3) == pytest.approx(neg_li_numeric("y2 y0", 0.3, 800), rel=1e-9)


@pytest.mark.parametrize(
    "w, N, value",
    [("y1", 5, 15), ("y0", 4, 4), ("y1 y0", 3, 8), ("y0 y0", 5, 10)],
)
def test_hsum_examples(w, N, value):
    assert neg_hsum(w, N) == value
    assert neg_hsum_oracle(w, N) == value


def test_hsum_matches_oracle():
    for w in WORDS:
        if len(w) > 3:
            continue
        for N in (0, 1, 2, 7, 20, 50):
            assert neg_hsum(w, N) == neg_hsum_oracle(w, N), (w, N)


def test_hsum_polynomial_form():
    p = neg_hsum_poly("y1")
    assert p == [0, Fraction(1, 2), Fraction(1, 2)]
    assert all(poly_eval(p, N) == comb(N + 1, 2) for N in range(30))


@pytest.mark.parametrize(
    "w, terms",
    [
        ("y0", [(1, 0, 1)]),
        ("y1", [(1, 1, 2)]),
        ("y2", [(2, 2, 3), (-1, 1, 2)]),
        ("y3", [(6, 2, 4), (1, 1, 2)]),
        ("y0 y0", [(1, 0, 2)]),
        ("y1 y0", [(2, 1, 3)]),
        ("y2 y0", [(6, 2, 4), (-2, 1, 3)]),
    ],
)
def test_faulhaber_reductions(w, terms):
    got = faulhaber_reduce(w)
    assert got == [(Fraction(c), n, m) for c, n, m in terms]
    assert combination_poly(got) == neg_hsum_poly(w)


def test_faulhaber_y2_compact_form_uses_order_two():
    # Σ n^2 = 2 C(N+2,3) - C(N+1,2); the variant with C(N+1,1) is off from N = 1 on
    for N in range(30):
        assert neg_hsum("y2", N) == 2 * comb(N + 2, 3) - comb(N + 1, 2)
    assert neg_hsum("y2", 1) != 2 * comb(3, 3) - comb(2, 1)


def test_faulhaber_outputs_expand_exactly():
    for w in WORDS:
        try:
            got = faulhaber_reduce(w)
        except FaulhaberBoundError as exc:
            got = exc.terms
        assert combination_poly(got) == neg_hsum_poly(w), w
        assert all(n >= 0 and m >= 0 for _, n, m in got)


def test_faulhaber_bound_violation_is_flagged():
    with pytest.raises(FaulhaberBoundError) as info:
        faulhaber_reduce("y4")
    # a 4-term reduction exists; the bound for weight 4, length 1 allows 3
    assert len(info.value.terms) == 4
    assert combination_poly(info.value.terms) == neg_hsum_poly("y4")
