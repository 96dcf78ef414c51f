import math
import random
from fractions import Fraction

import pytest

from polystar.domain import ConstructiveSeries, li_x0_series, li_x1_series
from polystar.ncpoly import NCPoly, parse_poly
from polystar.ratl import compile_expr
from polystar.words import Alphabet, Word

Z = 0.5


def closed_form(a, i, z=Z):
    return z**a * sum(math.comb(i - 1, k) * (a * math.log(z)) ** k / math.factorial(k) for k in range(i))


@pytest.mark.parametrize("a", [Fraction(1, 3), Fraction(1, 2)])
@pytest.mark.parametrize("i", [1, 2, 3])
def test_star_power_closed_form(a, i):
    rep = compile_expr(f"({a} x0)*^{i}")
    assert li_x0_series(rep, Z) == pytest.approx(closed_form(float(a), i), rel=1e-8)


def test_x1_series():
    # Li of (a x1)* is (1-z)^-a
    rep = compile_expr("(1/2 x1)*")
    assert li_x1_series(rep, 0.3) == pytest.approx(0.7**-0.5, rel=1e-12)


def test_one_letter_check():
    with pytest.raises(ValueError):
        ConstructiveSeries.from_text(NCPoly.one(), "x1*", "x1*")


def test_coeff_of_triple():
    s = ConstructiveSeries.from_text(parse_poly("x1"), "x0*", "1")
    assert s.coeff(Word(Alphabet.X, (1, 0))) == 1
    assert s.coeff(Word(Alphabet.X, (0, 1))) == 1


@pytest.mark.parametrize("seed", range(5))
def test_shuffle_morphism(seed):
    rng = random.Random(seed)

    def rand_series():
        w = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 2))) + (1,)
        a, b = Fraction(rng.randint(-2, 2), 3), Fraction(rng.randint(-2, 2), 3)
        return ConstructiveSeries.from_text(NCPoly.from_word(Word(Alphabet.X, w)), f"({a} x0)*", f"({b} x1)*")

    s, t = rand_series(), rand_series()
    lhs = s.shuffle(t).li_eval(Z)
    assert lhs == pytest.approx(s.li_eval(Z) * t.li_eval(Z), rel=1e-8)
