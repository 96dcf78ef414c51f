import math
from itertools import product

import pytest

from polystar.mzv import EULER_GAMMA, PI, ZetaConst, regularize_x1, zeta_reg, zeta_value
from polystar.ncpoly import NCPoly
from polystar.words import Alphabet, Word, X

zeta = ZetaConst.zeta


@pytest.mark.parametrize(
    "w, value",
    [
        ((0, 1), math.pi**2 / 6),
        ((0, 0, 1), 1.2020569031595942),
        ((0, 1, 1), 1.2020569031595942),  # ζ(2,1) = ζ(3)
        ((0, 0, 0, 1), math.pi**4 / 90),
    ],
)
def test_numeric_values(w, value):
    assert zeta_value(w) == pytest.approx(value, rel=1e-13)


def test_shuffle_product_of_constants():
    assert float(zeta(2) * zeta(2)) == pytest.approx((math.pi**2 / 6) ** 2, rel=1e-13)
    # ζ(2)^2 = 2ζ(2,2) + 4ζ(3,1) under the shuffle
    assert zeta(2) * zeta(2) == zeta(2, 2) * 2 + zeta(3, 1) * 4


def test_constants_are_exact_strings():
    assert float(EULER_GAMMA) == pytest.approx(0.5772156649015329, rel=1e-15)
    assert float(PI) == math.pi


def test_divergent_word_rejected():
    with pytest.raises(ValueError):
        ZetaConst({(1,): 1})


@pytest.mark.parametrize("w", [t for n in range(6) for t in product((0, 1), repeat=n)])
def test_regularization_rebuilds_word(w):
    parts = regularize_x1(w)
    total = NCPoly.zero()
    for j, p in parts.items():
        total = total + p.shuffle(NCPoly.from_word(Word(Alphabet.X, (1,) * j)))
    assert total == NCPoly.from_word(Word(Alphabet.X, w))
    for p in parts.values():
        assert all(not u.letters or u.letters[0] != 1 for u, _ in p.items())


def test_regularized_value_of_x1():
    assert zeta_reg(X(1)) == 0
    # x1 x0 x1 = x1 sh x0 x1 - 2 x0 x1 x1
    assert zeta_reg(X(1, 0, 1)) == zeta(2, 1) * -2
