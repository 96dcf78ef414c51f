import math
import random
from fractions import Fraction
from itertools import product

import pytest

from polystar.checks import operator_identities, random_cfunction
from polystar.lifun import (
    ONE,
    BasisElem,
    CFunction,
    DivergentConstantError,
    Ppow,
    Zpow,
    from_word,
    ind,
    normalize_coeff,
)
from polystar.mzv import ZetaConst

zeta = ZetaConst.zeta
from polystar.words import X

B = BasisElem
LN2 = math.log(2)
ZETA2 = math.pi**2 / 6


@pytest.mark.parametrize(
    "a, b, want",
    [
        (1, 1, {Ppow(1): 1, Zpow(0): -1}),
        (-1, 1, {Zpow(-1): 1, Ppow(1): 1}),
        (2, 1, {Ppow(1): 1, Zpow(0): -1, Zpow(1): -1}),
        (3, 0, {Zpow(3): 1}),
    ],
)
def test_normalize_coeff(a, b, want):
    assert normalize_coeff(a, b) == want


@pytest.mark.parametrize("a", range(-3, 4))
@pytest.mark.parametrize("b", range(0, 4))
def test_normalize_coeff_numerically(a, b):
    z = 0.37
    got = sum(float(c) * (z**m.k if m.kind == "z" else (1 - z) ** (-m.k)) for m, c in normalize_coeff(a, b).items())
    assert got == pytest.approx(z**a * (1 - z) ** (-b), rel=1e-12)


def test_from_word_examples():
    assert from_word(X(0)).terms == {B(ONE, (), 1): 1}
    assert from_word(X(1)).terms == {B(ONE, (1,), 0): 1}
    assert from_word(X(1, 0)).terms == {B(ONE, (1,), 1): 1, B(ONE, (0, 1), 0): -1}


def test_eval_known_values():
    assert from_word(X(1)).eval(0.5) == pytest.approx(LN2, rel=1e-14)
    assert from_word(X(0, 1)).eval(0.5) == pytest.approx(ZETA2 / 2 - LN2**2 / 2, rel=1e-13)
    assert from_word(X(0, 0)).eval(0.5) == pytest.approx(LN2**2 / 2, rel=1e-14)


def test_eval_domain_errors():
    with pytest.raises(ValueError):
        from_word(X(1)).eval(1.0)
    with pytest.raises(ValueError):
        CFunction.monomial(-1).eval(0)
    with pytest.raises(ValueError):
        CFunction.monomial(0, 1).eval(1)


@pytest.mark.parametrize(
    "b, value",
    [(B(ONE, (1,), 0), 1), (B(ONE, (), 1), 0), (B(Zpow(2), (0, 1), 0), 4), (B(Ppow(2), (), 0), 0)],
)
def test_ind(b, value):
    assert ind(b) == value


@pytest.mark.parametrize("u", [X(*t) for n in range(4) for t in product((0, 1), repeat=n)])
def test_li_morphism(u):
    for v in (X(), X(1), X(0, 1), X(1, 0, 1)):
        fu, fv = from_word(u), from_word(v)
        assert fu.mul(fv).eval(0.5) == pytest.approx(fu.eval(0.5) * fv.eval(0.5), rel=1e-8, abs=1e-300)


def test_theta_on_words():
    # θ0 Li_{x0 w} = Li_w and θ1 Li_{x1 w} = Li_w
    w = from_word(X(0, 1))
    assert from_word(X(0, 0, 1)).theta0() == w
    assert from_word(X(1, 0, 1)).theta1() == w
    assert from_word(X(1)).theta0() == CFunction.monomial(1, 1)


def test_iota_on_words():
    assert from_word(X(0, 1)).iota0() == from_word(X(0, 0, 1))
    assert from_word(X(0, 1)).iota1() == from_word(X(1, 0, 1))


def test_iota0_uses_basepoint_one_when_ind_nonpositive():
    assert CFunction.constant(1).iota0() == from_word(X(0))
    # ∫_1^z s^-4 ds
    assert CFunction.monomial(-3).iota0() == CFunction.monomial(-3).scale(Fraction(-1, 3)) + CFunction.constant(Fraction(1, 3))


def test_iota0_constant_can_be_a_zeta_value():
    f = CFunction.basis(Zpow(-2), (0, 1), 0)
    g = f.iota0()
    assert g.theta0() == f
    assert g.limit(1) == 0
    assert g.terms[B(ONE, (), 0)] == zeta(2) * Fraction(1, 2) + Fraction(1, 4)


def test_iota_divergent_constant():
    with pytest.raises(DivergentConstantError):
        CFunction.basis(Zpow(-1), (0, 1), 0).iota0()
    with pytest.raises(DivergentConstantError):
        CFunction.basis(Ppow(2), (), 1).iota0()
    # ind 0 sends (1-z)^-1 to basepoint 1, where its primitive -log(1-z) blows up
    with pytest.raises(DivergentConstantError, match="divergent integration constant"):
        CFunction.monomial(0, 1).iota0()


def test_limits():
    assert from_word(X(0, 1)).limit(1) == zeta(2)
    assert from_word(X(1)).limit(0) == 0
    assert float(from_word(X(0, 0, 1)).limit(1)) == pytest.approx(1.2020569031595942, rel=1e-12)
    with pytest.raises(DivergentConstantError):
        from_word(X(1)).limit(1)


def test_operator_identities_on_random_functions():
    rng = random.Random(11)
    with_iota0 = with_iota1 = 0
    for _ in range(80):
        f = random_cfunction(rng)
        assert operator_identities(f) == []
        try:
            f.iota0()
            with_iota0 += 1
        except DivergentConstantError:
            pass
        try:
            f.iota1()
            with_iota1 += 1
        except DivergentConstantError:
            pass
    assert with_iota0 >= 20 and with_iota1 >= 20


def test_theta0_iota1_is_multiplication():
    f = from_word(X(0, 1)) + CFunction.monomial(2)
    assert f.iota1().theta0() == f.mul(CFunction.monomial(1, 1))


def test_json_dump():
    data = CFunction.basis(Ppow(2), (0, 1), 1, ).scale(Fraction(-3, 2)).to_json()
    assert data == [{"coeff_basis": "(1-z)^-2", "u": ["x0", "x1"], "log_pow": 1, "coef": "-3/2"}]


def test_zeta_coefficients_survive_arithmetic():
    f = CFunction.constant(zeta(2)) + CFunction.constant(1)
    assert f.eval(0.5) == pytest.approx(ZETA2 + 1, rel=1e-14)
    assert isinstance(f.terms[B(ONE, (), 0)], ZetaConst)
