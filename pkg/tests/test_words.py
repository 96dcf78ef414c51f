from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polystar.ncpoly import NCPoly
from polystar.words import (
    Alphabet,
    Word,
    X,
    Y,
    is_lyndon,
    lyndon_factorization,
    lyndon_words,
    parse_word,
    pi_X,
    pi_Y,
    pi_Y_word,
)

x_words = st.lists(st.integers(0, 1), max_size=10).map(lambda l: Word(Alphabet.X, tuple(l)))


def test_parse_and_print():
    assert parse_word("x0 x1 x1") == X(0, 1, 1)
    assert parse_word("x0x1") == X(0, 1)
    assert parse_word("y2 y0") == Y(2, 0)
    assert parse_word("1") == Word(Alphabet.X, ())
    assert str(X(0, 1)) == "x0 x1"
    assert str(X()) == "1"


def test_parse_rejects_mixed_alphabets():
    with pytest.raises(ValueError):
        parse_word("x0 y1")


def test_weight_and_order():
    assert Y(2, 0, 3).weight == 5
    assert X(0) < X(0, 1) < X(1)


@pytest.mark.parametrize(
    "y, x",
    [(Y(1), X(1)), (Y(2, 1), X(0, 1, 1)), (Y(), X())],
)
def test_pi_X(y, x):
    assert pi_X(y) == x


def test_pi_X_rejects_y0():
    with pytest.raises(ValueError, match="pi_X undefined on y_0"):
        pi_X(Y(1, 0))


def test_pi_Y():
    assert pi_Y(X(0, 1)) == NCPoly.from_word(Y(2))
    assert pi_Y(X(1, 0)) == NCPoly.zero(Alphabet.Y0)
    assert pi_Y(X()) == NCPoly.one(Alphabet.Y0)
    assert pi_Y_word(X(1, 0)) is None


@given(st.lists(st.integers(1, 5), max_size=6))
def test_pi_roundtrip_on_Y(s):
    w = Word(Alphabet.Y0, tuple(s))
    assert pi_Y_word(pi_X(w)) == w


def test_lyndon_examples():
    assert lyndon_words(Alphabet.X, 1) == [X(0), X(1)]
    assert lyndon_words(Alphabet.X, 3) == [X(0), X(0, 0, 1), X(0, 1), X(0, 1, 1), X(1)]
    assert not is_lyndon(X(1, 0))


def _brute_lyndon(w):
    return len(w) > 0 and all(w.letters < w.letters[i:] for i in range(1, len(w)))


def test_lyndon_words_match_definition():
    for n in range(1, 9):
        brute = sorted(
            Word(Alphabet.X, t) for m in range(1, n + 1) for t in product((0, 1), repeat=m)
            if _brute_lyndon(Word(Alphabet.X, t))
        )
        assert lyndon_words(Alphabet.X, n) == brute


def test_lyndon_counts_three_letters():
    # necklace numbers for 3 letters: 3, 3, 8, 18, 48
    words = lyndon_words(Alphabet.Y0, 5, size=3)
    counts = [sum(1 for w in words if len(w) == n) for n in range(1, 6)]
    assert counts == [3, 3, 8, 18, 48]


@given(x_words)
def test_factorization(w):
    fs = lyndon_factorization(w)
    assert sum((f.letters for f in fs), ()) == w.letters
    assert all(is_lyndon(f) for f in fs)
    assert all(fs[i] >= fs[i + 1] for i in range(len(fs) - 1))
