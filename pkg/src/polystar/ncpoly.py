"""Sparse noncommutative polynomials over X or Y0 with exact rational coefficients.

Terms are stored as ``tuple-of-letter-indices -> Fraction``.  Products that can
blow up (shuffle, stuffle) are guarded by a global term budget, see
:func:`term_budget`.
"""

from __future__ import annotations

import contextlib
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from polystar import kernels
from polystar.words import Alphabet, Word, parse_word

DEFAULT_TERM_BUDGET = 10**6
_budget = DEFAULT_TERM_BUDGET


class TermBudgetExceeded(ValueError):
    """Raised when a product would hold more terms than the configured budget."""


def get_term_budget() -> int:
    return _budget


def set_term_budget(n: int) -> None:
    global _budget
    if n < 1:
        raise ValueError("term budget must be positive")
    _budget = int(n)


@contextlib.contextmanager
def term_budget(n: int):
    """Temporarily change the term budget."""
    old = _budget
    set_term_budget(n)
    try:
        yield
    finally:
        set_term_budget(old)


def check_budget(size: int, what: str = "result") -> None:
    if size > _budget:
        raise TermBudgetExceeded(f"{what} exceeds the term budget ({size} > {_budget} terms)")


def _q(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    if isinstance(c, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(c)


# word-level kernels, cached on tuples


@lru_cache(maxsize=1 << 16)
def shuffle_words(a: tuple, b: tuple) -> dict:
    """Shuffle of two letter tuples as ``{tuple: int}`` (do not mutate the result)."""
    if a > b:
        a, b = b, a
    return kernels.shuffle_counts(a, b)


@lru_cache(maxsize=1 << 16)
def stuffle_words(a: tuple, b: tuple) -> dict:
    """Quasi-shuffle of two Y0 letter tuples, by the first-letter recursion."""
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out: dict = {}
    i, j = a[0], b[0]
    for parts, head in (
        (stuffle_words(a[1:], b), i),
        (stuffle_words(a, b[1:]), j),
        (stuffle_words(a[1:], b[1:]), i + j),
    ):
        for w, c in parts.items():
            key = (head,) + w
            out[key] = out.get(key, 0) + c
    return out


class NCPoly:
    """Finite linear combination of words over one alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            for w, c in terms.items():
                if isinstance(w, Word):
                    if w.alphabet is not alphabet:
                        raise ValueError("alphabet mismatch")
                    w = w.letters
                w = tuple(w)
                c = _q(c)
                if c:
                    clean[w] = clean.get(w, 0) + c
                    if not clean[w]:
                        del clean[w]
        if alphabet is Alphabet.X and any(x > 1 for w in clean for x in w):
            raise ValueError("letters of X are x0 and x1")
        self.terms: dict[tuple, Fraction] = clean

    # construction

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict) -> NCPoly:
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p.terms = {w: c for w, c in terms.items() if c}
        return p

    @classmethod
    def zero(cls, alphabet: Alphabet = Alphabet.X) -> NCPoly:
        return cls._raw(alphabet, {})

    @classmethod
    def one(cls, alphabet: Alphabet = Alphabet.X) -> NCPoly:
        return cls._raw(alphabet, {(): Fraction(1)})

    @classmethod
    def from_word(cls, w: Word, coef=1) -> NCPoly:
        return cls._raw(w.alphabet, {w.letters: _q(coef)})

    @classmethod
    def letter(cls, alphabet: Alphabet, i: int) -> NCPoly:
        return cls.from_word(Word(alphabet, (i,)))

    @classmethod
    def scalar(cls, c, alphabet: Alphabet = Alphabet.X) -> NCPoly:
        return cls._raw(alphabet, {(): _q(c)})

    # inspection

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            if not self.terms and not other.terms:
                return True
            return self.alphabet is other.alphabet and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def coeff(self, w) -> Fraction:
        if isinstance(w, Word):
            w = w.letters
        return self.terms.get(tuple(w), Fraction(0))

    def words(self) -> list[Word]:
        return [Word(self.alphabet, w) for w in sorted(self.terms, key=_word_key)]

    def items(self):
        """(Word, coefficient) pairs in graded lexicographic order."""
        return [(Word(self.alphabet, w), self.terms[w]) for w in sorted(self.terms, key=_word_key)]

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def hom_component(self, n: int) -> NCPoly:
        return NCPoly._raw(self.alphabet, {w: c for w, c in self.terms.items() if len(w) == n})

    def truncate(self, n: int) -> NCPoly:
        return NCPoly._raw(self.alphabet, {w: c for w, c in self.terms.items() if len(w) <= n})

    # linear structure

    def _same(self, other: NCPoly):
        if self.terms and other.terms and self.alphabet is not other.alphabet:
            raise ValueError(
                f"alphabet mismatch: {self.alphabet.name} vs {other.alphabet.name}"
            )
        return self.alphabet if self.terms else other.alphabet

    def _coerce(self, other) -> NCPoly:
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (int, Fraction, str)):
            return NCPoly.scalar(other, self.alphabet)
        if isinstance(other, Word):
            return NCPoly.from_word(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        alpha = self._same(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly._raw(alpha, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> NCPoly:
        c = _q(c)
        return NCPoly._raw(self.alphabet, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.conc(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # products

    def conc(self, other: NCPoly) -> NCPoly:
        alpha = self._same(other)
        check_budget(len(self.terms) * len(other.terms), "concatenation")
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                out[w] = out.get(w, 0) + a * b
        return NCPoly._raw(alpha, out)

    def shuffle(self, other: NCPoly) -> NCPoly:
        alpha = self._same(other)
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                ab = a * b
                for w, m in shuffle_words(u, v).items():
                    out[w] = out.get(w, 0) + ab * m
                check_budget(len(out), "shuffle")
        return NCPoly._raw(alpha, out)

    def stuffle(self, other: NCPoly) -> NCPoly:
        alpha = self._same(other)
        if self.terms and other.terms and alpha is not Alphabet.Y0:
            raise ValueError("stuffle is defined on Y0 polynomials")
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                ab = a * b
                for w, m in stuffle_words(u, v).items():
                    out[w] = out.get(w, 0) + ab * m
                check_budget(len(out), "stuffle")
        return NCPoly._raw(alpha, out)

    def shuffle_power(self, n: int) -> NCPoly:
        if n < 0:
            raise ValueError("shuffle power must be non-negative")
        out = NCPoly.one(self.alphabet)
        for _ in range(n):
            out = out.shuffle(self)
        return out

    def stuffle_power(self, n: int) -> NCPoly:
        if n < 0:
            raise ValueError("stuffle power must be non-negative")
        out = NCPoly.one(self.alphabet)
        for _ in range(n):
            out = out.stuffle(self)
        return out

    def pair(self, other: NCPoly) -> Fraction:
        """The scalar product sum_w <P|w><Q|w>."""
        small, big = sorted((self.terms, other.terms), key=len)
        return sum((c * big[w] for w, c in small.items() if w in big), Fraction(0))

    # text and JSON

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NCPoly({format_poly(self)!r})"

    def to_json(self) -> list[dict]:
        return [
            {"word": Word(self.alphabet, w).names(), "coef": fmt_q(c)}
            for w, c in ((w, self.terms[w]) for w in sorted(self.terms, key=_word_key))
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict], alphabet: Alphabet | None = None) -> NCPoly:
        terms = {}
        alpha = alphabet
        for item in data:
            w = parse_word(" ".join(item["word"]) or "1", alphabet)
            if w.letters:
                alpha = alpha or w.alphabet
            terms[w.letters] = terms.get(w.letters, 0) + _q(item["coef"])
        return cls(alpha or Alphabet.X, terms)


def _word_key(w: tuple):
    return (len(w), w)


def fmt_q(c: Fraction) -> str:
    """``p/q`` with denominator 1 printed as a bare integer."""
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for w, c in p.items():
        sign = "-" if c < 0 else "+"
        if not w.letters:
            body = fmt_q(abs(c))
        elif abs(c) == 1:
            body = str(w)
        else:
            body = f"{fmt_q(abs(c))} * {w}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_poly(text: str, alphabet: Alphabet | None = None) -> NCPoly:
    """Parse ``"3/2 * x0 x1 - y2 + 1"``-style text.

    Each term is ``coef * word``, ``coef``, or ``word``; ``1`` alone is the
    empty word with coefficient 1.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)[1:]
    if len(pieces) % 2:
        raise ValueError(f"malformed polynomial: {text!r}")
    terms: dict = {}
    alpha = alphabet
    for sign, body in zip(pieces[::2], pieces[1::2]):
        body = body.strip()
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        if "*" in body:
            coef_s, word_s = body.split("*", 1)
            coef = _q(coef_s)
        elif re.fullmatch(r"\d+(/\d+)?", body):
            coef, word_s = _q(body), "1"
        else:
            coef, word_s = Fraction(1), body
        w = parse_word(word_s, alpha)
        if w.letters:
            alpha = alpha or w.alphabet
        if sign == "-":
            coef = -coef
        terms[w.letters] = terms.get(w.letters, 0) + coef
    return NCPoly(alpha or Alphabet.X, terms)


# coproduct and x0-tail elimination


def coproduct_shuffle(w: Word) -> dict[tuple[Word, Word], int]:
    """Delta_sh(w) as ``{(u, v): multiplicity}`` over all subsequence splits."""
    n = len(w)
    out: dict = {}
    idx = range(n)
    for r in range(n + 1):
        for left in combinations(idx, r):
            chosen = set(left)
            u = tuple(w.letters[i] for i in left)
            v = tuple(w.letters[i] for i in idx if i not in chosen)
            key = (Word(w.alphabet, u), Word(w.alphabet, v))
            out[key] = out.get(key, 0) + 1
    return out


@lru_cache(maxsize=None)
def _tail_elim(u: tuple, n: int) -> tuple:
    # E(u, n) = {n: u} - sum_k sum_v <u sh x0^k | v> E(v, n - k)
    out: dict[int, dict] = {n: {u: Fraction(1)}}
    for k in range(1, n + 1):
        for v, m in shuffle_words(u, (0,) * k).items():
            for mm, poly in _tail_elim(v, n - k):
                slot = out.setdefault(mm, {})
                for word, c in poly:
                    slot[word] = slot.get(word, 0) - m * c
    return tuple(
        (m, tuple((w, c) for w, c in sorted(poly.items()) if c))
        for m, poly in sorted(out.items())
    )


def x0_tail_eliminate(u: Word, n: int) -> dict[int, NCPoly]:
    """Polynomials P_m with ``u x1 x0^n = sum_m (P_m x1) sh x0^m``.

    Each P_m has degree ``|u| + n - m``; ``P_n = u``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if u.alphabet is not Alphabet.X:
        raise ValueError("x0_tail_eliminate works over X")
    return {
        m: NCPoly(Alphabet.X, dict(poly))
        for m, poly in _tail_elim(u.letters, n)
        if poly
    }
