"""Polynomials in the shuffle module with Kleene stars of single letters.

A key ``(w, k, l)`` is ``w ⧢ (x0*)^⧢k ⧢ (x1*)^⧢l``; negative k stands for
``((-x0)*)^⧢|k|``, which is legitimate because ``x0* ⧢ (-x0)* = 1``.
Under Li these map to ``z^k (1-z)^-l Li_w``.

The kernel ideal J is generated by ``x0* ⧢ x1* - x1* + 1``.  Rewriting picks a
mixed key (k != 0 and l >= 1) and applies

* k > 0:  (w, k, l) -> (w, k-1, l) - (w, k-1, l-1)
* k < 0:  (w, k, l) -> (w, k, l-1) + (w, k+1, l)

until none is left.  Each step lowers ``l*|k|`` on the rewritten key.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import NamedTuple

from polystar.lifun import CFunction
from polystar.ncpoly import NCPoly, check_budget, fmt_q, shuffle_words
from polystar.words import Alphabet, Word


class StarTerm(NamedTuple):
    w: tuple
    k: int
    l: int

    def __str__(self):
        parts = []
        if self.w:
            parts.append(str(Word(Alphabet.X, self.w)))
        if self.k > 0:
            parts.append("x0*" if self.k == 1 else f"x0*^{self.k}")
        elif self.k < 0:
            parts.append("(-x0)*" if self.k == -1 else f"(-x0)*^{-self.k}")
        if self.l:
            parts.append("x1*" if self.l == 1 else f"x1*^{self.l}")
        return " # ".join(parts) or "1"


class StarPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[StarTerm, Fraction] = {}
        for key, c in (terms or {}).items():
            w, k, l = key
            w = w.letters if isinstance(w, Word) else tuple(w)
            if l < 0:
                raise ValueError("x1-star power must be >= 0")
            if any(x not in (0, 1) for x in w):
                raise ValueError("star polynomials live over X")
            key = StarTerm(w, int(k), int(l))
            c = Fraction(c)
            if c:
                self.terms[key] = self.terms.get(key, 0) + c
                if not self.terms[key]:
                    del self.terms[key]

    @classmethod
    def _raw(cls, terms: dict) -> StarPoly:
        p = cls.__new__(cls)
        p.terms = {k: v for k, v in terms.items() if v}
        return p

    @classmethod
    def term(cls, w=(), k: int = 0, l: int = 0, coef=1) -> StarPoly:
        return cls({(w, k, l): coef})

    @classmethod
    def one(cls) -> StarPoly:
        return cls.term()

    @classmethod
    def from_ncpoly(cls, p: NCPoly) -> StarPoly:
        return cls({(w, 0, 0): c for w, c in p.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = StarPoly.term(coef=other)
        if not isinstance(other, StarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = StarPoly.term(coef=other)
        if not isinstance(other, StarPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return StarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return StarPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = StarPoly.term(coef=other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> StarPoly:
        c = Fraction(c)
        return StarPoly._raw({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, StarPoly):
            return self.shuffle(other)
        return NotImplemented

    __rmul__ = __mul__

    def shuffle(self, other: StarPoly) -> StarPoly:
        out: dict = {}
        for (w1, k1, l1), a in self.terms.items():
            for (w2, k2, l2), b in other.terms.items():
                ab = a * b
                k, l = k1 + k2, l1 + l2
                for w, m in shuffle_words(w1, w2).items():
                    key = StarTerm(w, k, l)
                    out[key] = out.get(key, 0) + ab * m
                check_budget(len(out), "star shuffle")
        return StarPoly._raw(out)

    def shuffle_power(self, n: int) -> StarPoly:
        out = StarPoly.one()
        for _ in range(n):
            out = out.shuffle(self)
        return out

    def is_normal(self) -> bool:
        return all(k == 0 or l == 0 for (_, k, l) in self.terms)

    def measure(self) -> int:
        return sum(l * abs(k) for (_, k, l) in self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: _key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [f"{fmt_q(c)} * {t}" for t, c in self.items()]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"StarPoly({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [
            {"w": Word(Alphabet.X, t.w).names(), "k": t.k, "l": t.l, "coef": fmt_q(c)}
            for t, c in self.items()
        ]


def _key(t: StarTerm):
    return (len(t.w), t.w, t.k, t.l)


def shuffle_star(p: StarPoly, q: StarPoly) -> StarPoly:
    return p.shuffle(q)


def rewrite_step(term: StarTerm) -> list[tuple[StarTerm, int]]:
    """One rewriting step on a mixed key."""
    w, k, l = term
    if k > 0 and l >= 1:
        return [(StarTerm(w, k - 1, l), 1), (StarTerm(w, k - 1, l - 1), -1)]
    if k < 0 and l >= 1:
        return [(StarTerm(w, k, l - 1), 1), (StarTerm(w, k + 1, l), 1)]
    raise ValueError(f"{term} is already in normal form")


def rewrite_mod_J(p: StarPoly, rng: random.Random | None = None, max_steps: int = 10**7) -> StarPoly:
    """Normal form of p modulo J (every key has k == 0 or l == 0).

    With ``rng`` the mixed key to rewrite next is chosen at random, which is
    how order-independence is tested; otherwise the largest key goes first.
    """
    terms = dict(p.terms)
    steps = 0
    while True:
        mixed = [t for t, c in terms.items() if c and t.k != 0 and t.l >= 1]
        if not mixed:
            break
        if rng is None:
            t = max(mixed, key=lambda t: (t.l * abs(t.k), _key(t)))
        else:
            mixed.sort(key=_key)
            t = rng.choice(mixed)
        c = terms.pop(t)
        for nt, sgn in rewrite_step(t):
            terms[nt] = terms.get(nt, 0) + sgn * c
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate within the step limit")
    return StarPoly._raw(terms)


def kernel_generator() -> StarPoly:
    """x0* ⧢ x1* - x1* + 1."""
    return StarPoly({((), 1, 1): 1, ((), 0, 1): -1, ((), 0, 0): 1})


def li_ext(p: StarPoly) -> CFunction:
    """Li extended to stars: (w, k, l) -> z^k (1-z)^-l Li_w."""
    out = CFunction()
    for (w, k, l), c in p.terms.items():
        out = out + CFunction.from_word(w).times_monomial(k, l).scale(c)
    return out


def li_ext_eval(p: StarPoly, z, trunc: int = 2000):
    """Σ c Li(key)(z) summed key by key in floating point.

    ``li_ext(p).eval`` first cancels terms exactly; this route does not, so it
    is the honest numeric test of an identity.
    """
    return sum(
        float(c) * CFunction.from_word(w).times_monomial(k, l).eval(z, trunc)
        for (w, k, l), c in p.terms.items()
    )


def random_starpoly(rng: random.Random, n_terms: int = 20, kmax: int = 3, lmax: int = 3,
                    wmax: int = 3) -> StarPoly:
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        w = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, wmax)))
        key = (w, rng.randint(-kmax, kmax), rng.randint(0, lmax))
        terms[key] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return StarPoly(terms)


def random_J_element(rng: random.Random, **kw) -> StarPoly:
    return random_starpoly(rng, **kw).shuffle(kernel_generator())


# parser

_TOK = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<letter>x[01])|(?P<op>[-+#*^().]))")


class StarSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


class _StarParser:
    """expr := term (("+"|"-") term)*;  term := factor ("#" factor)*;
    factor := unit+ (juxtaposition: scalars and plain words);
    unit := NUM | LETTER star? | "(" expr ")" star?;  star := "*" ("^" "-"? INT)?
    """

    def __init__(self, text):
        self.text = text
        self.toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOK.match(text, pos)
            if not m:
                raise StarSyntaxError(f"unexpected character {text[pos]!r}", pos)
            self.toks.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def is_op(self, s):
        kind, text, _ = self.peek()
        return kind == "op" and text == s

    def parse(self) -> StarPoly:
        p = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise StarSyntaxError(f"unexpected {text!r}", pos)
        return p

    def expr(self):
        neg = False
        if self.is_op("-"):
            self.take()
            neg = True
        p = self.term()
        if neg:
            p = -p
        while self.is_op("+") or self.is_op("-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.is_op("#"):
            self.take()
            p = p.shuffle(self.factor())
        return p

    def _starts_unit(self):
        kind, text, _ = self.peek()
        return kind in ("num", "letter") or (kind == "op" and text == "(")

    def factor(self):
        p = self.unit()
        while self._starts_unit() or self.is_op("."):
            if self.is_op("."):
                self.take()
            pos = self.peek()[2]
            q = self.unit()
            p = _concat(p, q, pos)
        return p

    def _power(self):
        if not self.is_op("^"):
            return 1
        self.take()
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        kind, text, pos = self.take()
        if kind != "num" or "/" in text:
            raise StarSyntaxError("expected an integer exponent", pos)
        return sign * int(text)

    def _star(self, letter_poly: StarPoly, pos: int):
        # letter_poly must be +-x0 or x1
        if len(letter_poly) != 1:
            raise StarSyntaxError("only x0, -x0 and x1 may be starred", pos)
        ((w, k, l), c), = letter_poly.terms.items()
        if k or l or len(w) != 1:
            raise StarSyntaxError("only x0, -x0 and x1 may be starred", pos)
        self.take()  # '*'
        e = self._power()
        if w == (0,) and c in (1, -1):
            return StarPoly.term((), int(c) * e, 0)
        if w == (1,) and c == 1:
            if e < 0:
                raise StarSyntaxError("x1* has no shuffle inverse here", pos)
            return StarPoly.term((), 0, e)
        raise StarSyntaxError("only x0, -x0 and x1 may be starred", pos)

    def unit(self):
        kind, text, pos = self.take()
        if kind == "num":
            return StarPoly.term(coef=Fraction(text))
        if kind == "letter":
            p = StarPoly.term((int(text[1]),))
            if self.is_op("*"):
                return self._star(p, pos)
            return p
        if kind == "op" and text == "(":
            p = self.expr()
            kind2, text2, pos2 = self.take()
            if not (kind2 == "op" and text2 == ")"):
                what = "end of input" if kind2 == "end" else repr(text2)
                raise StarSyntaxError(f"expected ')', found {what}", pos2)
            if self.is_op("*"):
                return self._star(p, pos)
            return p
        what = "end of input" if kind == "end" else repr(text)
        raise StarSyntaxError(f"unexpected {what}", pos)


def _concat(p: StarPoly, q: StarPoly, pos: int) -> StarPoly:
    out: dict = {}
    for (w1, k1, l1), a in p.terms.items():
        for (w2, k2, l2), b in q.terms.items():
            if (k1 or l1) and w2 or (k2 or l2) and w1:
                raise StarSyntaxError("concatenation with a starred factor; use '#'", pos)
            key = StarTerm(w1 + w2, k1 + k2, l1 + l2)
            out[key] = out.get(key, 0) + a * b
    return StarPoly._raw(out)


def parse_starpoly(text: str) -> StarPoly:
    """Parse e.g. ``"x0* # x1* - x1* + 1"``, ``"x0 x1 # x0*^-2"``, ``"(-x0)* # x1*^2"``.

    ``x0*^k`` is the k-th shuffle power (k may be negative), ``#`` is the shuffle,
    juxtaposition concatenates plain words and applies scalars.
    """
    return _StarParser(text).parse()
