"""Rational series: expression parser, weighted-automaton compilation, coefficient queries.

Grammar, loosest binding first::

    sum      := shuffle (("+" | "-") shuffle)*
    shuffle  := conc ("#" conc)*
    conc     := unary ("."? unary)*          juxtaposition is concatenation
    unary    := "-" unary | postfix
    postfix  := atom ("*" | "^" INT | "#^" INT)*
    atom     := LETTER | RATIONAL | "(" sum ")"

``e^i`` is the i-th concatenation power and ``e#^i`` the i-th shuffle power.
Scalars are ordinary atoms, so ``1/2 x0`` is the concatenation of 1/2 and x0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Union

import numpy as np

from polystar.ncpoly import NCPoly, check_budget
from polystar.words import Alphabet, Word


class RatSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


class ImproperStarError(ValueError):
    """Star applied to a series with a nonzero constant term."""


# AST


@dataclass(frozen=True)
class Scalar:
    value: Fraction

    def __str__(self):
        v = self.value
        return str(v) if v.denominator == 1 else f"({v})"


@dataclass(frozen=True)
class Letter:
    alphabet: Alphabet
    index: int

    def __str__(self):
        return f"{self.alphabet.value}{self.index}"


@dataclass(frozen=True)
class Sum:
    left: "RatExpr"
    right: "RatExpr"

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Conc:
    left: "RatExpr"
    right: "RatExpr"

    def __str__(self):
        return f"({self.left} {self.right})"


@dataclass(frozen=True)
class Star:
    arg: "RatExpr"

    def __str__(self):
        return f"({self.arg})*"


@dataclass(frozen=True)
class Shuffle:
    left: "RatExpr"
    right: "RatExpr"

    def __str__(self):
        return f"({self.left} # {self.right})"


RatExpr = Union[Scalar, Letter, Sum, Conc, Star, Shuffle]


def conc_power(e: RatExpr, i: int) -> RatExpr:
    if i < 0:
        raise ValueError("negative power")
    out: RatExpr = Scalar(Fraction(1))
    for k in range(i):
        out = e if k == 0 else Conc(out, e)
    return out


def shuffle_power(e: RatExpr, i: int) -> RatExpr:
    if i < 0:
        raise ValueError("negative power")
    out: RatExpr = Scalar(Fraction(1))
    for k in range(i):
        out = e if k == 0 else Shuffle(out, e)
    return out


def letters_of(e: RatExpr) -> set[tuple[Alphabet, int]]:
    if isinstance(e, Letter):
        return {(e.alphabet, e.index)}
    if isinstance(e, Scalar):
        return set()
    if isinstance(e, Star):
        return letters_of(e.arg)
    return letters_of(e.left) | letters_of(e.right)


def expr_alphabet(e: RatExpr) -> Alphabet:
    found = {a for a, _ in letters_of(e)}
    if len(found) > 1:
        raise ValueError("expression mixes the X and Y0 alphabets")
    return found.pop() if found else Alphabet.X


# parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<letter>[xy]\d+)|(?P<shpow>#\^)|(?P<op>[-+#.*^()]))"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise RatSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            what = "end of input" if kind == "end" else repr(text)
            raise RatSyntaxError(f"expected {value!r}, found {what}", pos)

    def parse(self) -> RatExpr:
        e = self.sum()
        kind, text, pos = self.peek()
        if kind != "end":
            raise RatSyntaxError(f"unexpected {text!r}", pos)
        return e

    def sum(self):
        e = self.shuffle()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.shuffle()
            e = Sum(e, rhs if op == "+" else Conc(Scalar(Fraction(-1)), rhs))
        return e

    def shuffle(self):
        e = self.conc()
        while self.peek()[0] == "op" and self.peek()[1] == "#":
            self.take()
            e = Shuffle(e, self.conc())
        return e

    def _starts_atom(self):
        kind, text, _ = self.peek()
        return kind in ("num", "letter") or (kind == "op" and text == "(")

    def conc(self):
        e = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == ".":
                self.take()
                e = Conc(e, self.unary())
            elif self._starts_atom():
                e = Conc(e, self.unary())
            else:
                return e

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return Conc(Scalar(Fraction(-1)), self.unary())
        return self.postfix()

    def _int(self):
        kind, text, pos = self.take()
        if kind != "num" or "/" in text:
            raise RatSyntaxError("expected a non-negative integer exponent", pos)
        return int(text)

    def postfix(self):
        e = self.atom()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.take()
                e = Star(e)
            elif kind == "op" and text == "^":
                self.take()
                e = conc_power(e, self._int())
            elif kind == "shpow":
                self.take()
                e = shuffle_power(e, self._int())
            else:
                return e

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Scalar(Fraction(text))
        if kind == "letter":
            alpha = Alphabet(text[0])
            idx = int(text[1:])
            if alpha is Alphabet.X and idx > 1:
                raise RatSyntaxError(f"{text} is not a letter of X", pos)
            return Letter(alpha, idx)
        if kind == "op" and text == "(":
            e = self.sum()
            self.expect(")")
            return e
        what = "end of input" if kind == "end" else repr(text)
        raise RatSyntaxError(f"unexpected {what}", pos)


def parse(text: str) -> RatExpr:
    """Parse a rational expression; syntax errors carry the character offset."""
    return _Parser(text).parse()


# linear representations


def _fr_array(rows) -> np.ndarray:
    arr = np.empty(np.shape(rows), dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(np.asarray(rows, dtype=object).reshape(-1)):
        flat[i] = Fraction(v)
    return arr


def _zeros(*shape) -> np.ndarray:
    return _fr_array(np.zeros(shape, dtype=int).tolist())


def _eye(n) -> np.ndarray:
    return _fr_array(np.eye(n, dtype=int).tolist())


class LinRep:
    """Triple (beta, mu, eta) with coefficient ``<S|w> = beta mu(w) eta``.

    ``mu`` maps letter indices to n x n matrices; letters of the alphabet that
    are missing from ``mu`` act as the zero matrix.
    """

    def __init__(self, alphabet: Alphabet, beta, mu: dict, eta):
        self.alphabet = alphabet
        self.beta = _fr_array(beta).reshape(-1)
        self.eta = _fr_array(eta).reshape(-1)
        n = len(self.beta)
        if n < 1 or len(self.eta) != n:
            raise ValueError("beta and eta must have the same positive length")
        self.mu = {}
        for x, m in mu.items():
            m = _fr_array(m)
            if m.shape != (n, n):
                raise ValueError(f"mu({x}) must be {n}x{n}")
            self.mu[int(x)] = m
        self.dim = n
        self._int = None

    def __repr__(self):
        return f"LinRep(dim={self.dim}, letters={sorted(self.mu)})"

    def letters(self) -> list[int]:
        if self.alphabet is Alphabet.X:
            return [0, 1]
        return sorted(self.mu)

    def matrix(self, x: int) -> np.ndarray:
        if self.alphabet is Alphabet.X and x not in (0, 1):
            raise ValueError(f"unknown letter x{x}")
        m = self.mu.get(x)
        return m if m is not None else _zeros(self.dim, self.dim)

    def constant_term(self) -> Fraction:
        return Fraction(self.beta.dot(self.eta))

    def _integral(self):
        # integer matrices with one denominator each: int products beat Fraction ones
        if self._int is None:
            def split(a):
                d = lcm(*(Fraction(c).denominator for c in a.flat)) if a.size else 1
                return (a * d).astype(object).tolist(), d

            beta, db = split(self.beta)
            eta, de = split(self.eta)
            mats = {x: split(m) for x, m in self.mu.items()}
            self._int = (
                np.array([int(c) for c in beta], dtype=object), db,
                {x: (np.array([[int(c) for c in row] for row in m], dtype=object), d)
                 for x, (m, d) in mats.items()},
                np.array([int(c) for c in eta], dtype=object), de,
            )
        return self._int

    def coeff(self, w: Word) -> Fraction:
        if w.letters and w.alphabet is not self.alphabet:
            raise ValueError(
                f"unknown letter {w.names()[0]} for a series over {self.alphabet.name}"
            )
        beta, den, mats, eta, de = self._integral()
        v = beta
        for x in w.letters:
            if x not in mats:
                self.matrix(x)  # validates the letter
                return Fraction(0)
            m, d = mats[x]
            v = v.dot(m)
            den *= d
        return Fraction(int(v.dot(eta)), den * de)

    def _layers(self, n: int):
        """Yield ``{word: (v, d)}`` with ``beta mu(word) = v / d`` for lengths 0..n, dropping zero rows."""
        beta, db, mats, _, _ = self._integral()
        layer = {(): (beta, db)}
        yield layer
        for _ in range(n):
            nxt = {}
            for w, (v, den) in layer.items():
                for x in self.letters():
                    if x not in mats:
                        continue
                    m, d = mats[x]
                    r = v.dot(m)
                    if any(r):
                        nxt[w + (x,)] = (r, den * d)
            check_budget(len(nxt), "homogeneous component")
            layer = nxt
            yield layer

    def _finish(self, vd) -> Fraction:
        _, _, _, eta, de = self._integral()
        v, d = vd
        return Fraction(int(v.dot(eta)), d * de)

    def hom_component(self, n: int) -> NCPoly:
        if n < 0:
            raise ValueError("n must be non-negative")
        layer = None
        for layer in self._layers(n):
            pass
        return NCPoly(self.alphabet, {w: self._finish(vd) for w, vd in layer.items()})

    def truncate(self, n: int) -> NCPoly:
        if n < 0:
            raise ValueError("N must be non-negative")
        terms = {}
        for layer in self._layers(n):
            for w, vd in layer.items():
                terms[w] = self._finish(vd)
        return NCPoly(self.alphabet, terms)

    def growth_bound(self) -> tuple[Fraction, Fraction]:
        """(K, R) with ``|<S|w>| <= K R^|w|`` from row-sum norms."""
        k = sum(abs(b) for b in self.beta) * max(abs(e) for e in self.eta)
        r = max(
            (max(sum(abs(a) for a in row) for row in m) for m in self.mu.values()),
            default=Fraction(0),
        )
        return Fraction(k), Fraction(r)


# constructions


def rep_scalar(c, alphabet=Alphabet.X) -> LinRep:
    return LinRep(alphabet, [1], {}, [Fraction(c)])


def rep_letter(alphabet: Alphabet, x: int) -> LinRep:
    return LinRep(alphabet, [1, 0], {x: [[0, 1], [0, 0]]}, [0, 1])


def _all_letters(r1: LinRep, r2: LinRep):
    return sorted(set(r1.mu) | set(r2.mu))


def rep_sum(r1: LinRep, r2: LinRep) -> LinRep:
    n1, n2 = r1.dim, r2.dim
    mu = {}
    for x in _all_letters(r1, r2):
        m = _zeros(n1 + n2, n1 + n2)
        m[:n1, :n1] = r1.matrix(x)
        m[n1:, n1:] = r2.matrix(x)
        mu[x] = m
    return LinRep(r1.alphabet, np.concatenate([r1.beta, r2.beta]), mu,
                  np.concatenate([r1.eta, r2.eta]))


def rep_conc(r1: LinRep, r2: LinRep) -> LinRep:
    n1, n2 = r1.dim, r2.dim
    c2 = r2.constant_term()
    link = np.outer(r1.eta, r2.beta)
    mu = {}
    for x in _all_letters(r1, r2):
        m = _zeros(n1 + n2, n1 + n2)
        m[:n1, :n1] = r1.matrix(x)
        m[:n1, n1:] = link.dot(r2.matrix(x))
        m[n1:, n1:] = r2.matrix(x)
        mu[x] = m
    beta = np.concatenate([r1.beta, _zeros(n2)])
    eta = np.concatenate([r1.eta * c2, r2.eta])
    return LinRep(r1.alphabet, beta, mu, eta)


def rep_star(r: LinRep, label: str = "") -> LinRep:
    if r.constant_term() != 0:
        where = f" {label}" if label else ""
        raise ImproperStarError(f"star of non-proper series{where} (constant term {r.constant_term()})")
    n = r.dim
    mu = {}
    for x, mx in r.mu.items():
        bm = r.beta.dot(mx)
        m = _zeros(n + 1, n + 1)
        m[:n, :n] = mx + np.outer(r.eta, bm)
        m[n, :n] = bm
        mu[x] = m
    beta = np.concatenate([_zeros(n), _fr_array([1])])
    eta = np.concatenate([r.eta, _fr_array([1])])
    return LinRep(r.alphabet, beta, mu, eta)


def rep_shuffle(r1: LinRep, r2: LinRep) -> LinRep:
    i1, i2 = _eye(r1.dim), _eye(r2.dim)
    mu = {x: np.kron(r1.matrix(x), i2) + np.kron(i1, r2.matrix(x)) for x in _all_letters(r1, r2)}
    return LinRep(r1.alphabet, np.kron(r1.beta, r2.beta), mu, np.kron(r1.eta, r2.eta))


def compile_expr(e: RatExpr | str, alphabet: Alphabet | None = None) -> LinRep:
    """Compile an expression (or its text) to a linear representation."""
    if isinstance(e, str):
        e = parse(e)
    alpha = alphabet or expr_alphabet(e)

    def go(node):
        if isinstance(node, Scalar):
            return rep_scalar(node.value, alpha)
        if isinstance(node, Letter):
            if node.alphabet is not alpha:
                raise ValueError("expression mixes the X and Y0 alphabets")
            return rep_letter(alpha, node.index)
        if isinstance(node, Sum):
            return rep_sum(go(node.left), go(node.right))
        if isinstance(node, Conc):
            return rep_conc(go(node.left), go(node.right))
        if isinstance(node, Shuffle):
            return rep_shuffle(go(node.left), go(node.right))
        if isinstance(node, Star):
            return rep_star(go(node.arg), str(node.arg))
        raise TypeError(f"not a rational expression: {node!r}")

    return go(e)


def coeff(r: LinRep | str, w: Word) -> Fraction:
    if isinstance(r, str):
        r = compile_expr(r)
    return r.coeff(w)


def hom_component(r: LinRep | str, n: int) -> NCPoly:
    if isinstance(r, str):
        r = compile_expr(r)
    return r.hom_component(n)


def truncate(r: LinRep | str, n: int) -> NCPoly:
    if isinstance(r, str):
        r = compile_expr(r)
    return r.truncate(n)


# independent expansion oracle


def expand_truncated(e: RatExpr | str, n: int, alphabet: Alphabet | None = None) -> NCPoly:
    """Expand an expression over NCPoly, dropping words longer than n.

    Works straight from the AST (geometric series for stars, word shuffles
    for ``#``) and never builds a linear representation.
    """
    if isinstance(e, str):
        e = parse(e)
    alpha = alphabet or expr_alphabet(e)

    def go(node) -> NCPoly:
        if isinstance(node, Scalar):
            return NCPoly.scalar(node.value, alpha)
        if isinstance(node, Letter):
            return NCPoly.letter(alpha, node.index)
        if isinstance(node, Sum):
            return go(node.left) + go(node.right)
        if isinstance(node, Conc):
            return go(node.left).conc(go(node.right)).truncate(n)
        if isinstance(node, Shuffle):
            return go(node.left).shuffle(go(node.right)).truncate(n)
        if isinstance(node, Star):
            s = go(node.arg)
            if s.constant_term() != 0:
                raise ImproperStarError(f"star of non-proper series {node.arg}")
            out = NCPoly.one(alpha)
            power = NCPoly.one(alpha)
            for _ in range(n):
                power = power.conc(s).truncate(n)
                if not power:
                    break
                out = out + power
            return out
        raise TypeError(f"not a rational expression: {node!r}")

    return go(e)


def lazard_check(n: int, rhs: str = "(x0* x1)* x0*") -> bool:
    """Does truncate((x0+x1)*, n) equal truncate(rhs, n)?"""
    if n < 0:
        raise ValueError("N must be non-negative")
    return truncate(compile_expr("(x0 + x1)*"), n) == truncate(compile_expr(rhs), n)


def tame_check(r: LinRep, max_len: int) -> bool:
    """Check ``|<S|w>| <= K R^|w|`` on every word of length <= max_len."""
    k, rad = r.growth_bound()
    for n in range(max_len + 1):
        bound = k * rad**n
        for c in r.hom_component(n).terms.values():
            if abs(c) > bound:
                return False
    return True


def binomial_identity(n: int, i: int) -> bool:
    """C(n+i-1, n) == sum_k C(i-1, k) C(n, n-k)  (Vandermonde, used for ((ax)*)^i)."""
    return comb(n + i - 1, n) == sum(comb(i - 1, k) * comb(n, n - k) for k in range(n + 1))
