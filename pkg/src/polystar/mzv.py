"""Formal multiple zeta constants.

A :class:`ZetaConst` is a rational combination of convergent X-words (first
letter x0, last letter x1) plus a rational constant stored on the empty word.
Products use the shuffle, which ζ respects on convergent words.  Nothing is
reduced modulo the double-shuffle relations, so equality is formal.

Values are computed from the path splitting at 1/2:
``ζ(w) = Σ_{w=uv} Li_{τ(u)}(1/2) Li_v(1/2)`` where ``τ`` reverses a word and
swaps x0 with x1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from polystar import kernels
from polystar.ncpoly import NCPoly, fmt_q, shuffle_words
from polystar.words import Alphabet, Word


def is_convergent(w: tuple) -> bool:
    return not w or (w[0] == 0 and w[-1] == 1)


class ZetaConst:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            w = w.letters if isinstance(w, Word) else tuple(w)
            if not is_convergent(w):
                raise ValueError(f"divergent word in a zeta constant: {Word(Alphabet.X, w)}")
            c = Fraction(c)
            if c:
                clean[w] = clean.get(w, 0) + c
                if not clean[w]:
                    del clean[w]
        self.terms: dict[tuple, Fraction] = clean

    @classmethod
    def zeta(cls, *s: int) -> ZetaConst:
        """ζ(s1, ..., sr) with s1 >= 2."""
        letters = []
        for k in s:
            letters += [0] * (k - 1) + [1]
        return cls({tuple(letters): 1})

    @classmethod
    def lift(cls, c) -> ZetaConst:
        if isinstance(c, ZetaConst):
            return c
        return cls({(): c})

    def is_rational(self) -> bool:
        return all(not w for w in self.terms)

    def rational_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ZetaConst):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_part() == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_part())
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, (ZetaConst, int, Fraction)):
            return NotImplemented
        other = ZetaConst.lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return ZetaConst(out)

    __radd__ = __add__

    def __neg__(self):
        return ZetaConst({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ZetaConst.lift(other))

    def __rsub__(self, other):
        return ZetaConst.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZetaConst({w: c * other for w, c in self.terms.items()})
        if not isinstance(other, ZetaConst):
            return NotImplemented
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                for w, m in shuffle_words(u, v).items():
                    out[w] = out.get(w, 0) + a * b * m
        return ZetaConst(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __float__(self):
        return sum(float(c) * zeta_value(w) for w, c in self.terms.items())

    def __complex__(self):
        return complex(float(self))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            if not w:
                parts.append(fmt_q(c))
            else:
                parts.append(f"{fmt_q(c)}*zeta({','.join(map(str, y_indices(w)))})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ZetaConst({str(self)!r})"

    def to_json(self):
        if self.is_rational():
            return fmt_q(self.rational_part())
        return {
            " ".join(Word(Alphabet.X, w).names()) or "1": fmt_q(c)
            for w, c in sorted(self.terms.items())
        }


def y_indices(w: tuple) -> list[int]:
    """(s1, ..., sr) for the word x0^{s1-1} x1 ... x0^{sr-1} x1."""
    out, run = [], 0
    for x in w:
        if x == 0:
            run += 1
        else:
            out.append(run + 1)
            run = 0
    return out


def _li_half(w: tuple, n_terms: int = 80) -> float:
    if not w:
        return 1.0
    c = kernels.li_taylor(w, n_terms)
    return float(sum(c[m] * 0.5**m for m in range(n_terms, 0, -1)))


@lru_cache(maxsize=4096)
def zeta_value(w: tuple) -> float:
    """Double-precision ζ of a convergent word (1 for the empty word)."""
    if not is_convergent(w):
        raise ValueError("zeta_value needs a convergent word")
    total = 0.0
    for i in range(len(w) + 1):
        u, v = w[:i], w[i:]
        tu = tuple(1 - x for x in reversed(u))
        total += _li_half(tu) * _li_half(v)
    return total


# shuffle regularization with respect to a leading x1


@lru_cache(maxsize=None)
def _reg_word(w: tuple) -> tuple:
    # returns ((j, ((word, coef), ...)), ...) with w = sum_j P_j sh x1^j
    k = 0
    while k < len(w) and w[k] == 1:
        k += 1
    if k == 0:
        return ((0, ((w, Fraction(1)),)),)
    r = w[k:]
    acc: dict[int, dict] = {}

    def add(j, word, c):
        slot = acc.setdefault(j, {})
        slot[word] = slot.get(word, 0) + c

    # x1^k r = (1/k) [ x1 sh x1^{k-1} r  -  sum of x1 inserted into r after its first letter ]
    inv = Fraction(1, k)
    for j, poly in _reg_word(w[1:]):
        for word, c in poly:
            # x1 sh (P sh x1^j) = P sh x1^{j+1} * (j+1)
            add(j + 1, word, inv * c * (j + 1))
    for pos in range(1, len(r) + 1):
        inserted = (1,) * (k - 1) + r[:pos] + (1,) + r[pos:]
        for j, poly in _reg_word(inserted):
            for word, c in poly:
                add(j, word, -inv * c)
    return tuple(
        (j, tuple((word, c) for word, c in sorted(poly.items()) if c))
        for j, poly in sorted(acc.items())
    )


def regularize_x1(w: Word | tuple) -> dict[int, NCPoly]:
    """Write w as ``Σ_j P_j ⧢ x1^j`` with every word of P_j free of a leading x1.

    ``x1^j`` is the word (so Li of it is ``(-log(1-z))^j / j!``).
    """
    letters = w.letters if isinstance(w, Word) else tuple(w)
    return {
        j: NCPoly(Alphabet.X, dict(poly)) for j, poly in _reg_word(letters) if poly
    }


def zeta_reg(w: Word | tuple) -> ZetaConst:
    """Shuffle-regularized ζ with ζ(x1) = 0, for words ending in x1 (or empty)."""
    parts = regularize_x1(w)
    p0 = parts.get(0)
    return ZetaConst(p0.terms) if p0 is not None else ZetaConst()


EULER_GAMMA = "0.57721566490153286060651209008240243104215933593992"
PI = "3.14159265358979323846264338327950288419716939937510"

