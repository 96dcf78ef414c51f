"""Li on the constructive domain  C<X> ⧢ C^rat<<x0>> ⧢ C^rat<<x1>>.

An element is stored as a triple (P, R0, R1): a polynomial over X, a rational
series in x0 alone and a rational series in x1 alone.  Since
``Li_{x0^n} = log(z)^n / n!`` and ``Li_{x1^n} = (-log(1-z))^n / n!`` and Li is
a shuffle morphism::

    Li_S(z) = Li_P(z) * Σ <R0|x0^n> log(z)^n / n! * Σ <R1|x1^n> (-log(1-z))^n / n!

The one-letter sums are cut at a fixed degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

from polystar.lifun import CFunction
from polystar.ncpoly import NCPoly
from polystar.ratl import LinRep, compile_expr, letters_of, parse
from polystar.words import Alphabet, Word


def one_letter_eval(rep: LinRep, letter: int, value: float, degree: int = 60) -> float:
    """Σ_{n<=degree} <R|x^n> value^n / n! for a series R in the single letter x."""
    if any(x != letter for x in rep.mu):
        raise ValueError(f"series must only involve x{letter}")
    total = 0.0
    v = rep.beta
    m = rep.mu.get(letter)
    for n in range(degree + 1):
        c = float(v.dot(rep.eta))
        total += c * value**n / factorial(n)
        if m is None:
            break
        v = v.dot(m)
    return total


def li_x0_series(rep: LinRep, z: float, degree: int = 60) -> float:
    """Li of a rational series in x0 alone: Σ <R|x0^n> log(z)^n / n!."""
    return one_letter_eval(rep, 0, math.log(z), degree)


def li_x1_series(rep: LinRep, z: float, degree: int = 60) -> float:
    """Li of a rational series in x1 alone: Σ <R|x1^n> (-log(1-z))^n / n!."""
    return one_letter_eval(rep, 1, -math.log1p(-z), degree)


def _single_letter_rep(text: str, letter: int) -> LinRep:
    e = parse(text)
    found = letters_of(e)
    if found - {(Alphabet.X, letter)}:
        raise ValueError(f"{text!r} must only involve x{letter}")
    return compile_expr(e, Alphabet.X)


@dataclass
class ConstructiveSeries:
    poly: NCPoly
    r0: LinRep
    r1: LinRep

    @classmethod
    def from_text(cls, poly: NCPoly, r0: str, r1: str) -> ConstructiveSeries:
        return cls(poly, _single_letter_rep(r0, 0), _single_letter_rep(r1, 1))

    def shuffle(self, other: ConstructiveSeries) -> ConstructiveSeries:
        from polystar.ratl import rep_shuffle

        return ConstructiveSeries(
            self.poly.shuffle(other.poly),
            rep_shuffle(self.r0, other.r0),
            rep_shuffle(self.r1, other.r1),
        )

    def li_eval(self, z: float, trunc: int = 2000, degree: int = 60) -> float:
        return (
            CFunction.from_poly(self.poly).eval(z, trunc)
            * li_x0_series(self.r0, z, degree)
            * li_x1_series(self.r1, z, degree)
        )

    def coeff(self, w: Word):
        """<S|w> computed by expanding the triple, for cross-checks on short words."""
        n = len(w)
        t0 = self.r0.truncate(n)
        t1 = self.r1.truncate(n)
        return self.poly.shuffle(t0).truncate(n).shuffle(t1).coeff(w)
