"""The algebra C{Li_w} over C = Q[z, 1/z, 1/(1-z)] in the basis B.

A basis element ``(c, u, n)`` stands for ``c(z) * Li_u(z) * log(z)^n / n!``
where ``c`` is ``z^k`` (any integer k) or ``(1-z)^-l`` (l >= 1) and ``u`` is
empty or ends in x1.  Coefficients are Fractions, or :class:`ZetaConst` once an
integration constant at z = 1 has produced a multiple zeta value.

Everything is kept in canonical form: mixed monomials ``z^a (1-z)^-b`` are
split by partial fractions as soon as they appear.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple

import numpy as np

from polystar import kernels
from polystar.mzv import ZetaConst, regularize_x1
from polystar.ncpoly import NCPoly, fmt_q, shuffle_words, x0_tail_eliminate
from polystar.words import Alphabet, Word

Z, P = "z", "p"


class Coeff(NamedTuple):
    """``z^k`` when kind == "z", ``(1-z)^-k`` when kind == "p" (k >= 1)."""

    kind: str
    k: int

    def __str__(self):
        if self.kind == Z:
            return "1" if self.k == 0 else f"z^{self.k}"
        return f"(1-z)^-{self.k}"


def Zpow(k: int) -> Coeff:
    return Coeff(Z, int(k))


def Ppow(l: int) -> Coeff:
    if l < 1:
        raise ValueError("Ppow index must be >= 1")
    return Coeff(P, int(l))


ONE = Coeff(Z, 0)


class BasisElem(NamedTuple):
    c: Coeff
    u: tuple
    n: int

    def __str__(self):
        parts = []
        if self.c != ONE:
            parts.append(str(self.c))
        if self.u:
            parts.append(f"Li[{Word(Alphabet.X, self.u)}]")
        if self.n:
            parts.append(f"L{self.n}")
        return "*".join(parts) or "1"


class DivergentConstantError(ValueError):
    """The fixing limit of an antiderivative is infinite at the chosen basepoint."""

    def __init__(self, msg, terms=()):
        super().__init__(msg)
        self.terms = list(terms)


# coefficient ring


@lru_cache(maxsize=None)
def _normalize(a: int, b: int) -> tuple:
    if b < 0:
        # z^a (1-z)^m, expand the polynomial factor
        m = -b
        return tuple((Zpow(a + j), Fraction((-1) ** j * comb(m, j))) for j in range(m + 1))
    if b == 0:
        return ((Zpow(a), Fraction(1)),)
    if a == 0:
        return ((Ppow(b), Fraction(1)),)
    out: dict = {}
    if a > 0:
        # z = 1 - (1 - z)
        parts = [(_normalize(a - 1, b), 1), (_normalize(a - 1, b - 1), -1)]
    else:
        # 1/(z(1-z)) = 1/z + 1/(1-z)
        parts = [(_normalize(a, b - 1), 1), (_normalize(a + 1, b), 1)]
    for terms, sgn in parts:
        for c, v in terms:
            out[c] = out.get(c, 0) + sgn * v
    return tuple((c, v) for c, v in sorted(out.items()) if v)


def normalize_coeff(a: int, b: int) -> dict[Coeff, Fraction]:
    """``z^a (1-z)^-b`` in the basis {z^k} ∪ {(1-z)^-l}; negative b is a polynomial factor."""
    return dict(_normalize(a, b))


def _ab(c: Coeff) -> tuple[int, int]:
    return (c.k, 0) if c.kind == Z else (0, c.k)


# exact Taylor coefficients of Li_u at 0


@lru_cache(maxsize=None)
def li_taylor_exact(u: tuple, order: int) -> tuple:
    """Coefficients c[0..order] of Li_u(z) as Fractions (u empty or ending in x1)."""
    c = [Fraction(0)] * (order + 1)
    c[0] = Fraction(1)
    for x in reversed(u):
        if x == 0:
            c = [Fraction(0)] + [c[m] / m for m in range(1, order + 1)]
        else:
            acc, out = Fraction(0), [Fraction(0)]
            for m in range(1, order + 1):
                acc += c[m - 1]
                out.append(acc / m)
            c = out
    return tuple(c)


def _li_float_coeffs(u: tuple, n: int):
    return _li_float_cached(u, n)


@lru_cache(maxsize=2048)
def _li_float_cached(u: tuple, n: int):
    arr = np.asarray(kernels.li_taylor(u, n), dtype=float)
    arr.setflags(write=False)
    return arr


def _horner(coeffs, z):
    acc = 0
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


class CFunction:
    """Finite combination of basis elements with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[BasisElem, object] = {}
        for b, v in (terms or {}).items():
            b = BasisElem(*b) if not isinstance(b, BasisElem) else b
            if b.c.kind == P and b.c.k < 1:
                raise ValueError("Ppow index must be >= 1")
            if b.u and b.u[-1] != 1:
                raise ValueError("basis words must end in x1")
            if b.n < 0:
                raise ValueError("log power must be non-negative")
            v = v if isinstance(v, ZetaConst) else Fraction(v)
            if v:
                self.terms[b] = self.terms.get(b, 0) + v
                if not self.terms[b]:
                    del self.terms[b]

    @classmethod
    def _raw(cls, terms: dict) -> CFunction:
        f = cls.__new__(cls)
        f.terms = {
            b: (v.rational_part() if isinstance(v, ZetaConst) and v.is_rational() else v)
            for b, v in terms.items()
            if v
        }
        return f

    # constructors

    @classmethod
    def constant(cls, c=1) -> CFunction:
        return cls({BasisElem(ONE, (), 0): c})

    @classmethod
    def monomial(cls, a: int, b: int = 0) -> CFunction:
        """``z^a (1-z)^-b``, normalized."""
        return cls._raw({BasisElem(c, (), 0): v for c, v in normalize_coeff(a, b).items()})

    @classmethod
    def log_power(cls, n: int) -> CFunction:
        """``log(z)^n / n!``."""
        return cls({BasisElem(ONE, (), n): 1})

    @classmethod
    def basis(cls, c: Coeff, u=(), n: int = 0) -> CFunction:
        u = u.letters if isinstance(u, Word) else tuple(u)
        return cls({BasisElem(c, u, n): 1})

    @classmethod
    def from_word(cls, w: Word | tuple) -> CFunction:
        return cls._raw(dict(_from_word(w.letters if isinstance(w, Word) else tuple(w))))

    @classmethod
    def from_poly(cls, p: NCPoly) -> CFunction:
        out = CFunction()
        for w, c in p.terms.items():
            out = out + CFunction.from_word(w).scale(c)
        return out

    # basics

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CFunction.constant(other)
        if not isinstance(other, CFunction):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, ZetaConst)):
            other = CFunction.constant(other)
        if not isinstance(other, CFunction):
            return NotImplemented
        out = dict(self.terms)
        for b, v in other.terms.items():
            out[b] = out.get(b, 0) + v
        return CFunction._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return CFunction._raw({b: -v for b, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ZetaConst)):
            other = CFunction.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> CFunction:
        if not isinstance(c, ZetaConst):
            c = Fraction(c)
        return CFunction._raw({b: v * c for b, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ZetaConst)):
            return self.scale(other)
        if isinstance(other, CFunction):
            return self.mul(other)
        return NotImplemented

    __rmul__ = __mul__

    def mul(self, other: CFunction) -> CFunction:
        out: dict = {}
        for b1, v1 in self.terms.items():
            for b2, v2 in other.terms.items():
                _acc_product(out, b1, b2, v1 * v2)
        return CFunction._raw(out)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: _sort_key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for b, v in self.items():
            coef = fmt_q(v) if not isinstance(v, ZetaConst) else f"({v})"
            parts.append(f"{coef}*{b}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CFunction({str(self)!r})"

    def to_json(self) -> list[dict]:
        out = []
        for b, v in self.items():
            out.append(
                {
                    "coeff_basis": str(b.c),
                    "u": Word(Alphabet.X, b.u).names(),
                    "log_pow": b.n,
                    "coef": v.to_json() if isinstance(v, ZetaConst) else fmt_q(v),
                }
            )
        return out

    def is_exact_rational(self) -> bool:
        return all(not isinstance(v, ZetaConst) or v.is_rational() for v in self.terms.values())

    # calculus

    def deriv(self) -> CFunction:
        out: dict = {}
        for b, v in self.terms.items():
            for (a, bb, u, n), w in _deriv_raw(b):
                _acc_mono(out, a, bb, u, n, v * w)
        return CFunction._raw(out)

    def theta0(self) -> CFunction:
        """z d/dz."""
        out: dict = {}
        for b, v in self.terms.items():
            for (a, bb, u, n), w in _deriv_raw(b):
                _acc_mono(out, a + 1, bb, u, n, v * w)
        return CFunction._raw(out)

    def theta1(self) -> CFunction:
        """(1 - z) d/dz."""
        out: dict = {}
        for b, v in self.terms.items():
            for (a, bb, u, n), w in _deriv_raw(b):
                _acc_mono(out, a, bb - 1, u, n, v * w)
        return CFunction._raw(out)

    def times_monomial(self, a: int, b: int = 0) -> CFunction:
        """Multiply by ``z^a (1-z)^-b``."""
        out: dict = {}
        for e, v in self.terms.items():
            ea, eb = _ab(e.c)
            _acc_mono(out, ea + a, eb + b, e.u, e.n, v)
        return CFunction._raw(out)

    def iota0(self) -> CFunction:
        """Section of θ0: per basis term, integrate ds/s from 0 (ind >= 1) or from 1 (ind <= 0)."""
        total = CFunction()
        bad = []
        for b, v in self.items():
            integrand = CFunction.basis(b.c, b.u, b.n).times_monomial(-1)
            anti = _primitive(integrand)
            try:
                const = limit_at(anti, 0 if ind(b) >= 1 else 1)
            except DivergentConstantError as exc:
                bad.append((b, str(exc)))
                continue
            total = total + (anti - const).scale(v)
        if bad:
            names = "; ".join(f"{b} (ind {ind(b)}): {why}" for b, why in bad)
            raise DivergentConstantError(f"divergent integration constant for {names}", [b for b, _ in bad])
        return total

    def iota1(self) -> CFunction:
        """Section of θ1: integrate ds/(1-s) from 0."""
        anti = _primitive(self.times_monomial(0, 1))
        try:
            const = limit_at(anti, 0)
        except DivergentConstantError as exc:
            raise DivergentConstantError(
                f"divergent integration constant at 0: {exc}", exc.terms
            ) from None
        return anti - const

    # numerics

    def eval(self, z, trunc: int = 2000):
        """Numeric value at z (|z| < 1 whenever a Li_u factor is present)."""
        zc = complex(z)
        real = isinstance(z, (int, float, Fraction)) and 0 < float(z)
        total = 0j
        logz = None
        for b, v in self.terms.items():
            if b.u and abs(zc) >= 1:
                raise ValueError(f"{b}: the series for Li needs |z| < 1")
            if b.c.kind == Z:
                if zc == 0 and (b.c.k < 0 or b.n > 0):
                    raise ValueError(f"{b} is singular at z = 0")
                cz = zc**b.c.k
            else:
                if zc == 1:
                    raise ValueError(f"{b} is singular at z = 1")
                cz = (1 - zc) ** (-b.c.k)
            term = complex(v) * cz
            if b.u:
                term *= _horner(_li_float_coeffs(b.u, trunc), zc)
            if b.n:
                if logz is None:
                    logz = cmath.log(zc)
                term *= logz**b.n / factorial(b.n)
            total += term
        return total.real if real else total

    # limits

    def limit(self, point: int):
        return limit_at(self, point)


def _sort_key(b: BasisElem):
    return (b.c.kind, b.c.k, len(b.u), b.u, b.n)


# accumulation helpers


def _acc_mono(out: dict, a: int, b: int, u: tuple, n: int, v):
    for c, w in _normalize(a, b):
        key = BasisElem(c, u, n)
        out[key] = out.get(key, 0) + v * w


def _acc_product(out: dict, b1: BasisElem, b2: BasisElem, v):
    a1, p1 = _ab(b1.c)
    a2, p2 = _ab(b2.c)
    n = b1.n + b2.n
    v = v * comb(n, b1.n)
    for w, m in shuffle_words(b1.u, b2.u).items():
        _acc_mono(out, a1 + a2, p1 + p2, w, n, v * m)


@lru_cache(maxsize=None)
def _deriv_raw(b: BasisElem) -> tuple:
    """d/dz of a basis element as ((z-exp, p-exp, u, n), coef) pieces, unnormalized."""
    a, p = _ab(b.c)
    out = []
    if a:
        out.append(((a - 1, p, b.u, b.n), a))
    if p:
        out.append(((a, p + 1, b.u, b.n), p))
    if b.u:
        head, rest = b.u[0], b.u[1:]
        out.append(((a - 1, p, rest, b.n) if head == 0 else (a, p + 1, rest, b.n), 1))
    if b.n:
        out.append(((a - 1, p, b.u, b.n - 1), 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _from_word(w: tuple) -> tuple:
    if 1 not in w:
        return ((BasisElem(ONE, (), len(w)), Fraction(1)),)
    last = len(w) - 1 - w[::-1].index(1)
    u, n = w[:last], len(w) - last - 1
    out = {}
    for m, poly in x0_tail_eliminate(Word(Alphabet.X, u), n).items():
        for v, c in poly.terms.items():
            key = BasisElem(ONE, v + (1,), m)
            out[key] = out.get(key, 0) + c
    return tuple((b, c) for b, c in out.items() if c)


def from_word(w: Word | tuple) -> CFunction:
    """Li_w in the basis B."""
    return CFunction.from_word(w)


def mul(f: CFunction, g: CFunction) -> CFunction:
    return f.mul(g)


def theta0(f: CFunction) -> CFunction:
    return f.theta0()


def theta1(f: CFunction) -> CFunction:
    return f.theta1()


def iota0(f: CFunction) -> CFunction:
    return f.iota0()


def iota1(f: CFunction) -> CFunction:
    return f.iota1()


def ind(b: BasisElem) -> int:
    """Index map choosing the ι0 basepoint."""
    k = b.c.k if b.c.kind == Z else 0
    return k + len(b.u)


# antiderivatives


def _primitive(f: CFunction) -> CFunction:
    out: dict = {}
    for b, v in f.terms.items():
        for key, w in _prim(b):
            out[key] = out.get(key, 0) + v * w
    return CFunction._raw(out)


def _word_times_log(u: tuple, n: int):
    """Li_u * log^n z / n! = Li of u sh x0^n."""
    return shuffle_words(u, (0,) * n).items()


@lru_cache(maxsize=None)
def _prim(b: BasisElem) -> tuple:
    """An antiderivative of one basis element, as ((BasisElem, coef), ...)."""
    out: dict = {}

    def add(func_terms, scale):
        for key, w in func_terms:
            out[key] = out.get(key, 0) + scale * w

    c, u, n = b
    if c == Coeff(Z, -1) or c == Coeff(P, 1):
        head = 0 if c.kind == Z else 1
        for w, m in _word_times_log(u, n):
            add(_from_word((head,) + w), m)
    else:
        # integrate by parts against G with G' = c
        if c.kind == Z:
            g_ab, g_scale = (c.k + 1, 0), Fraction(1, c.k + 1)
        else:
            g_ab, g_scale = (0, c.k - 1), Fraction(1, c.k - 1)
        # G * W
        head: dict = {}
        _acc_mono(head, g_ab[0], g_ab[1], u, n, g_scale)
        add(head.items(), 1)
        # - ∫ G W'
        if u or n:
            inner: dict = {}
            for (a, bb, uu, nn), w in _deriv_raw(BasisElem(ONE, u, n)):
                _acc_mono(inner, a + g_ab[0], bb + g_ab[1], uu, nn, w * g_scale)
            for key, w in inner.items():
                if w:
                    add(_prim(key), -w)
    return tuple((k, v) for k, v in out.items() if v)


def primitive(f: CFunction) -> CFunction:
    """Some antiderivative of f inside C{Li_w} (no constant fixed)."""
    return _primitive(f)


# limits at 0 and 1


def _limit0(f: CFunction):
    coeffs: dict[tuple[int, int], object] = {}

    def add(order, n, v):
        key = (order, n)
        coeffs[key] = coeffs.get(key, 0) + v

    for b, v in f.terms.items():
        if b.c.kind == P:
            if not b.u:
                add(0, b.n, v)  # (1-z)^-l = 1 + O(z)
            continue
        k = b.c.k
        if not b.u:
            if k <= 0:
                add(k, b.n, v)
            continue
        if k + 1 > 0:
            continue  # Li_u = O(z)
        series = li_taylor_exact(b.u, -k)
        for m in range(1, -k + 1):
            if series[m]:
                add(k + m, b.n, v * series[m])
    bad = sorted(key for key, v in coeffs.items() if v and key != (0, 0))
    if bad:
        desc = ", ".join(f"z^{o} log^{n}" for o, n in bad)
        raise DivergentConstantError(f"limit at z=0 is infinite ({desc})")
    return coeffs.get((0, 0), Fraction(0))


def _log1m_power_series(n: int, order: int) -> list[Fraction]:
    """Coefficients in t of log(1-t)^n / n!, up to t^order."""
    base = [Fraction(0)] + [Fraction(-1, m) for m in range(1, order + 1)]
    out = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(n):
        new = [Fraction(0)] * (order + 1)
        for i, a in enumerate(out):
            if a:
                for j in range(1, order + 1 - i):
                    new[i + j] += a * base[j]
        out = new
    return [x / factorial(n) for x in out]


def _limit1(f: CFunction):
    laurent: dict[int, object] = {}  # t-order -> coefficient, t = 1 - z
    value = Fraction(0)
    divergent: dict[int, object] = {}

    def add_reg(u, scale):
        nonlocal value
        for j, poly in regularize_x1(u).items():
            zc = ZetaConst(poly.terms) * scale
            if j == 0:
                value = zc + value
            else:
                divergent[j] = divergent.get(j, 0) + zc

    for b, v in f.terms.items():
        if b.c.kind == Z:
            if b.n:
                continue  # z^k log^n z -> 0
            if b.u:
                add_reg(b.u, v)
            else:
                laurent[0] = laurent.get(0, 0) + v
            continue
        l = b.c.k
        if b.u:
            if b.n > l:
                continue
            if b.n == l:
                add_reg(b.u, v * Fraction((-1) ** l, factorial(l)))
                continue
            raise DivergentConstantError(
                f"limit at z=1 of {b} is infinite"
            )
        series = _log1m_power_series(b.n, l)
        for m, a in enumerate(series):
            if a:
                laurent[m - l] = laurent.get(m - l, 0) + v * a
    bad = [o for o, v in laurent.items() if o < 0 and v]
    bad_logs = [j for j, v in divergent.items() if v]
    if bad or bad_logs:
        parts = [f"(1-z)^{o}" for o in sorted(bad)] + [f"log(1-z)^{j}" for j in sorted(bad_logs)]
        raise DivergentConstantError(f"limit at z=1 is infinite ({', '.join(parts)})")
    total = value + laurent.get(0, 0)
    if isinstance(total, ZetaConst) and total.is_rational():
        total = total.rational_part()
    return total


def limit_at(f: CFunction, point: int):
    """lim_{z -> point} f(z) for point 0 or 1, exact (Fraction or ZetaConst)."""
    if point == 0:
        return _limit0(f)
    if point == 1:
        return _limit1(f)
    raise ValueError("limits are taken at 0 or 1")


def eval_function(f: CFunction, z, trunc: int = 2000):
    return f.eval(z, trunc)


__all__ = [
    "Coeff",
    "Zpow",
    "Ppow",
    "BasisElem",
    "CFunction",
    "DivergentConstantError",
    "normalize_coeff",
    "from_word",
    "mul",
    "theta0",
    "theta1",
    "iota0",
    "iota1",
    "ind",
    "primitive",
    "limit_at",
    "li_taylor_exact",
    "eval_function",
]
