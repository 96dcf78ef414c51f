"""Negative polylogarithms, their harmonic sums and the binomial compaction.

For ``w = y_{s1} ... y_{sr}``::

    Li-_w(z) = Σ_{n1 > ... > nr > 0} n1^s1 ... nr^sr z^n1 = Σ_k a_k (1 - z)^-k
    H-_w(N)  = Σ_{N >= n1 > ... > nr > 0} n1^s1 ... nr^sr  = Σ_k a_k C(N + k, k)

with integer a_k, 0 <= k <= s1 + ... + sr + r.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from polystar.starpoly import StarPoly
from polystar.words import Alphabet, Word, parse_word


def _y_word(w) -> tuple:
    if isinstance(w, str):
        w = parse_word(w, Alphabet.Y0)
    if isinstance(w, Word):
        if w.letters and w.alphabet is not Alphabet.Y0:
            raise ValueError("expected a word over Y0")
        return w.letters
    return tuple(int(s) for s in w)


def degree_bound(w) -> int:
    """weight(w) + |w|, the top index of the a-vector."""
    s = _y_word(w)
    return sum(s) + len(s)


@lru_cache(maxsize=None)
def _a(s: tuple) -> tuple:
    if not s:
        return (1,)
    a = list(_a(s[1:]))
    # y0 prefix: a'_i = a_{i-1} - a_i, one entry longer
    a = [(a[i - 1] if i >= 1 else 0) - (a[i] if i < len(a) else 0) for i in range(len(a) + 1)]
    # y_k from y_{k-1}: a'_i = (i-1) a_{i-1} - i a_i
    for _ in range(s[0]):
        a = [
            ((i - 1) * a[i - 1] if i >= 1 else 0) - (i * a[i] if i < len(a) else 0)
            for i in range(len(a) + 1)
        ]
    return tuple(a)


def a_coeffs(w) -> list[int]:
    """The a-vector of Li-_w, by the left-letter recursion."""
    return list(_a(_y_word(w)))


def a_coeffs_oracle(w) -> list[Fraction]:
    """The a-vector by a second route: polynomials in u = 1/(1-z).

    Reading w right to left, ``y0`` multiplies by ``u - 1`` and each further
    unit of the subscript applies ``θ0 = (u^2 - u) d/du``.
    """
    p = [Fraction(1)]
    for s in reversed(_y_word(w)):
        # times (u - 1)
        p = [(p[i - 1] if i >= 1 else 0) - (p[i] if i < len(p) else 0) for i in range(len(p) + 1)]
        for _ in range(s):
            dp = [i * p[i] for i in range(1, len(p))]  # p'
            out = [Fraction(0)] * (len(p) + 1)
            for j, c in enumerate(dp):
                out[j + 2] += c  # u^2 * u^j
                out[j + 1] -= c  # u * u^j
            p = out
    return [Fraction(c) for c in p]


def neg_li_poly(w) -> StarPoly:
    """P_w = Σ a_i (x1*)^⧢i, whose Li is Li-_w."""
    return StarPoly({((), 0, i): a for i, a in enumerate(a_coeffs(w))})


def neg_li_numeric(w, z: float, n_max: int) -> float:
    """Nested sum Σ_{n_max >= n1 > ... > nr > 0} Π n_i^s_i z^n1 (oracle)."""
    s = _y_word(w)
    # inner[n] = H_{tail}(n - 1) style running sums, evaluated right to left
    tail = [1.0] * (n_max + 1)  # value for the empty tail at every bound
    for idx in range(len(s) - 1, -1, -1):
        new = [0.0] * (n_max + 1)
        acc = 0.0
        for n in range(1, n_max + 1):
            if idx == 0:
                acc += float(n) ** s[idx] * tail[n - 1] * z**n
            else:
                acc += float(n) ** s[idx] * tail[n - 1]
            new[n] = acc
        tail = new
    return tail[n_max] if s else 1.0


def neg_hsum(w, N: int) -> Fraction:
    """H-_w(N) = Σ a_k C(N + k, k)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return Fraction(sum(a * comb(N + k, k) for k, a in enumerate(a_coeffs(w))))


def neg_hsum_oracle(w, N: int) -> Fraction:
    """Nested sums Σ_{N >= n1 > ... > nr > 0} Π n_i^s_i, summed directly."""
    s = _y_word(w)
    h = [1] * (N + 1)  # empty word: 1 at every bound
    for si in reversed(s):
        new = [0] * (N + 1)
        acc = 0
        for n in range(1, N + 1):
            acc += n**si * h[n - 1]
            new[n] = acc
        h = new
    return Fraction(h[N])


# polynomials in N, as coefficient lists of Fractions


def poly_binom(n: int, m: int) -> list[Fraction]:
    """C(N + n, m) as a polynomial in N."""
    p = [Fraction(1)]
    for j in range(m):
        c = n - j  # factor (N + c)
        q = [Fraction(0)] * (len(p) + 1)
        for i, a in enumerate(p):
            q[i] += a * c
            q[i + 1] += a
        p = q
    f = factorial(m)
    return [a / f for a in p]


def poly_add(p, q, scale=1) -> list[Fraction]:
    out = [Fraction(0)] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, a in enumerate(q):
        out[i] += scale * a
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_eval(p, N) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * N + a
    return acc


def combination_poly(triples) -> list[Fraction]:
    """Σ c C(N + n, m) over (c, n, m) triples."""
    out: list[Fraction] = []
    for c, n, m in triples:
        out = poly_add(out, poly_binom(n, m), Fraction(c))
    return out


def neg_hsum_poly(w) -> list[Fraction]:
    """H-_w(N) as a polynomial in N (lowest degree first, trailing zeros removed)."""
    return combination_poly((a, k, k) for k, a in enumerate(a_coeffs(w)))


class FaulhaberBoundError(ArithmeticError):
    """No reduction within floor(d/2) + 1 terms was found.

    ``terms`` holds the shortest reduction the search did find (possibly longer
    than the bound), so callers can still report it.
    """

    def __init__(self, msg: str, terms=None):
        super().__init__(msg)
        self.terms = terms


def _step(rest, n):
    m = len(rest) - 1
    b = poly_binom(n, m)
    c = rest[-1] / b[-1]
    return c, poly_add(rest, b, -c)


def _two_degree_shift(rest) -> Fraction | None:
    """The shift n for which c C(N+n, m) also matches the N^(m-1) coefficient."""
    m = len(rest) - 1
    if m < 1:
        return None
    # C(N+n, m) = (N^m + (m n - m(m-1)/2) N^(m-1) + ...) / m!
    lead, sub = rest[-1], rest[-2]
    return (sub / lead + Fraction(m * (m - 1), 2)) / m


def _search(rest, budget, window):
    if not rest:
        return []
    if budget == 0:
        return None
    m = len(rest) - 1
    if m == 0:
        return [(rest[0], 0, 0)]
    star = _two_degree_shift(rest)
    if star is not None and star.denominator == 1 and 0 <= star <= window:
        cands = [int(star)]
    else:
        lo = math.floor(star) if star is not None else 0
        cands = [n for n in (lo + 1, lo) if 0 <= n <= window]
    for n in cands:
        c, r = _step(rest, n)
        sub = _search(r, budget - 1, window)
        if sub is not None:
            return [(c, n, m)] + sub
    return None


def faulhaber_reduce(w, max_shift: int | None = None) -> list[tuple[Fraction, int, int]]:
    """Compact Σ a_k C(N+k, k) into few terms c C(N+n, m).

    Works from the top degree down.  When some integer shift n lets one term
    cancel the two leading coefficients it is taken; otherwise shifts near the
    real solution, its floor and ceiling, are tried (iterative deepening on
    the term count).  Shifts are kept in 0..max_shift.
    The result must respect ``floor((weight(w) + |w|) / 2) + 1`` terms,
    otherwise :class:`FaulhaberBoundError` is raised.
    """
    d = degree_bound(w)
    target = neg_hsum_poly(w)
    window = max_shift if max_shift is not None else d + 1
    bound = d // 2 + 1
    for budget in range(1, bound + 1):
        found = _search(target, budget, window)
        if found is not None:
            assert combination_poly(found) == target
            return found
    best = None
    for budget in range(bound + 1, d + 3):
        best = _search(target, budget, window)
        if best is not None:
            break
    raise FaulhaberBoundError(
        f"no reduction of {Word(Alphabet.Y0, _y_word(w))} within {bound} terms", best
    )
