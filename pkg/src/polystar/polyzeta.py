"""Regularized values at non-positive multi-indices and two generating-series checks.

``gamma_neg`` sends ``(-s1, ..., -sr)`` to ``Σ_k a_k / k!`` where ``a`` is the
a-vector of ``y_{s1} ... y_{sr}``.  The Newton-Girard check compares
elementary-symmetric harmonic sums with the exponential of power sums, and the
Gamma check compares ``exp(γ t - Σ ζ(n) (-t)^n / n)`` with ``1/Γ(1+t)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import factorial

from polystar.mzv import EULER_GAMMA
from polystar.neglog import a_coeffs, a_coeffs_oracle

_GAMMA = float(EULER_GAMMA)


def _word_of(s) -> tuple:
    s = [int(x) for x in s]
    if any(x > 0 for x in s):
        raise ValueError("gamma_neg takes non-positive indices only")
    return tuple(-x for x in s)


def gamma_neg(s) -> Fraction:
    """γ_{s1,...,sr} for integers s_i <= 0, exact."""
    a = a_coeffs(_word_of(s))
    return sum((Fraction(c, factorial(k)) for k, c in enumerate(a)), Fraction(0))


def gamma_neg_oracle(s) -> Fraction:
    """Same value through the independent a-vector route."""
    a = a_coeffs_oracle(_word_of(s))
    return sum((c / factorial(k) for k, c in enumerate(a)), Fraction(0))


def harmonic_sum(s, N: int) -> Fraction:
    """H_{s1,...,sr}(N) = Σ_{N >= n1 > ... > nr > 0} Π n_i^(-s_i), exact."""
    h = [Fraction(1)] * (N + 1)
    for si in reversed([int(x) for x in s]):
        new = [Fraction(0)] * (N + 1)
        acc = Fraction(0)
        for n in range(1, N + 1):
            acc += Fraction(1, n**si) * h[n - 1] if si >= 0 else n ** (-si) * h[n - 1]
            new[n] = acc
        h = new
    return h[N]


def exp_series(b: list[Fraction], kmax: int) -> list[Fraction]:
    """Coefficients of exp(Σ_{k>=1} b_k z^k) up to z^kmax (b[0] ignored)."""
    e = [Fraction(1)] + [Fraction(0)] * kmax
    for n in range(1, kmax + 1):
        e[n] = sum((k * b[k] * e[n - k] for k in range(1, n + 1) if k < len(b)), Fraction(0)) / n
    return e


def newton_girard_sides(N: int, kmax: int) -> tuple[list[Fraction], list[Fraction]]:
    """(H_{y1^k}(N))_k and the coefficients of exp(-Σ H_{y_k}(N) (-z)^k / k)."""
    left = [harmonic_sum([1] * k, N) for k in range(kmax + 1)]
    b = [Fraction(0)] + [-harmonic_sum([k], N) * (-1) ** k / k for k in range(1, kmax + 1)]
    return left, exp_series(b, kmax)


def newton_girard_check(N: int, kmax: int) -> bool:
    if N < 0 or kmax < 1:
        raise ValueError("need N >= 0 and kmax >= 1")
    left, right = newton_girard_sides(N, kmax)
    return left == right


def zeta_numeric(n: int, m: int = 100) -> float:
    """ζ(n), n >= 2: partial sum to m-1 plus an Euler-Maclaurin tail from m."""
    if n < 2:
        raise ValueError("zeta_numeric needs n >= 2")
    head = math.fsum(k ** (-n) for k in range(1, m))
    tail = (
        m ** (1 - n) / (n - 1)
        + 0.5 * m ** (-n)
        + n * m ** (-n - 1) / 12
        - n * (n + 1) * (n + 2) * m ** (-n - 3) / 720
    )
    return head + tail


def inv_gamma_1p(t: float, m: int = 2000) -> float:
    """1/Γ(1+t) from the Weierstrass product e^{γt} Π (1+t/k) e^{-t/k}, with a tail estimate."""
    if t <= -1:
        raise ValueError("need t > -1")

    def g(x):
        return math.log1p(t / x) - t / x

    def dg(x):
        return -t / (x * (x + t)) + t / (x * x)

    log_head = math.fsum(g(k) for k in range(1, m + 1))
    # Σ_{k>m} g(k) ≈ ∫_m^∞ g - g(m)/2 - g'(m)/12, and ∫_m^∞ g = t - (m+t) log(1+t/m)
    log_tail = t - (m + t) * math.log1p(t / m) - g(m) / 2 - dg(m) / 12
    return math.exp(_GAMMA * t + log_head + log_tail)


def gamma_star_lhs(t: float, n_zeta_terms: int = 60) -> float:
    s = _GAMMA * t - math.fsum(zeta_numeric(n) * (-t) ** n / n for n in range(2, n_zeta_terms + 1))
    return math.exp(s)


def gamma_star_check(t, n_zeta_terms: int = 60, product_terms: int = 2000) -> float:
    """|exp(γt - Σ_{n=2}^{n_zeta_terms} ζ(n)(-t)^n/n) - 1/Γ(1+t)| for |t| < 1."""
    t = float(Fraction(t)) if isinstance(t, str) else float(t)
    if abs(t) >= 1:
        raise ValueError("need |t| < 1")
    return abs(gamma_star_lhs(t, n_zeta_terms) - inv_gamma_1p(t, product_terms))
