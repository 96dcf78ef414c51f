"""Pure-Python versions of the hot kernels.

Words are plain tuples of non-negative letter indices.  Both functions here
have drop-in compiled twins in ``_ckernels.pyx``; ``polystar.kernels`` picks
one of the two at import time.
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _shuffle_rec(a, b):
    # ua . vb = (u sh vb) a + (ua sh v) b
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out = {}
    la, lb = a[-1], b[-1]
    for w, c in _shuffle_rec(a[:-1], b).items():
        key = w + (la,)
        out[key] = out.get(key, 0) + c
    for w, c in _shuffle_rec(a, b[:-1]).items():
        key = w + (lb,)
        out[key] = out.get(key, 0) + c
    return out


def shuffle_counts(a, b):
    """Shuffle of two words as a dict ``word -> multiplicity``."""
    if len(a) > len(b):
        a, b = b, a
    return dict(_shuffle_rec(tuple(a), tuple(b)))


def li_taylor(letters, n_max):
    """Float Taylor coefficients ``c[0..n_max]`` of Li_w(z) for w over {0, 1}.

    ``w`` must be empty or end with the letter 1 so that Li_w is analytic at 0.
    Letters are consumed right to left: a 0 divides by n, a 1 takes the
    exclusive prefix sum and then divides by n.
    """
    c = np.zeros(n_max + 1)
    c[0] = 1.0
    n = np.arange(1, n_max + 1, dtype=float)
    for x in reversed(letters):
        if x == 0:
            c[1:] = c[1:] / n
        else:
            c[1:] = np.cumsum(c)[:-1] / n
        c[0] = 0.0
    return c
