"""
Derivatives of the compactly supported bump s -> exp(-1/(1-s^2)).

With q = 1 - s^2 the k-th derivative is P_k(s) * q^(-2k) * exp(-1/q), where
P_0 = 1 and P_{k+1} = P_k' q^2 + 4 k s P_k q - 2 s P_k.
"""

import math
from functools import lru_cache

from numpy.polynomial import Polynomial

_S = Polynomial([0.0, 1.0])
_Q = Polynomial([1.0, 0.0, -1.0])


@lru_cache(maxsize=None)
def bump_polynomial(order):
    if order < 0:
        raise ValueError("Derivative order must be non-negative")
    if order == 0:
        return Polynomial([1.0])
    previous = bump_polynomial(order - 1)
    k = order - 1
    return previous.deriv() * _Q * _Q + 4 * k * _S * previous * _Q - 2 * _S * previous


def bump_value(s, order=0):
    """Exactly 0.0 for |s| >= 1."""
    if abs(s) >= 1.0:
        return 0.0
    q = 1.0 - s * s
    # log space keeps q^(-2k) from overflowing before exp(-1/q) damps it
    return math.exp(-1.0 / q - 2 * order * math.log(q)) * float(bump_polynomial(order)(s))
