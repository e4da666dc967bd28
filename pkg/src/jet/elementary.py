"""Elementary functions of jets via the usual Taylor recurrences"""

import math

import numpy as np

from src.errors import DomainError, NonFiniteJet
from src.jet import Jet, mul


def _finish(anchor: float, taylor: np.ndarray) -> Jet:
    return Jet.from_taylor(anchor, taylor)


def exp(a: Jet) -> Jet:
    t = a.taylor()
    e = np.zeros(t.size)
    try:
        e[0] = math.exp(t[0])
    except OverflowError:
        raise NonFiniteJet(f"exp overflow at x={a.anchor!r}")
    k_t = np.arange(t.size) * t
    for k in range(1, t.size):
        e[k] = np.dot(k_t[1 : k + 1], e[k - 1 :: -1]) / k
    return _finish(a.anchor, e)


def log(a: Jet) -> Jet:
    t = a.taylor()
    if t[0] <= 0.0:
        raise DomainError(f"log of nonpositive value {t[0]!r} at x={a.anchor!r}")
    out = np.zeros(t.size)
    out[0] = math.log(t[0])
    for k in range(1, t.size):
        acc = k * t[k]
        if k > 1:
            j = np.arange(1, k)
            acc -= np.dot(j * out[1:k], t[k - 1 : 0 : -1])
        out[k] = acc / (k * t[0])
    return _finish(a.anchor, out)


def sin_cos(a: Jet):
    t = a.taylor()
    s = np.zeros(t.size)
    c = np.zeros(t.size)
    s[0] = math.sin(t[0])
    c[0] = math.cos(t[0])
    k_t = np.arange(t.size) * t
    for k in range(1, t.size):
        s[k] = np.dot(k_t[1 : k + 1], c[k - 1 :: -1]) / k
        c[k] = -np.dot(k_t[1 : k + 1], s[k - 1 :: -1]) / k
    return _finish(a.anchor, s), _finish(a.anchor, c)


def sin(a: Jet) -> Jet:
    return sin_cos(a)[0]


def cos(a: Jet) -> Jet:
    return sin_cos(a)[1]


def sqrt(a: Jet) -> Jet:
    t = a.taylor()
    if t[0] <= 0.0:
        raise DomainError(f"sqrt of nonpositive value {t[0]!r} at x={a.anchor!r}")
    r = np.zeros(t.size)
    r[0] = math.sqrt(t[0])
    for k in range(1, t.size):
        acc = t[k]
        if k > 1:
            acc -= np.dot(r[1:k], r[k - 1 : 0 : -1])
        r[k] = acc / (2.0 * r[0])
    return _finish(a.anchor, r)


def power(a: Jet, n: int) -> Jet:
    """a**n for a nonnegative integer n (binary exponentiation)"""
    if n < 0:
        raise ValueError("Only nonnegative integer powers are supported")
    result = Jet.constant(a.anchor, 1.0, a.order)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result
