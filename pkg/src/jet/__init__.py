"""Truncated Taylor arithmetic at a point.

A :class:`Jet` stores raw derivative values ``[f(x), f'(x), ..., f^(m)(x)]``
at an anchor ``x``. Products and quotients are carried out on the
factorial-scaled Taylor coefficients and converted back, which is the
general Leibniz rule written as a convolution.
"""

import logging
from typing import Iterable, Union

import numpy as np
from scipy.special import factorial

from src.errors import AnchorMismatch, DivisionBySingular, NonFiniteJet

logger = logging.getLogger(__name__)

# Relative threshold below which a divisor's value counts as zero.
SINGULAR_FLOOR = 1e-13

_FACTORIALS = factorial(np.arange(171), exact=False)

Scalar = Union[int, float]


class Jet:
    """Derivative values of a function at one point, truncated at ``order``"""

    __slots__ = ("anchor", "_coeffs")

    def __init__(self, anchor: float, coeffs: Iterable[float]):
        arr = np.array(coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("Jet needs a nonempty 1-d coefficient array")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteJet(f"Non-finite jet coefficient at x={anchor!r}: {arr.tolist()}")
        arr.setflags(write=False)
        self.anchor = float(anchor)
        self._coeffs = arr

    # Constructors

    @classmethod
    def constant(cls, anchor: float, value: float, order: int) -> "Jet":
        coeffs = np.zeros(order + 1)
        coeffs[0] = value
        return cls(anchor, coeffs)

    @classmethod
    def variable(cls, anchor: float, order: int) -> "Jet":
        """Jet of the identity map t -> t at ``anchor``"""
        coeffs = np.zeros(order + 1)
        coeffs[0] = anchor
        if order >= 1:
            coeffs[1] = 1.0
        return cls(anchor, coeffs)

    @classmethod
    def from_taylor(cls, anchor: float, taylor: np.ndarray) -> "Jet":
        taylor = np.asarray(taylor, dtype=float)
        return cls(anchor, taylor * _FACTORIALS[: taylor.size])

    # Views

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    @property
    def value(self) -> float:
        return float(self._coeffs[0])

    def taylor(self) -> np.ndarray:
        """Coefficients divided by k!, i.e. the Taylor polynomial in (t - anchor)"""
        return self._coeffs / _FACTORIALS[: self._coeffs.size]

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"Cannot truncate order {self.order} jet to order {order}")
        if order == self.order:
            return self
        return Jet(self.anchor, self._coeffs[: order + 1])

    def derivative(self) -> "Jet":
        """Jet of f' (drops the value coefficient, order decreases by one)"""
        if self.order == 0:
            raise ValueError("Order-0 jet has no derivative information")
        return Jet(self.anchor, self._coeffs[1:])

    def __len__(self) -> int:
        return self._coeffs.size

    def __getitem__(self, index):
        item = self._coeffs[index]
        return float(item) if np.ndim(item) == 0 else item

    def __iter__(self):
        return iter(self._coeffs.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        return self.anchor == other.anchor and np.array_equal(self._coeffs, other._coeffs)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Jet(anchor={self.anchor!r}, coeffs={self._coeffs.tolist()!r})"

    # Operators

    def __add__(self, other):
        if isinstance(other, Jet):
            return add(self, other)
        coeffs = self._coeffs.copy()
        coeffs[0] += other
        return Jet(self.anchor, coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return sub(self, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return div(self, other)
        return scale(self, 1.0 / other)

    def __rtruediv__(self, other):
        return div(Jet.constant(self.anchor, other, self.order), self)


def _common(a: Jet, b: Jet) -> int:
    if a.anchor != b.anchor:
        raise AnchorMismatch(f"Jets anchored at {a.anchor!r} and {b.anchor!r}")
    return min(a.order, b.order)


def add(a: Jet, b: Jet) -> Jet:
    m = _common(a, b)
    return Jet(a.anchor, a.coeffs[: m + 1] + b.coeffs[: m + 1])


def sub(a: Jet, b: Jet) -> Jet:
    m = _common(a, b)
    return Jet(a.anchor, a.coeffs[: m + 1] - b.coeffs[: m + 1])


def scale(a: Jet, c: Scalar) -> Jet:
    return Jet(a.anchor, a.coeffs * c)


def mul(a: Jet, b: Jet) -> Jet:
    """Leibniz product: (ab)^(m) = sum_r C(m,r) a^(r) b^(m-r)"""
    m = _common(a, b)
    taylor = np.convolve(a.taylor()[: m + 1], b.taylor()[: m + 1])[: m + 1]
    return Jet.from_taylor(a.anchor, taylor)


def taylor_div(ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
    """Quotient of two Taylor coefficient arrays of equal length; tb[0] must be nonzero"""
    q = np.zeros(ta.size)
    for k in range(ta.size):
        acc = ta[k]
        if k:
            acc -= np.dot(tb[1 : k + 1], q[k - 1 :: -1])
        q[k] = acc / tb[0]
    return q


def div(a: Jet, b: Jet) -> Jet:
    """Jet q with mul(q, b) == a up to the common order"""
    m = _common(a, b)
    head = b.coeffs[: m + 1]
    floor = SINGULAR_FLOOR * float(np.max(np.abs(head)))
    if abs(head[0]) <= floor:
        raise DivisionBySingular(
            f"Divisor value {head[0]!r} at x={b.anchor!r} is below singular floor {floor!r}"
        )
    return Jet.from_taylor(a.anchor, taylor_div(a.taylor()[: m + 1], b.taylor()[: m + 1]))


def antiderivative_shift(g: Jet, integral_value: float) -> Jet:
    """Jet of x -> integral of g, given the integral's value at the anchor"""
    return Jet(g.anchor, np.concatenate(([integral_value], g.coeffs)))


__all__ = [
    "Jet",
    "SINGULAR_FLOOR",
    "add",
    "sub",
    "scale",
    "mul",
    "div",
    "taylor_div",
    "antiderivative_shift",
]
