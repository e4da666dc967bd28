"""Wronskian machinery over jets.

Matrix convention: entry (i, j) is f_j^(i)(x), functions are columns and
derivative orders are rows. ``W_k`` is the determinant with column k
replaced by the unit vector (0, ..., 0, 1), i.e. the Cramer numerator of
variation of parameters.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from src.errors import DivisionBySingular, SingularWronskian
from src.jet import Jet, div
from src.wronskian.determinant import determinant
from src.wronskian.maps import (
    CachedMap,
    ExpressionMap,
    JetCache,
    LinearCombination,
    MapLike,
    SmoothMap,
    as_map,
    scaled,
)

logger = logging.getLogger(__name__)


class WronskiFrame:
    """Ordered functions f_1..f_n whose Wronskian matrix is taken"""

    def __init__(self, functions: Sequence[MapLike]):
        if not functions:
            raise ValueError("WronskiFrame needs at least one function")
        self.functions = tuple(as_map(f) for f in functions)

    @property
    def n(self) -> int:
        return len(self.functions)

    def jets(self, x: float, order: int) -> List[Jet]:
        return [f.eval_jet(x, order) for f in self.functions]

    def swapped(self, i: int, j: int) -> "WronskiFrame":
        functions = list(self.functions)
        functions[i], functions[j] = functions[j], functions[i]
        return WronskiFrame(functions)


def _entry(jet: Jet, row: int, jet_order: int) -> Jet:
    """Jet of f^(row), read off the jet of f"""
    return Jet(jet.anchor, jet.coeffs[row : row + jet_order + 1])


def _matrix(jets: Sequence[Jet], rows: int, jet_order: int) -> List[List[Jet]]:
    return [[_entry(jet, i, jet_order) for jet in jets] for i in range(rows)]


def wronskian(frame: WronskiFrame, x: float, jet_order: int = 0,
              jets: Optional[Sequence[Jet]] = None) -> Jet:
    """Jet of W(f_1..f_n) at x"""
    n = frame.n
    if jets is None:
        jets = frame.jets(x, (n - 1) + jet_order)
    return determinant(_matrix(jets, n, jet_order))


def replaced_wronskian(frame: WronskiFrame, k: int, x: float, jet_order: int = 0,
                       jets: Optional[Sequence[Jet]] = None) -> Jet:
    """Jet of W_k: (-1)^(n+k) times the minor without the last row and column k"""
    n = frame.n
    if not 1 <= k <= n:
        raise IndexError(f"k={k} outside 1..{n}")
    if n == 1:
        return Jet.constant(x, 1.0, jet_order)
    if jets is None:
        jets = frame.jets(x, (n - 2) + jet_order)
    others = [jet for index, jet in enumerate(jets) if index != k - 1]
    minor = determinant(_matrix(others, n - 1, jet_order))
    return minor if (n + k) % 2 == 0 else -minor


def variation_integrands(frame: WronskiFrame, h: MapLike, x: float,
                         jet_order: int = 0) -> List[Jet]:
    """Jets of g_k = (W_k / W) * h for k = 1..n"""
    n = frame.n
    jets = frame.jets(x, (n - 1) + jet_order)
    w = wronskian(frame, x, jet_order, jets)
    h_jet = as_map(h).eval_jet(x, jet_order)
    integrands = []
    for k in range(1, n + 1):
        w_k = replaced_wronskian(frame, k, x, jet_order, jets)
        try:
            ratio = div(w_k, w)
        except DivisionBySingular as e:
            raise SingularWronskian(x, f"Wronskian of {n} functions vanishes at x={x!r}: {e}") from e
        integrands.append(ratio * h_jet)
    return integrands


def variation_integrand(frame: WronskiFrame, h: MapLike, k: int, x: float,
                        jet_order: int = 0) -> Jet:
    if not 1 <= k <= frame.n:
        raise IndexError(f"k={k} outside 1..{frame.n}")
    return variation_integrands(frame, h, x, jet_order)[k - 1]


def cramer_sums(frame: WronskiFrame, x: float) -> np.ndarray:
    """sum_k f_k^(m)(x) * (W_k / W)(x) for m = 0..n-1; expected (0, ..., 0, 1)"""
    n = frame.n
    jets = frame.jets(x, n - 1)
    ratios = [g.value for g in variation_integrands(frame, "1", x)]
    return np.array([sum(jet[m] * r for jet, r in zip(jets, ratios)) for m in range(n)])


__all__ = [
    "CachedMap",
    "ExpressionMap",
    "JetCache",
    "LinearCombination",
    "SmoothMap",
    "WronskiFrame",
    "as_map",
    "cramer_sums",
    "determinant",
    "replaced_wronskian",
    "scaled",
    "variation_integrand",
    "variation_integrands",
    "wronskian",
]
