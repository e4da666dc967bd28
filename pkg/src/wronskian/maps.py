"""Evaluable smooth functions that answer jet queries"""

import logging
import threading
from abc import ABC, abstractmethod
from typing import Dict, Optional, Sequence, Tuple, Union

from src.expr import Expression, parse
from src.jet import Jet

logger = logging.getLogger(__name__)


class SmoothMap(ABC):
    """A real function on an interval that can report its jet at any point"""

    kind: str = "abstract"

    @abstractmethod
    def eval_jet(self, x: float, order: int) -> Jet:
        """Jet [f(x), ..., f^(order)(x)]; deterministic and prefix-consistent in order"""

    def value(self, x: float) -> float:
        return self.eval_jet(x, 0).value

    def __call__(self, x: float) -> float:
        return self.value(x)


class ExpressionMap(SmoothMap):
    """SmoothMap backed by a parsed expression"""

    kind = "expression"

    def __init__(self, expression: Expression):
        self.expression = expression

    def eval_jet(self, x: float, order: int) -> Jet:
        return self.expression.eval_jet(x, order)

    def value(self, x: float) -> float:
        return self.expression.value(x)

    def __repr__(self) -> str:
        return f"ExpressionMap({self.expression.source_text!r})"


class LinearCombination(SmoothMap):
    """sum_i c_i f_i over other maps"""

    kind = "combination"

    def __init__(self, terms: Sequence[Tuple[float, SmoothMap]]):
        if not terms:
            raise ValueError("LinearCombination needs at least one term")
        self.terms = tuple((float(c), f) for c, f in terms)

    def eval_jet(self, x: float, order: int) -> Jet:
        total = None
        for c, f in self.terms:
            part = f.eval_jet(x, order) * c
            total = part if total is None else total + part
        return total

    def value(self, x: float) -> float:
        return sum(c * f.value(x) for c, f in self.terms)

    def __repr__(self) -> str:
        return f"LinearCombination({len(self.terms)} terms)"


def scaled(f: SmoothMap, factor: float) -> SmoothMap:
    return LinearCombination([(factor, f)])


MapLike = Union[SmoothMap, Expression, str]


def as_map(obj: MapLike) -> SmoothMap:
    if isinstance(obj, SmoothMap):
        return obj
    if isinstance(obj, Expression):
        return ExpressionMap(obj)
    if isinstance(obj, str):
        return ExpressionMap(parse(obj))
    raise TypeError(f"Cannot use {type(obj).__name__} as a SmoothMap")


class JetCache:
    """Jets memoized by exact (x, order)

    Every order is computed on its own, so a repeated query returns the same
    bits no matter which other orders were requested in between.
    """

    def __init__(self):
        self._jets: Dict[Tuple[float, int], Jet] = {}
        self._lock = threading.Lock()

    def get(self, x: float, order: int) -> Optional[Jet]:
        return self._jets.get((x, order))

    def put(self, jet: Jet) -> Jet:
        """Store jet unless one is already cached; returns the cached jet"""
        with self._lock:
            return self._jets.setdefault((jet.anchor, jet.order), jet)

    def __len__(self) -> int:
        return len(self._jets)


class CachedMap(SmoothMap):
    """SmoothMap whose jets are expensive and memoized by exact (x, order)"""

    def __init__(self):
        self._cache = JetCache()

    @abstractmethod
    def _compute_jet(self, x: float, order: int) -> Jet:
        """Uncached jet computation"""

    def eval_jet(self, x: float, order: int) -> Jet:
        x = float(x)
        jet = self._cache.get(x, order)
        if jet is None:
            jet = self._cache.put(self._compute_jet(x, order))
        return jet
