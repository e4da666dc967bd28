"""Variation-of-parameters particular solution and the constructed stage functions"""

import logging
import threading
from functools import partial
from typing import Dict, List, Sequence

import numpy as np

from src.analysis import CumulativeIntegral, InnerProduct
from src.jet import Jet, antiderivative_shift
from src.wronskian import WronskiFrame, variation_integrands
from src.wronskian.maps import CachedMap, MapLike, SmoothMap, as_map

logger = logging.getLogger(__name__)


class ParticularSolution(CachedMap):
    """F(x) = sum_k f_k(x) I_k(x) with I_k(x) = integral_{x0}^{x} (W_k / W) h dt

    F solves W(f_1..f_n, F) = h W(f_1..f_n) with zero initial data at x0.
    Jets are assembled as sum_k jet(f_k) * shift(jet(g_k), I_k(x)), so only
    the values I_k(x) come from quadrature.
    """

    kind = "particular"

    def __init__(self, predecessors: Sequence[MapLike], h: MapLike, x0: float,
                 ip: InnerProduct):
        super().__init__()
        self.frame = WronskiFrame(predecessors)
        self.h = as_map(h)
        self.x0 = float(x0)
        self._integrand_values: Dict[float, np.ndarray] = {}
        self._lock = threading.Lock()
        self.integrals = [
            CumulativeIntegral(partial(self._integrand, k), self.x0, (ip.a, ip.b),
                               tol=ip.quad_tol, max_subdivisions=ip.max_subdivisions)
            for k in range(self.frame.n)
        ]

    @property
    def n(self) -> int:
        return self.frame.n

    def integrand_values(self, t: float) -> np.ndarray:
        """(W_k / W)(t) h(t) for every k; all n share one set of determinants"""
        values = self._integrand_values.get(t)
        if values is None:
            values = np.array([g.value for g in variation_integrands(self.frame, self.h, t)])
            with self._lock:
                self._integrand_values[t] = values
        return values

    def _integrand(self, k: int, t: float) -> float:
        return float(self.integrand_values(t)[k])

    def integral_values(self, x: float) -> List[float]:
        return [integral.value(x) for integral in self.integrals]

    def _compute_jet(self, x: float, order: int) -> Jet:
        f_jets = self.frame.jets(x, order)
        integrals = self.integral_values(x)
        if order == 0:
            return Jet(x, [sum(f.value * v for f, v in zip(f_jets, integrals))])
        g_jets = variation_integrands(self.frame, self.h, x, order - 1)
        total = None
        for f, g, v in zip(f_jets, g_jets, integrals):
            term = f * antiderivative_shift(g, v)
            total = term if total is None else total + term
        return total

    def __repr__(self) -> str:
        return f"ParticularSolution(n={self.n}, x0={self.x0!r})"


class ConstructedFunction(CachedMap):
    """f_k = scale * (F + sum_i c_i f_i)"""

    kind = "constructed"

    def __init__(self, stage: int, particular: ParticularSolution,
                 predecessors: Sequence[SmoothMap], coefficients: Sequence[float],
                 scale: float = 1.0):
        super().__init__()
        if len(predecessors) != len(coefficients):
            raise ValueError("one coefficient per predecessor is required")
        self.stage = stage
        self.particular = particular
        self.predecessors = tuple(predecessors)
        self.coefficients = tuple(float(c) for c in coefficients)
        self.scale = float(scale)

    @property
    def h(self) -> SmoothMap:
        return self.particular.h

    def with_scale(self, factor: float) -> "ConstructedFunction":
        return ConstructedFunction(self.stage, self.particular, self.predecessors,
                                   self.coefficients, self.scale * factor)

    def _compute_jet(self, x: float, order: int) -> Jet:
        jet = self.particular.eval_jet(x, order)
        for c, f in zip(self.coefficients, self.predecessors):
            if c != 0.0:
                jet = jet + f.eval_jet(x, order) * c
        return jet if self.scale == 1.0 else jet * self.scale

    def __repr__(self) -> str:
        return f"ConstructedFunction(stage={self.stage}, scale={self.scale!r})"
