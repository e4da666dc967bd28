"""Checkpointed cumulative integrals I(x) = integral of g from x0 to x.

The interval is covered by a lattice of panels grown outward from the
base point. Each panel samples the integrand on a fixed Gauss-Legendre
node set and keeps the resulting Legendre series; a panel is split until
the two highest series coefficients fall below its share of the
tolerance. I(x) is the checkpoint value at the panel edge facing the base
point plus the exact integral of the panel series up to x.

Integrand evaluations happen only at lattice nodes, so nested stages that
query I at arbitrary points never trigger fresh quadratures here.
"""

import bisect
import logging
import math
import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np
from numpy.polynomial import legendre

from src.errors import NonFiniteIntegrand, SubdivisionLimit

logger = logging.getLogger(__name__)

PANEL_NODES = 20

_NODES, _WEIGHTS = legendre.leggauss(PANEL_NODES)
_VANDER = legendre.legvander(_NODES, PANEL_NODES - 1)
_NORMALIZERS = (2.0 * np.arange(PANEL_NODES) + 1.0) / 2.0
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Panel:
    lo: float
    hi: float
    coeffs: np.ndarray  # Legendre series of the integrand on [lo, hi] mapped to [-1, 1]
    antiderivative: np.ndarray  # series of the integral from -1
    integral: float


class CumulativeIntegral:
    """I(x) = integral_{x0}^{x} g(t) dt on [a, b] with checkpoint caching"""

    def __init__(self, integrand: Callable[[float], float], base_point: float,
                 interval: Tuple[float, float], tol: float = 1e-11,
                 max_subdivisions: int = 2000):
        a, b = float(interval[0]), float(interval[1])
        if not a < b:
            raise ValueError(f"Empty interval [{a}, {b}]")
        if not a <= base_point <= b:
            raise ValueError(f"Base point {base_point} outside [{a}, {b}]")
        if tol <= 0:
            raise ValueError("tol must be positive")
        self.integrand = integrand
        self.base_point = float(base_point)
        self.a = a
        self.b = b
        self.tol = tol
        self.max_subdivisions = max_subdivisions
        self._panels: List[Panel] = []
        self._edges: List[float] = []
        self._edge_values: List[float] = []
        self._cache: Dict[float, float] = {}
        self._lock = threading.RLock()
        self._built = False

    @property
    def checkpoints(self) -> Dict[float, float]:
        """Panel edges with their accumulated integral values, sorted by x"""
        self._ensure_built()
        return dict(zip(self._edges, self._edge_values))

    @property
    def panels(self) -> List[Panel]:
        self._ensure_built()
        return list(self._panels)

    def _fit(self, lo: float, hi: float) -> Panel:
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        values = np.empty(PANEL_NODES)
        for i, node in enumerate(_NODES):
            t = mid + half * node
            v = self.integrand(t)
            if not math.isfinite(v):
                raise NonFiniteIntegrand(f"Integrand is {v!r} at t={t!r}")
            values[i] = v
        coeffs = _NORMALIZERS * (_VANDER.T @ (_WEIGHTS * values))
        return Panel(
            lo=lo,
            hi=hi,
            coeffs=coeffs,
            antiderivative=legendre.legint(coeffs, lbnd=-1),
            integral=float(half * np.dot(_WEIGHTS, values)),
        )

    def _accepts(self, panel: Panel) -> bool:
        width = panel.hi - panel.lo
        tail = 0.5 * width * (abs(panel.coeffs[-1]) + abs(panel.coeffs[-2]))
        allowed = max(
            self.tol * width / (self.b - self.a),
            self.tol * abs(panel.integral),
            100.0 * _EPS * width * float(np.max(np.abs(panel.coeffs))),
        )
        return tail <= allowed

    def _refine(self, lo: float, hi: float) -> List[Panel]:
        accepted = []
        stack = [(lo, hi)]
        while stack:
            left, right = stack.pop()
            panel = self._fit(left, right)
            if self._accepts(panel):
                accepted.append(panel)
                continue
            if len(accepted) + len(stack) + 2 > self.max_subdivisions or \
                    right - left < 1e-12 * (self.b - self.a):
                raise SubdivisionLimit(
                    f"Cumulative integral did not converge on [{left}, {right}] "
                    f"within {self.max_subdivisions} panels"
                )
            middle = 0.5 * (left + right)
            stack.append((middle, right))
            stack.append((left, middle))
        return accepted

    def _ensure_built(self):
        if self._built:
            return
        with self._lock:
            if self._built:
                return
            left = self._refine(self.a, self.base_point) if self.a < self.base_point else []
            right = self._refine(self.base_point, self.b) if self.base_point < self.b else []
            panels = left + right
            edges = [p.lo for p in panels] + [panels[-1].hi]
            values = [0.0] * len(edges)
            origin = len(left)
            for i in range(origin, len(panels)):
                values[i + 1] = values[i] + panels[i].integral
            for i in range(origin - 1, -1, -1):
                values[i] = values[i + 1] - panels[i].integral
            self._panels, self._edges, self._edge_values = panels, edges, values
            self._built = True
            logger.debug(
                f"Cumulative integral from x0={self.base_point}: {len(left)} left / "
                f"{len(right)} right panels"
            )

    def value(self, x: float) -> float:
        x = float(x)
        if x == self.base_point:
            return 0.0
        if not self.a <= x <= self.b:
            raise ValueError(f"x={x} outside [{self.a}, {self.b}]")
        cached = self._cache.get(x)
        if cached is not None:
            return cached
        self._ensure_built()
        index = min(max(bisect.bisect_right(self._edges, x) - 1, 0), len(self._panels) - 1)
        panel = self._panels[index]
        s = (2.0 * x - panel.lo - panel.hi) / (panel.hi - panel.lo)
        partial = 0.5 * (panel.hi - panel.lo) * float(legendre.legval(s, panel.antiderivative))
        if panel.lo >= self.base_point:
            result = self._edge_values[index] + partial
        else:
            result = self._edge_values[index + 1] - (panel.integral - partial)
        with self._lock:
            self._cache[x] = result
        return result

    __call__ = value


def cumulative(ci: CumulativeIntegral, x: float) -> float:
    return ci.value(x)
