"""Weighted L2 inner product on an interval, norms and quadrature"""

import logging
import math
from typing import Callable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.integrate import quad

from src.analysis.cumulative import CumulativeIntegral, cumulative
from src.errors import NonFiniteIntegrand, SubdivisionLimit, ZeroNorm
from src.expr import Expression, parse
from src.wronskian.maps import LinearCombination, MapLike, as_map

logger = logging.getLogger(__name__)

DEFAULT_QUAD_TOL = 1e-11
DEFAULT_MAX_SUBDIVISIONS = 2000


class InnerProduct(BaseModel):
    """rho(f, g) = integral_a^b f g w dx"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a: float
    b: float
    weight: Expression = Field(default_factory=lambda: parse("1"))
    quad_tol: float = DEFAULT_QUAD_TOL
    max_subdivisions: int = DEFAULT_MAX_SUBDIVISIONS

    @field_validator("weight", mode="before")
    @classmethod
    def _parse_weight(cls, value):
        return parse(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_interval(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("interval endpoints must be finite")
        if not self.a < self.b:
            raise ValueError(f"need a < b, got a={self.a}, b={self.b}")
        if not self.quad_tol > 0:
            raise ValueError("quad_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")
        return self

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def unit_weight(self) -> bool:
        root = self.weight.root
        return self.weight.is_constant and root.value == 1.0

    def with_tol(self, quad_tol: float) -> "InnerProduct":
        return self.model_copy(update={"quad_tol": quad_tol})


_ROUNDOFF_PREFIX = "The occurrence of roundoff error"


def integrate(f: Callable[[float], float], a: float, b: float,
              tol: float = DEFAULT_QUAD_TOL,
              max_subdivisions: int = DEFAULT_MAX_SUBDIVISIONS) -> float:
    """Adaptive Gauss-Kronrod quadrature; signed in the direction a -> b"""
    if a == b:
        return 0.0

    def integrand(t: float) -> float:
        v = f(t)
        if not math.isfinite(v):
            raise NonFiniteIntegrand(f"Integrand is {v!r} at t={t!r}")
        return v

    result = quad(integrand, a, b, epsabs=tol, epsrel=tol, limit=max_subdivisions,
                  full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3:
        message = str(result[3])
        if message.startswith(_ROUNDOFF_PREFIX):
            logger.warning(f"Quadrature on [{a}, {b}] hit round-off (abserr={abserr:.3e})")
        else:
            raise SubdivisionLimit(f"Quadrature on [{a}, {b}] failed: {message}")
    return float(value)


def inner(f: MapLike, g: MapLike, ip: InnerProduct, tol: Optional[float] = None) -> float:
    f_map, g_map = as_map(f), as_map(g)
    tol = ip.quad_tol if tol is None else tol
    weight = None if ip.unit_weight else ip.weight.value

    if f_map is g_map:
        def integrand(t):
            v = f_map.value(t)
            return v * v if weight is None else v * v * weight(t)
    else:
        def integrand(t):
            v = f_map.value(t) * g_map.value(t)
            return v if weight is None else v * weight(t)

    return integrate(integrand, ip.a, ip.b, tol, ip.max_subdivisions)


def norm(f: MapLike, ip: InnerProduct, tol: Optional[float] = None) -> float:
    squared = inner(f, f, ip, tol)
    if squared <= ip.quad_tol * ip.length:
        raise ZeroNorm(f"Squared norm {squared!r} is not above {ip.quad_tol * ip.length!r}")
    return math.sqrt(squared)


def distance(f: MapLike, g: MapLike, ip: InnerProduct, tol: Optional[float] = None) -> float:
    """Induced metric ||f - g||"""
    difference = LinearCombination([(1.0, as_map(f)), (-1.0, as_map(g))])
    return math.sqrt(max(inner(difference, difference, ip, tol), 0.0))


def interior_grid(a: float, b: float, count: int) -> List[float]:
    """count equispaced points strictly inside (a, b)"""
    if count < 1:
        raise ValueError("count must be positive")
    return [a + (b - a) * i / (count + 1) for i in range(1, count + 1)]


def gram_matrix(fs: Sequence[MapLike], ip: InnerProduct, tol: Optional[float] = None) -> np.ndarray:
    maps = [as_map(f) for f in fs]
    n = len(maps)
    gram = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            gram[i, j] = gram[j, i] = inner(maps[i], maps[j], ip, tol)
    return gram


__all__ = [
    "CumulativeIntegral",
    "InnerProduct",
    "cumulative",
    "distance",
    "gram_matrix",
    "inner",
    "integrate",
    "interior_grid",
    "norm",
]
