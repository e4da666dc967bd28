"""Wronski orthogonalization.

Starting from a seed f_1, stage k (k = 2..N) solves

    W(f_1, ..., f_{k-1}, F) = h_{k-1} W(f_1, ..., f_{k-1})

for the particular solution F with zero initial data at x0, then removes
the components of F along the earlier functions:

    f_k = F - sum_i f_i rho(f_i, F) / ||f_i||^2

Adding multiples of earlier columns leaves the Wronskian unchanged, so
W(f_1..f_k) = h_{k-1} W(f_1..f_{k-1}) still holds for the orthogonal f_k.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.analysis import InnerProduct, gram_matrix, inner, interior_grid, norm
from src.errors import BuildError, DomainError, SingularWronskian, WronskiError
from src.expr import Expression, parse
from src.jet import SINGULAR_FLOOR
from src.orthogonalize.construction import ConstructedFunction, ParticularSolution
from src.orthogonalize.gram_schmidt import gram_schmidt, gram_schmidt_coefficients
from src.wronskian import WronskiFrame, wronskian
from src.wronskian.maps import MapLike, SmoothMap, as_map, scaled

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 257
# Points used by build_F to confirm the predecessors' Wronskian has no zeros
WRONSKIAN_CHECK_POINTS = 65


class BuildConfig(BaseModel):
    """Inputs of one construction run"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    seed: Expression
    N: int = Field(ge=1)
    h_specs: List[Expression] = []
    x0: Optional[float] = None
    ip: InnerProduct
    normalize: bool = False
    grid_points: int = Field(default=DEFAULT_GRID_POINTS, ge=1)

    @field_validator("seed", mode="before")
    @classmethod
    def _parse_seed(cls, value):
        return parse(value) if isinstance(value, str) else value

    @field_validator("h_specs", mode="before")
    @classmethod
    def _parse_h(cls, value):
        return [parse(v) if isinstance(v, str) else v for v in value]

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.h_specs) != self.N - 1:
            raise ValueError(f"need N-1 = {self.N - 1} stage weights h, got {len(self.h_specs)}")
        if self.x0 is None:
            self.x0 = 0.5 * (self.ip.a + self.ip.b)
        if not self.ip.a <= self.x0 <= self.ip.b:
            raise ValueError(f"x0={self.x0} outside [{self.ip.a}, {self.ip.b}]")
        return self

    def admissibility_points(self) -> List[float]:
        return [self.ip.a] + interior_grid(self.ip.a, self.ip.b, self.grid_points) + [self.ip.b]


class OrthoSystem(BaseModel):
    """Constructed f_1..f_N with their Gram matrix and construction metadata

    coefficients[k-1] holds c_1..c_{k-1} of stage k (empty for stage 1);
    scales[k-1] is the unit-length factor applied to f_k (1.0 when not
    normalized); particulars[k-2] is the particular solution F of stage k.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    functions: List[SmoothMap]
    config: BuildConfig
    gram: np.ndarray
    norms: List[float]
    coefficients: List[List[float]]
    scales: List[float]
    particulars: List[ParticularSolution] = []

    @property
    def N(self) -> int:
        return len(self.functions)

    @property
    def ip(self) -> InnerProduct:
        return self.config.ip

    @property
    def h(self) -> List[Expression]:
        return self.config.h_specs


def zero_violation(label: str, func, points: Sequence[float]) -> Optional[str]:
    """Message for the first zero or sign change of func over points, None if there is none"""
    previous = None
    for x in points:
        try:
            v = func(x)
        except DomainError as e:
            return f"{label} is required to have no zeros on the interval, but is undefined at x={x!r}: {e}"
        if v == 0.0 or not math.isfinite(v):
            return f"{label} is required to have no zeros on the interval, but {label}({x!r}) = {v!r}"
        if previous is not None and (previous[1] > 0) != (v > 0):
            return (f"{label} is required to have no zeros on the interval, but changes sign "
                    f"between x={previous[0]!r} and x={x!r}")
        previous = (x, v)
    return None


def negative_violation(label: str, func, points: Sequence[float]) -> Optional[str]:
    for x in points:
        try:
            v = func(x)
        except DomainError as e:
            return f"{label} is required to be nonnegative, but is undefined at x={x!r}: {e}"
        if v < 0.0 or not math.isfinite(v):
            return f"{label} is required to be nonnegative, but {label}({x!r}) = {v!r}"
    return None


def _check_wronskian(frame: WronskiFrame, grid: Sequence[float]):
    values = np.array([wronskian(frame, x).value for x in grid])
    scale = float(np.max(np.abs(values)))
    for i, x in enumerate(grid):
        if abs(values[i]) <= SINGULAR_FLOOR * scale or (i and values[i] * values[i - 1] < 0):
            raise SingularWronskian(x, f"Wronskian of the first {frame.n} functions vanishes near x={x!r}")


def build_F(prev: Sequence[MapLike], h: MapLike, x0: float, ip: InnerProduct,
            grid: Optional[Sequence[float]] = None) -> ParticularSolution:
    """Particular solution of W(prev, F) = h W(prev) with F(x0) = 0"""
    if not prev:
        raise ValueError("build_F needs at least one predecessor")
    particular = ParticularSolution(prev, h, x0, ip)
    if grid is None:
        grid = interior_grid(ip.a, ip.b, WRONSKIAN_CHECK_POINTS)
    _check_wronskian(particular.frame, grid)
    return particular


def orthogonalize_step(prev: Sequence[SmoothMap], F: ParticularSolution, ip: InnerProduct,
                       norms: Optional[Sequence[float]] = None) -> ConstructedFunction:
    """f_k = F - sum_i f_i rho(f_i, F) / ||f_i||^2"""
    prev = [as_map(f) for f in prev]
    if norms is None:
        norms = [norm(f, ip) for f in prev]
    coefficients = [-inner(f, F, ip) / (n * n) for f, n in zip(prev, norms)]
    return ConstructedFunction(len(prev) + 1, F, prev, coefficients)


def _reject(stage: int, problem: str):
    logger.warning(f"Stage {stage} inputs rejected: {problem}")
    raise BuildError(stage, problem)


def _admissibility(config: BuildConfig):
    points = config.admissibility_points()
    if not config.ip.unit_weight:
        problem = negative_violation("w", config.ip.weight.value, points)
        if problem:
            _reject(1, problem)
    problem = zero_violation("f1", config.seed.value, points)
    if problem:
        _reject(1, problem)
    for k, h in enumerate(config.h_specs, start=2):
        problem = zero_violation(f"h{k - 1}", h.value, points)
        if problem:
            _reject(k, problem)


def build_system(config: BuildConfig) -> OrthoSystem:
    ip = config.ip
    _admissibility(config)
    logger.info(f"Building {config.N} functions on [{ip.a}, {ip.b}] from seed {config.seed} (x0={config.x0})")

    seed: SmoothMap = as_map(config.seed)
    try:
        seed_norm = norm(seed, ip)
    except WronskiError as e:
        raise BuildError(1, str(e)) from e
    if config.normalize:
        functions = [scaled(seed, 1.0 / seed_norm)]
        scales, norms = [1.0 / seed_norm], [1.0]
    else:
        functions, scales, norms = [seed], [1.0], [seed_norm]
    coefficients: List[List[float]] = [[]]
    particulars: List[ParticularSolution] = []

    check_grid = interior_grid(ip.a, ip.b, min(config.grid_points, WRONSKIAN_CHECK_POINTS))
    for k in range(2, config.N + 1):
        h = config.h_specs[k - 2]
        try:
            F = build_F(functions, h, config.x0, ip, check_grid)
            f_k = orthogonalize_step(functions, F, ip, norms)
            f_norm = norm(f_k, ip)
        except WronskiError as e:
            raise BuildError(k, f"{type(e).__name__}: {e}") from e
        scale = 1.0
        if config.normalize:
            scale = 1.0 / f_norm
            f_k, f_norm = f_k.with_scale(scale), 1.0
        functions.append(f_k)
        norms.append(f_norm)
        scales.append(scale)
        coefficients.append(list(f_k.coefficients))
        particulars.append(F)
        shown = ", ".join(f"{c:.6g}" for c in f_k.coefficients)
        logger.info(f"Stage {k}: norm={f_norm:.12g} coefficients=({shown})")

    try:
        gram = gram_matrix(functions, ip)
    except WronskiError as e:
        raise BuildError(config.N, f"Gram matrix: {e}") from e
    return OrthoSystem(functions=functions, config=config, gram=gram, norms=norms,
                       coefficients=coefficients, scales=scales, particulars=particulars)


def normalize_system(sys: OrthoSystem) -> OrthoSystem:
    """Scale every f_i to unit length; the Gram matrix becomes D G D with D = diag(1/||f_i||)"""
    factors = [1.0 / norm(f, sys.ip) for f in sys.functions]
    functions = [
        f.with_scale(d) if isinstance(f, ConstructedFunction) else scaled(f, d)
        for f, d in zip(sys.functions, factors)
    ]
    D = np.diag(factors)
    return OrthoSystem(
        functions=functions,
        config=sys.config,
        gram=D @ sys.gram @ D,
        norms=[1.0] * sys.N,
        coefficients=[list(c) for c in sys.coefficients],
        scales=[s * d for s, d in zip(sys.scales, factors)],
        particulars=list(sys.particulars),
    )


__all__ = [
    "BuildConfig",
    "ConstructedFunction",
    "OrthoSystem",
    "ParticularSolution",
    "build_F",
    "build_system",
    "gram_schmidt",
    "gram_schmidt_coefficients",
    "normalize_system",
    "orthogonalize_step",
    "zero_violation",
]
