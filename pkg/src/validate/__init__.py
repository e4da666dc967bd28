"""Independent checks of a built system.

Orthogonality is recomputed with a finer quadrature than the build used.
The Wronskian checks evaluate determinants of constructed-function jets on
a grid of interior points, so they exercise the derivative machinery rather
than the stored Gram matrix.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.analysis import gram_matrix, inner, interior_grid, norm
from src.errors import WronskiError
from src.models import (
    BasePointReport,
    IndependenceReport,
    OrthogonalityReport,
    PairResidual,
    StageReport,
    StageResidual,
    ValidationReport,
)
from src.orthogonalize import OrthoSystem
from src.wronskian.maps import LinearCombination

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-8
WRONSKIAN_TOL = 1e-7
ODE_TOL = 1e-7
INDEPENDENCE_FLOOR = 1e-10
BASE_POINT_TOL = 1e-14


def default_grid(sys: OrthoSystem, count: Optional[int] = None) -> List[float]:
    return interior_grid(sys.ip.a, sys.ip.b, sys.config.grid_points if count is None else count)


class WronskianTable:
    """W(f_1..f_n)(x) for n = 1..N over a grid

    Each function is evaluated once per grid point at jet order N-1. The
    resulting N x N Wronskian matrix serves every stage: W(f_1..f_n) is its
    leading n x n minor.
    """

    def __init__(self, sys: OrthoSystem, grid: Sequence[float]):
        self.grid = [float(x) for x in grid]
        self.N = sys.N
        # values[n-1, i] = W(f_1..f_n)(grid[i])
        self.values = np.full((self.N, len(self.grid)), np.nan)
        self._failures: Dict[int, WronskiError] = {}
        for i, x in enumerate(self.grid):
            columns = []
            for f in sys.functions:
                try:
                    columns.append(f.eval_jet(x, self.N - 1).coeffs[: self.N])
                except WronskiError as e:
                    self._fail_from(len(columns) + 1, e)
                    break
            if not columns:
                continue
            matrix = np.column_stack(columns)
            self.values[0, i] = matrix[0, 0]
            for n in range(2, len(columns) + 1):
                self.values[n - 1, i] = np.linalg.det(matrix[:n, :n])
        logger.debug(f"Wronskian table: {self.N} stages on {len(self.grid)} points")

    def _fail_from(self, stage: int, error: WronskiError):
        for n in range(stage, self.N + 1):
            self._failures.setdefault(n, error)

    def stage(self, n: int) -> np.ndarray:
        """W(f_1..f_n) on the grid; re-raises the error that stopped stage n"""
        if n in self._failures:
            raise self._failures[n]
        return self.values[n - 1]


def _table(sys: OrthoSystem, grid: Optional[Sequence[float]],
           table: Optional[WronskianTable]) -> WronskianTable:
    if table is not None:
        return table
    return WronskianTable(sys, default_grid(sys) if grid is None else grid)


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(1.0, abs(reference))


def _stage_report(stages: List[StageResidual], threshold: float) -> StageReport:
    residuals = [s.residual for s in stages if s.residual is not None]
    failed = any(s.residual is None for s in stages)
    worst = max(residuals, default=0.0)
    return StageReport(stages=stages, max_residual=worst, threshold=threshold,
                       passed=not failed and worst <= threshold)


def check_orthogonality(sys: OrthoSystem, tol: float = ORTHOGONALITY_TOL) -> OrthogonalityReport:
    ip = sys.ip.with_tol(sys.ip.quad_tol / 10)
    pairs = []
    try:
        norms = [norm(f, ip) for f in sys.functions]
    except WronskiError as e:
        pairs.append(PairResidual(i=0, j=0, error=f"{type(e).__name__}: {e}"))
        return OrthogonalityReport(pairs=pairs, max_residual=0.0, threshold=tol, passed=False)
    for i in range(sys.N):
        for j in range(i + 1, sys.N):
            try:
                value = inner(sys.functions[i], sys.functions[j], ip)
                pairs.append(PairResidual(i=i + 1, j=j + 1, residual=abs(value) / (norms[i] * norms[j])))
            except WronskiError as e:
                pairs.append(PairResidual(i=i + 1, j=j + 1, error=f"{type(e).__name__}: {e}"))
    residuals = [p.residual for p in pairs if p.residual is not None]
    worst = max(residuals, default=0.0)
    passed = len(residuals) == len(pairs) and worst <= tol
    if not passed:
        logger.warning(f"Orthogonality check failed: max residual {worst:.3e} > {tol:.1e}")
    return OrthogonalityReport(pairs=pairs, max_residual=worst, threshold=tol, passed=passed)


def identity_reference(sys: OrthoSystem, n: int, x: float) -> float:
    """phi_1(x) * prod_{i<n} h_i(x) * prod_{k=2..n} s_k"""
    reference = sys.functions[0].value(x)
    for i in range(n - 1):
        reference *= sys.h[i].value(x) * sys.scales[i + 1]
    return reference


def check_wronskian_identity(sys: OrthoSystem, grid: Optional[Sequence[float]] = None,
                             tol: float = WRONSKIAN_TOL,
                             table: Optional[WronskianTable] = None) -> StageReport:
    table = _table(sys, grid, table)
    stages = []
    for n in range(1, sys.N + 1):
        try:
            values = table.stage(n)
            worst = max((_relative(w, identity_reference(sys, n, x)) for w, x in zip(values, table.grid)),
                        default=0.0)
            stages.append(StageResidual(stage=n, residual=worst))
        except WronskiError as e:
            stages.append(StageResidual(stage=n, error=f"{type(e).__name__}: {e}"))
    return _stage_report(stages, tol)


def check_ode(sys: OrthoSystem, grid: Optional[Sequence[float]] = None,
              tol: float = ODE_TOL, table: Optional[WronskianTable] = None) -> StageReport:
    """W(f_1..f_k) - s_k h_{k-1} W(f_1..f_{k-1}) relative to the second term"""
    table = _table(sys, grid, table)
    stages = []
    for k in range(2, sys.N + 1):
        h = sys.h[k - 2]
        try:
            outer, lower = table.stage(k), table.stage(k - 1)
            worst = 0.0
            for x, w, w_lower in zip(table.grid, outer, lower):
                worst = max(worst, _relative(w, h.value(x) * sys.scales[k - 1] * w_lower))
            stages.append(StageResidual(stage=k, residual=worst))
        except WronskiError as e:
            stages.append(StageResidual(stage=k, error=f"{type(e).__name__}: {e}"))
    return _stage_report(stages, tol)


def check_independence(sys: OrthoSystem, grid: Optional[Sequence[float]] = None,
                       floor: float = INDEPENDENCE_FLOOR,
                       table: Optional[WronskianTable] = None) -> IndependenceReport:
    table = _table(sys, grid, table)
    gram = np.asarray(sys.gram)
    diagonal = np.sqrt(np.abs(np.diag(gram)))
    gram_det = float(np.linalg.det(gram))
    normalized_det = float(np.linalg.det(gram / np.outer(diagonal, diagonal)))
    try:
        min_w = float(np.min(np.abs(table.stage(sys.N))))
    except WronskiError as e:
        return IndependenceReport(gram_determinant=gram_det, normalized_gram_determinant=normalized_det,
                                  floor=floor, passed=False, error=f"{type(e).__name__}: {e}")
    return IndependenceReport(
        min_abs_wronskian=min_w,
        gram_determinant=gram_det,
        normalized_gram_determinant=normalized_det,
        floor=floor,
        passed=min_w > floor and normalized_det > floor,
    )


def check_base_point(sys: OrthoSystem, tol: float = BASE_POINT_TOL) -> BasePointReport:
    """|F_k(x0)| for every particular solution"""
    x0 = sys.config.x0
    stages = []
    for k, particular in enumerate(sys.particulars, start=2):
        try:
            stages.append(StageResidual(stage=k, residual=abs(particular.value(x0))))
        except WronskiError as e:
            stages.append(StageResidual(stage=k, error=f"{type(e).__name__}: {e}"))
    passed = all(s.residual is not None and s.residual <= tol for s in stages)
    return BasePointReport(stages=stages, threshold=tol, passed=passed)


def validate_system(sys: OrthoSystem, grid: Optional[Sequence[float]] = None) -> ValidationReport:
    grid = default_grid(sys) if grid is None else list(grid)
    logger.info(f"Validating {sys.N} functions on {len(grid)} grid points")
    table = WronskianTable(sys, grid)
    orthogonality = check_orthogonality(sys)
    identity = check_wronskian_identity(sys, table=table)
    ode = check_ode(sys, table=table)
    independence = check_independence(sys, table=table)
    base_point = check_base_point(sys)
    passed = all(part.passed for part in (orthogonality, identity, ode, independence, base_point))
    return ValidationReport(
        orthogonality=orthogonality,
        wronskian_identity=identity,
        ode=ode,
        independence=independence,
        base_point=base_point,
        grid_points=len(grid),
        passed=passed,
    )


def perturb_system(sys: OrthoSystem, eps: float) -> OrthoSystem:
    """Copy of sys with f_2 replaced by f_2 + eps * f_1; used to exercise failure paths"""
    if sys.N < 2:
        raise ValueError("perturbation needs at least two functions")
    functions = list(sys.functions)
    functions[1] = LinearCombination([(1.0, functions[1]), (eps, functions[0])])
    logger.warning(f"Perturbing f2 by {eps} * f1")
    gram = gram_matrix(functions, sys.ip)
    return OrthoSystem(
        functions=functions,
        config=sys.config,
        gram=gram,
        norms=[math.sqrt(v) for v in np.diag(gram)],
        coefficients=[list(c) for c in sys.coefficients],
        scales=list(sys.scales),
        particulars=list(sys.particulars),
    )


__all__ = [
    "WronskianTable",
    "check_base_point",
    "check_independence",
    "check_ode",
    "check_orthogonality",
    "check_wronskian_identity",
    "default_grid",
    "identity_reference",
    "perturb_system",
    "validate_system",
]
