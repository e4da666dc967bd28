"""Classical Gram-Schmidt baseline over the same inner product"""

import logging
from typing import List, Sequence

import numpy as np

from src.analysis import InnerProduct, gram_matrix
from src.errors import DependentInput
from src.wronskian.maps import LinearCombination, MapLike, as_map

logger = logging.getLogger(__name__)

# Residual squared norm below this fraction of the input's squared norm means dependence.
DEPENDENCE_RATIO = 1e-10


def gram_schmidt_coefficients(gram: np.ndarray) -> np.ndarray:
    """Row k holds the coefficients of u_k over the inputs f_1..f_n.

    Projections are removed one at a time from the running residual, all
    in coefficient space: <u, v> = u^T G v.
    """
    n = gram.shape[0]
    rows = np.zeros((n, n))
    for k in range(n):
        v = np.zeros(n)
        v[k] = 1.0
        for j in range(k):
            u = rows[j]
            v = v - (u @ gram @ v) / (u @ gram @ u) * u
        residual = float(v @ gram @ v)
        if residual <= DEPENDENCE_RATIO * gram[k, k]:
            raise DependentInput(
                k + 1,
                f"Input function {k + 1} is dependent on its predecessors "
                f"(residual {residual:.3e} vs {gram[k, k]:.3e})",
            )
        rows[k] = v
    return rows


def gram_schmidt(fs: Sequence[MapLike], ip: InnerProduct) -> List[LinearCombination]:
    maps = [as_map(f) for f in fs]
    if not maps:
        return []
    rows = gram_schmidt_coefficients(gram_matrix(maps, ip))
    result = []
    for k, row in enumerate(rows):
        result.append(LinearCombination([(row[j], maps[j]) for j in range(k + 1)]))
    logger.debug(f"Gram-Schmidt produced {len(result)} functions")
    return result
