"""State-dependent distance between operators.

The distance between X and Y relative to a state rho is the norm
sqrt(Tr rho (X - Y)^dagger (X - Y)).  It vanishes when X and Y agree on
the support of rho, obeys the triangle inequality, and for unitaries it
is invariant under multiplying both sides by a common unitary.

Averages of roots of unity control these distances: a convex
combination of the d-th roots that is close to 1 must put almost all of
its weight on 1, at a cost quadratic in d.  Both directions of that
trade-off are provided here with their explicit constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DimensionMismatchError, ValidationError
from .states import DensityOperator

WEIGHT_TOL = 1e-9


def state_distance_squared(
    rho: DensityOperator, x: np.ndarray, y: np.ndarray
) -> float:
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    shape = (rho.dimension, rho.dimension)
    if x.shape != shape or y.shape != shape:
        raise DimensionMismatchError(
            f"operators of shapes {x.shape} and {y.shape} do not act on a "
            f"state of dimension {rho.dimension}"
        )
    diff = x - y
    value = float(np.real(np.trace(rho.entries @ diff.conj().T @ diff)))
    # Roundoff can push an exact zero slightly negative.
    return max(value, 0.0)


def state_distance(
    rho: DensityOperator, x: np.ndarray, y: np.ndarray
) -> float:
    return float(np.sqrt(state_distance_squared(rho, x, y)))


@dataclass(frozen=True)
class RootCombinationBounds:
    """Two-sided control of a convex combination of d-th roots of unity.

    gap = |1 - alpha| is controlled by the weight missing from the
    leading root, and conversely the missing weight is controlled by
    1 - Re(alpha) at a quadratic cost in d.
    """

    alpha: complex
    leadingWeight: float
    gap: float
    gapBound: float
    defect: float
    defectBound: float


def root_combination_bounds(
    weights: Sequence[float], d: int
) -> RootCombinationBounds:
    """Evaluate alpha = sum_i weights[i] w^i and both bounds around it.

    weights must be a probability vector of length d.  The returned
    bounds hold for every probability vector: gap <= gapBound and
    defect <= defectBound.
    """
    if len(weights) != d:
        raise ValidationError(
            f"need one weight per root, got {len(weights)} for d={d}"
        )
    weights = [float(w) for w in weights]
    if min(weights) < -WEIGHT_TOL:
        raise ValidationError("weights must be nonnegative")
    if abs(sum(weights) - 1.0) > WEIGHT_TOL:
        raise ValidationError("weights must sum to 1")
    w = np.exp(2j * np.pi / d)
    alpha = complex(sum(weight * w**i for i, weight in enumerate(weights)))
    leading = weights[0]
    gap = abs(1.0 - alpha)
    defect = 1.0 - leading
    return RootCombinationBounds(
        alpha,
        leading,
        gap,
        2.0 * (1.0 - leading),
        defect,
        0.5 * d * d * (1.0 - alpha.real),
    )
