"""Density operators, maximally entangled states, and tensor utilities.

All matrices are dense complex numpy arrays in the computational basis,
and complex conjugation is always entrywise in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import DimensionMismatchError, ValidationError
from ..pauli import PauliElement
from ..representations import Representation

ENTRY_TOL = 1e-9


@dataclass(frozen=True)
class DensityOperator:
    """A quantum state: Hermitian, unit trace, positive semidefinite."""

    dimension: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", entries)
        if entries.shape != (self.dimension, self.dimension):
            raise ValidationError(
                f"state entries have shape {entries.shape}, expected "
                f"({self.dimension}, {self.dimension})"
            )
        if np.max(np.abs(entries - entries.conj().T)) > ENTRY_TOL:
            raise ValidationError("state is not Hermitian")
        if abs(np.trace(entries) - 1.0) > ENTRY_TOL:
            raise ValidationError("state trace is not 1")
        if float(np.min(np.linalg.eigvalsh(entries))) < -ENTRY_TOL:
            raise ValidationError("state has a negative eigenvalue")


def pure_density(vector: np.ndarray) -> DensityOperator:
    """The rank-one state |v><v| / <v|v>."""
    v = np.asarray(vector, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValidationError("cannot normalize the zero vector")
    v = v / norm
    return DensityOperator(len(v), np.outer(v, v.conj()))


def epr_vector(dimension: int) -> np.ndarray:
    """The maximally entangled vector (1/sqrt(D)) sum_i |ii>."""
    if dimension < 1:
        raise ValidationError("dimension must be positive")
    vec = np.zeros(dimension * dimension, dtype=complex)
    for i in range(dimension):
        vec[i * dimension + i] = 1.0
    return vec / np.sqrt(dimension)


def epr_density(dimension: int) -> DensityOperator:
    return pure_density(epr_vector(dimension))


def partial_trace(
    matrix: np.ndarray, dims: Sequence[int], keep: Sequence[int]
) -> np.ndarray:
    """Trace out all tensor factors except those listed in keep."""
    dims = tuple(dims)
    keep = tuple(keep)
    total = int(np.prod(dims))
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (total, total):
        raise DimensionMismatchError(
            f"matrix of shape {matrix.shape} does not factor as {dims}"
        )
    n = len(dims)
    reshaped = matrix.reshape(dims + dims)
    # Contract each traced factor with its primed copy.
    for index in sorted(set(range(n)) - set(keep), reverse=True):
        reshaped = np.trace(reshaped, axis1=index, axis2=index + n)
        n -= 1
    size = int(np.prod([dims[i] for i in keep])) if keep else 1
    return reshaped.reshape(size, size)


def trace_norm(matrix: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.sum(np.linalg.svd(np.asarray(matrix), compute_uv=False)))


def purity_defect(matrix: np.ndarray) -> float:
    """Largest entry of M^2 - M; zero exactly for projections."""
    m = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(m @ m - m)))


def epr_projector(
    rep: Representation, group: Iterable[PauliElement]
) -> np.ndarray:
    """Uniform average of rep(g) tensor conj(rep(g)) over the group.

    For an irreducible representation the average is the rank-one
    projector onto the maximally entangled state of the representation
    dimension.  For a reducible one it is still a projector, but of
    higher rank (its trace counts the image's commutant dimension), so
    it cannot match any single pure state.
    """
    total = np.zeros(
        (rep.dimension**2, rep.dimension**2), dtype=complex
    )
    count = 0
    for element in group:
        image = rep.evaluate_element(element)
        total += np.kron(image, image.conj())
        count += 1
    if count == 0:
        raise ValidationError("cannot average over an empty group")
    return total / count
