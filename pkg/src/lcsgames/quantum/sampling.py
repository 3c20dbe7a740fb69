"""Seeded random states, unitaries, and strategy families.

Everything takes an explicit numpy Generator so that callers control
reproducibility; nothing here touches global random state.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import ValidationError
from ..games import LcsGame
from .states import DensityOperator
from .strategies import (
    ObservableStrategy,
    ProjectiveMeasurements,
    ideal_strategy,
    spectral_convert,
)

def random_unitary(dimension: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    ginibre = (
        rng.standard_normal((dimension, dimension))
        + 1j * rng.standard_normal((dimension, dimension))
    ) / np.sqrt(2.0)
    q, r = np.linalg.qr(ginibre)
    # Fix the phase freedom in QR so the distribution is exactly Haar.
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def random_pure_state(dimension: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.standard_normal(dimension) + 1j * rng.standard_normal(dimension)
    return vec / np.linalg.norm(vec)


def random_density(dimension: int, rng: np.random.Generator) -> DensityOperator:
    """Full-rank random state from a Ginibre matrix."""
    ginibre = rng.standard_normal((dimension, dimension)) + 1j * rng.standard_normal(
        (dimension, dimension)
    )
    raw = ginibre @ ginibre.conj().T
    return DensityOperator(dimension, raw / np.trace(raw))


def random_hermitian(dimension: int, rng: np.random.Generator) -> np.ndarray:
    raw = rng.standard_normal((dimension, dimension)) + 1j * rng.standard_normal(
        (dimension, dimension)
    )
    return (raw + raw.conj().T) / 2.0


def random_projector_partition(
    dimension: int, blocks: int, rng: np.random.Generator
) -> list[np.ndarray]:
    """A complete family of orthogonal projectors with random ranks.

    Ranks are as equal as the dimension allows; every block is nonempty
    when blocks <= dimension, otherwise trailing blocks are zero.
    """
    if blocks < 1:
        raise ValidationError("need at least one block")
    basis = random_unitary(dimension, rng)
    sizes = [dimension // blocks] * blocks
    for i in range(dimension % blocks):
        sizes[i] += 1
    rng.shuffle(sizes)
    projectors = []
    start = 0
    for size in sizes:
        columns = basis[:, start : start + size]
        projectors.append(columns @ columns.conj().T)
        start += size
    return projectors


def random_strategy(
    game: LcsGame, dimA: int, dimB: int, rng: np.random.Generator
) -> ObservableStrategy:
    """Random projective strategy in observable form.

    Each player measures in a random basis, with outcomes assigned to
    random blocks of basis vectors, on a random full-rank shared state.
    """
    d = game.modulus
    alice: dict[str, dict[tuple[int, ...], np.ndarray]] = {}
    for v in game.vertices:
        degree = len(game.incident_edges(v))
        blocks = random_projector_partition(dimA, d**degree, rng)
        outcomes = itertools.product(range(d), repeat=degree)
        alice[v] = dict(zip(outcomes, blocks))
    bob = {
        e: dict(enumerate(random_projector_partition(dimB, d, rng)))
        for e in game.edges
    }
    measurements = ProjectiveMeasurements(
        d, dimA, dimB, alice, bob, random_density(dimA * dimB, rng)
    )
    return spectral_convert(measurements, game)


def _small_rotation(
    dimension: int, scale: float, rng: np.random.Generator
) -> np.ndarray:
    """exp(i * scale * G) for a random Hermitian G of unit spectral norm."""
    hermitian = random_hermitian(dimension, rng)
    eigenvalues, eigenvectors = np.linalg.eigh(hermitian)
    eigenvalues = eigenvalues / np.max(np.abs(eigenvalues))
    phases = np.exp(1j * scale * eigenvalues)
    return (eigenvectors * phases) @ eigenvectors.conj().T


def perturbed_ideal_strategy(
    game: LcsGame,
    rng: np.random.Generator,
    conjugationScale: float = 0.0,
    stateMix: float = 0.0,
) -> ObservableStrategy:
    """Ideal strategy deformed without leaving the strategy manifold.

    Alice's observables at each vertex are conjugated by a common small
    rotation, Bob's by one rotation per edge, so order and commutation
    survive exactly; the shared state is mixed with white noise.  Both
    knobs move the winning probability continuously below 1.
    """
    base = ideal_strategy(game)
    alice: dict[tuple[str, str], np.ndarray] = {}
    for v in game.vertices:
        rotation = _small_rotation(base.dimA, conjugationScale, rng)
        for e in game.incident_edges(v):
            alice[(v, e)] = (
                rotation @ base.aliceObservables[(v, e)] @ rotation.conj().T
            )
    bob: dict[str, np.ndarray] = {}
    for e in game.edges:
        rotation = _small_rotation(base.dimB, conjugationScale, rng)
        bob[e] = rotation @ base.bobObservables[e] @ rotation.conj().T
    dim = base.state.dimension
    mixed = (1.0 - stateMix) * base.state.entries + stateMix * np.eye(dim) / dim
    return ObservableStrategy(
        game.modulus,
        base.dimA,
        base.dimB,
        alice,
        bob,
        DensityOperator(dim, mixed),
    )
