"""Extracting ideal structure from near-perfect quantum strategies.

Three extraction routes live here: pulling a product state out of a
tripartite state whose restriction is close to a known pure state,
compressing a perfect strategy's observables to an exact operator
solution on the support of the shared state, and certifying that a
strategy's observables approximately satisfy the solution group
relations with explicit constants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import (
    DimensionMismatchError,
    LcsError,
    PreconditionError,
)
from ..games import LcsGame
from ..pauli import PauliElement
from ..pictures.complexity import ComplexityParameters
from ..representations import Representation, omega, representation_relation_residual
from ..solutiongroups import solution_group
from .distance import state_distance
from .states import (
    DensityOperator,
    epr_projector,
    epr_vector,
    partial_trace,
    trace_norm,
)
from .strategies import (
    CHAIN_TOL,
    ENTRY_TOL,
    ObservableStrategy,
    validate_operator_solution,
    winning_probability,
)

SUPPORT_TOL = 1e-9


@dataclass(frozen=True)
class ProductStateExtraction:
    """Closest product approximation psi (x) auxState to a tripartite state.

    traceDistance is half the trace norm of the difference and never
    exceeds bound = 3 * epsilon, where epsilon measures how far the
    reduced state is from the target pure state.
    """

    auxState: DensityOperator
    epsilon: float
    topWeight: float
    traceDistance: float
    bound: float


def extract_product_state(
    rhoABC: DensityOperator, psiAB: np.ndarray
) -> ProductStateExtraction:
    """Approximate a tripartite state by psi on AB times a state on C.

    The C factor is the reduced state conditioned on the top eigenvector
    of the AB restriction.  Requires the AB restriction to have positive
    overlap 1 - epsilon with psi.
    """
    psi = np.asarray(psiAB, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    dimAB = len(psi)
    dimC, remainder = divmod(rhoABC.dimension, dimAB)
    if remainder != 0 or dimC == 0:
        raise DimensionMismatchError(
            f"state of dimension {rhoABC.dimension} does not factor "
            f"through a pure state of dimension {dimAB}"
        )
    rhoAB = partial_trace(rhoABC.entries, (dimAB, dimC), (0,))
    epsilon = float(1.0 - np.real(psi.conj() @ rhoAB @ psi))
    epsilon = max(epsilon, 0.0)
    if epsilon >= 1.0:
        raise PreconditionError(
            "reduced state has no overlap with the target pure state"
        )
    eigenvalues, eigenvectors = np.linalg.eigh(rhoAB)
    topWeight = float(eigenvalues[-1])
    top = eigenvectors[:, -1]
    if topWeight < 1.0 - epsilon - CHAIN_TOL:
        raise LcsError(
            f"top eigenvalue {topWeight} fell below the overlap "
            f"{1.0 - epsilon}"
        )
    # Condition the C system on the top eigenvector of the AB restriction.
    reshaped = rhoABC.entries.reshape(dimAB, dimC, dimAB, dimC)
    conditioned = np.einsum("i,ijkl,k->jl", top.conj(), reshaped, top)
    auxState = DensityOperator(dimC, conditioned / np.trace(conditioned))
    product = np.kron(np.outer(psi, psi.conj()), auxState.entries)
    traceDistance = 0.5 * trace_norm(rhoABC.entries - product)
    bound = 3.0 * epsilon
    if traceDistance > bound + CHAIN_TOL:
        raise LcsError(
            f"trace distance {traceDistance} exceeds the bound {bound}"
        )
    return ProductStateExtraction(
        auxState, epsilon, topWeight, traceDistance, bound
    )


@dataclass(frozen=True)
class EprExtraction:
    """Product extraction driven by approximate stabilizers.

    eta bounds the state-dependent distance of g (x) conj(g) from the
    identity over the whole group; the extracted product state with the
    maximally entangled AB factor is then 3 * eta^2 close in half trace
    norm.
    """

    eta: float
    epsilon: float
    bound: float
    extraction: ProductStateExtraction


def extract_epr_state(
    rhoABC: DensityOperator,
    rep: Representation,
    group: Sequence[PauliElement],
) -> EprExtraction:
    """Certify closeness to the maximally entangled state times junk.

    The AB restriction is tested against every group element acting as
    rep (x) conj(rep); the worst distance eta controls the overlap with
    the maximally entangled state, which in turn drives the product
    extraction.
    """
    dim = rep.dimension
    dimC, remainder = divmod(rhoABC.dimension, dim * dim)
    if remainder != 0 or dimC == 0:
        raise DimensionMismatchError(
            f"state of dimension {rhoABC.dimension} does not contain a "
            f"bipartite system of local dimension {dim}"
        )
    rhoAB = DensityOperator(
        dim * dim, partial_trace(rhoABC.entries, (dim * dim, dimC), (0,))
    )
    eye = np.eye(dim * dim)
    distances = [
        state_distance(
            rhoAB,
            np.kron(rep.evaluate_element(g), rep.evaluate_element(g).conj()),
            eye,
        )
        for g in group
    ]
    eta = max(distances)
    projector = epr_projector(rep, group)
    epsilon = float(1.0 - np.real(np.trace(rhoAB.entries @ projector)))
    epsilon = max(epsilon, 0.0)
    # Averaging the squared distances recovers the projector overlap.
    meanSquare = float(np.mean([value**2 for value in distances]))
    if abs(epsilon - 0.5 * meanSquare) > CHAIN_TOL:
        raise LcsError(
            f"projector overlap defect {epsilon} disagrees with the mean "
            f"squared distance {meanSquare}"
        )
    extraction = extract_product_state(rhoABC, epr_vector(dim))
    bound = 3.0 * eta * eta
    if extraction.traceDistance > bound + CHAIN_TOL:
        raise LcsError(
            f"trace distance {extraction.traceDistance} exceeds the "
            f"stabilizer bound {bound}"
        )
    return EprExtraction(eta, epsilon, bound, extraction)


def _support_isometry(reduced: np.ndarray) -> np.ndarray:
    """Columns spanning the support of a reduced state.

    A full-rank state gets the identity, so compression leaves the
    observables untouched in that case.
    """
    eigenvalues, eigenvectors = np.linalg.eigh(reduced)
    keep = eigenvalues > SUPPORT_TOL
    if keep.all():
        return np.eye(len(eigenvalues), dtype=complex)
    return eigenvectors[:, keep]


@dataclass(frozen=True)
class ExactExtraction:
    """Operator solutions carried by a perfect strategy.

    projectorA and projectorB project onto the supports of the reduced
    states; the solutions are the observables compressed to those
    supports along the support isometries.  Alice's compression sends J
    to the primitive root of unity, Bob's to its conjugate.
    """

    projectorA: np.ndarray
    projectorB: np.ndarray
    operatorSolution: Representation
    conjugateSolution: Representation
    supportA: np.ndarray
    supportB: np.ndarray
    operatorResidual: float
    conjugateResidual: float


def extract_operator_solution_exact(
    game: LcsGame, strategy: ObservableStrategy
) -> ExactExtraction:
    """Compress a perfect strategy's observables to operator solutions.

    For a strategy winning with probability 1, each edge observable acts
    the same way on the support of the reduced state no matter which
    incident vertex asked for it, and the compressed observables satisfy
    every solution group relation.
    """
    d = game.modulus
    score = winning_probability(game, strategy)
    if 1.0 - score.pWin > CHAIN_TOL:
        raise PreconditionError(
            f"strategy wins with probability {score.pWin}, not 1"
        )
    rho = strategy.state.entries
    dims = (strategy.dimA, strategy.dimB)
    isometryA = _support_isometry(partial_trace(rho, dims, (0,)))
    isometryB = _support_isometry(partial_trace(rho, dims, (1,)))
    projectorA = isometryA @ isometryA.conj().T
    projectorB = isometryB @ isometryB.conj().T
    squeeze = np.kron(projectorA, projectorB)
    if np.max(np.abs(squeeze @ rho @ squeeze - rho)) > CHAIN_TOL:
        raise LcsError("support projectors fail to fix the shared state")

    firstVertex = {}
    for v in game.vertices:
        for e in game.incident_edges(v):
            firstVertex.setdefault(e, v)
    imagesA: dict[str, np.ndarray] = {}
    for e in game.edges:
        compressed = (
            isometryA.conj().T
            @ strategy.aliceObservables[(firstVertex[e], e)]
            @ isometryA
        )
        for v in game.vertices:
            if e not in game.incident_edges(v):
                continue
            other = (
                isometryA.conj().T
                @ strategy.aliceObservables[(v, e)]
                @ isometryA
            )
            if np.max(np.abs(other - compressed)) > ENTRY_TOL:
                raise LcsError(
                    f"observable for edge {e} depends on the vertex asked"
                )
        imagesA[e] = compressed
    imagesB = {
        e: isometryB.conj().T @ strategy.bobObservables[e] @ isometryB
        for e in game.edges
    }

    operatorSolution = Representation(isometryA.shape[1], imagesA, omega(d))
    operatorResidual = validate_operator_solution(operatorSolution, game)
    conjugateSolution = Representation(
        isometryB.shape[1], imagesB, np.conj(omega(d))
    )
    conjugateResidual = representation_relation_residual(
        conjugateSolution, solution_group(game).presentation
    )
    if conjugateResidual > CHAIN_TOL:
        raise LcsError(
            f"Bob's compressed observables miss the conjugate solution "
            f"by {conjugateResidual:.3e}"
        )
    return ExactExtraction(
        projectorA,
        projectorB,
        operatorSolution,
        conjugateSolution,
        isometryA,
        isometryB,
        operatorResidual,
        conjugateResidual,
    )


@dataclass(frozen=True)
class ResidualEntry:
    """One certified inequality: a summed distance against its bound."""

    name: str
    value: float
    bound: float
    satisfied: bool


@dataclass(frozen=True)
class ResidualReport:
    """How far a strategy's observables are from a solution group action.

    Each entry sums state-dependent distances of one structural family
    (relation products, commutators of co-incident edges, consistency
    between the players) and compares it to an explicit multiple of
    l0 |E| |V| sqrt(epsilon).
    """

    epsilon: float
    l0: int
    vertexCount: int
    edgeCount: int
    entries: tuple[ResidualEntry, ...]
    allSatisfied: bool


def residual_check(
    game: LcsGame,
    strategy: ObservableStrategy,
    params: ComplexityParameters,
) -> ResidualReport:
    """Certify the approximate-representation residuals of a strategy.

    The five certified sums cover Bob's relation products, commutators
    of Bob's observables at co-incident edges, the same two families for
    Alice's observables tied to a fixed choice of incident vertex, and
    the consistency operators between the players.  The bounds use the
    game's complexity parameter l0.
    """
    d = game.modulus
    score = winning_probability(game, strategy)
    epsilon = max(1.0 - score.pWin, 0.0)
    root = float(np.sqrt(epsilon))
    vertexCount = len(game.vertices)
    edgeCount = len(game.edges)
    scale = params.l0 * edgeCount * vertexCount * root

    state = strategy.state
    eyeA = np.eye(strategy.dimA, dtype=complex)
    eyeB = np.eye(strategy.dimB, dtype=complex)
    eyeAB = np.eye(state.dimension, dtype=complex)

    firstVertex = {}
    coIncident: set[tuple[str, str]] = set()
    for v in game.vertices:
        edges = game.incident_edges(v)
        for e in edges:
            firstVertex.setdefault(e, v)
        for e1, e2 in itertools.permutations(edges, 2):
            coIncident.add((e1, e2))

    def relation_product(operator, side: str) -> dict[str, np.ndarray]:
        out = {}
        for v in game.vertices:
            eye = eyeA if side == "alice" else eyeB
            product = eye
            for e in game.incident_edges(v):
                product = product @ np.linalg.matrix_power(
                    operator(e), game.coefficient(v, e) % d
                )
            out[v] = product
        return out

    def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return x @ y @ x.conj().T @ y.conj().T

    bob = strategy.bobObservables
    alice = {e: strategy.aliceObservables[(firstVertex[e], e)] for e in game.edges}

    bobRelations = sum(
        state_distance(
            state,
            np.kron(eyeA, product),
            omega(d) ** (-game.label(v)) * eyeAB,
        )
        for v, product in relation_product(lambda e: bob[e], "bob").items()
    )
    bobCommutators = sum(
        state_distance(
            state, np.kron(eyeA, commutator(bob[e1], bob[e2])), eyeAB
        )
        for e1, e2 in sorted(coIncident)
    )
    aliceRelations = sum(
        state_distance(
            state,
            np.kron(product, eyeB),
            omega(d) ** game.label(v) * eyeAB,
        )
        for v, product in relation_product(lambda e: alice[e], "alice").items()
    )
    aliceCommutators = sum(
        state_distance(
            state, np.kron(commutator(alice[e1], alice[e2]), eyeB), eyeAB
        )
        for e1, e2 in sorted(coIncident)
    )
    consistency = sum(
        state_distance(state, np.kron(alice[e], bob[e]), eyeAB)
        for e in game.edges
    )

    raw = (
        ("bob-relations", bobRelations, 4.0 * scale),
        ("bob-commutators", bobCommutators, 4.0 * scale),
        ("alice-relations", aliceRelations, 8.0 * scale),
        ("alice-commutators", aliceCommutators, 8.0 * scale),
        ("consistency", consistency, 2.0 * edgeCount * vertexCount * root),
    )
    entries = tuple(
        ResidualEntry(name, float(value), float(bound), value <= bound + CHAIN_TOL)
        for name, value, bound in raw
    )
    return ResidualReport(
        epsilon,
        params.l0,
        vertexCount,
        edgeCount,
        entries,
        all(entry.satisfied for entry in entries),
    )
