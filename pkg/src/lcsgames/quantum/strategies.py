"""Quantum strategies for linear constraint system games.

A strategy is held in observable form: one order-d unitary per question
edge on Bob's side, one per incident vertex-edge pair on Alice's side
(commuting within each vertex), and a shared bipartite state.  The
projective-measurement form is related to it by the discrete Fourier
transform on outcomes, implemented here in both directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..errors import (
    DimensionMismatchError,
    InvalidRepresentationError,
    LcsError,
    PreconditionError,
    ValidationError,
)
from ..games import (
    UNIFORM_INCIDENT,
    LcsGame,
    magic_pentagram,
    magic_square,
    question_distribution,
)
from ..representations import Representation, omega, pauli_rep, representation_relation_residual
from ..solutiongroups import (
    pentagram_edge_expressions,
    solution_group,
    square_edge_expressions,
)
from .distance import state_distance_squared
from .states import DensityOperator, epr_density

ENTRY_TOL = 1e-9
CHAIN_TOL = 1e-7


def _check_observable(matrix: np.ndarray, dim: int, d: int, label: str) -> None:
    if matrix.shape != (dim, dim):
        raise ValidationError(
            f"{label} has shape {matrix.shape}, expected ({dim}, {dim})"
        )
    eye = np.eye(dim)
    if np.max(np.abs(matrix.conj().T @ matrix - eye)) > ENTRY_TOL:
        raise ValidationError(f"{label} is not unitary")
    if np.max(np.abs(np.linalg.matrix_power(matrix, d) - eye)) > ENTRY_TOL:
        raise ValidationError(f"{label} does not have order dividing {d}")


@dataclass(frozen=True)
class ObservableStrategy:
    """Order-d observables for both players plus the shared state."""

    modulus: int
    dimA: int
    dimB: int
    aliceObservables: Mapping[tuple[str, str], np.ndarray]
    bobObservables: Mapping[str, np.ndarray]
    state: DensityOperator

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "aliceObservables",
            {
                key: np.asarray(m, dtype=complex)
                for key, m in self.aliceObservables.items()
            },
        )
        object.__setattr__(
            self,
            "bobObservables",
            {
                key: np.asarray(m, dtype=complex)
                for key, m in self.bobObservables.items()
            },
        )
        if self.state.dimension != self.dimA * self.dimB:
            raise DimensionMismatchError(
                f"state dimension {self.state.dimension} is not "
                f"{self.dimA} * {self.dimB}"
            )
        d = self.modulus
        byVertex: dict[str, list[tuple[str, np.ndarray]]] = {}
        for (v, e), matrix in self.aliceObservables.items():
            _check_observable(matrix, self.dimA, d, f"observable at {(v, e)}")
            byVertex.setdefault(v, []).append((e, matrix))
        for v, pairs in byVertex.items():
            for (e1, m1), (e2, m2) in itertools.combinations(pairs, 2):
                if np.max(np.abs(m1 @ m2 - m2 @ m1)) > ENTRY_TOL:
                    raise ValidationError(
                        f"observables at vertex {v} for edges {e1} and {e2} "
                        "do not commute"
                    )
        for e, matrix in self.bobObservables.items():
            _check_observable(matrix, self.dimB, d, f"observable at edge {e}")


def _check_projector_family(
    projectors: Mapping, dim: int, tol: float, label: str
) -> None:
    total = np.zeros((dim, dim), dtype=complex)
    items = list(projectors.items())
    for key, p in items:
        if p.shape != (dim, dim):
            raise ValidationError(
                f"{label} outcome {key} has shape {p.shape}, expected "
                f"({dim}, {dim})"
            )
        if np.max(np.abs(p - p.conj().T)) > tol:
            raise ValidationError(f"{label} outcome {key} is not Hermitian")
        if np.max(np.abs(p @ p - p)) > tol:
            raise ValidationError(f"{label} outcome {key} is not idempotent")
        total += p
    for (k1, p1), (k2, p2) in itertools.combinations(items, 2):
        if np.max(np.abs(p1 @ p2)) > tol:
            raise ValidationError(
                f"{label} outcomes {k1} and {k2} are not orthogonal"
            )
    if np.max(np.abs(total - np.eye(dim))) > tol:
        raise ValidationError(f"{label} outcomes do not sum to the identity")


@dataclass(frozen=True)
class ProjectiveMeasurements:
    """Strategy in measurement form.

    Alice's outcomes at a vertex are tuples of residues, one per incident
    edge in the game's incidence order; Bob's outcomes are single residues.
    """

    modulus: int
    dimA: int
    dimB: int
    aliceProjectors: Mapping[str, Mapping[tuple[int, ...], np.ndarray]]
    bobProjectors: Mapping[str, Mapping[int, np.ndarray]]
    state: DensityOperator

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "aliceProjectors",
            {
                v: {a: np.asarray(p, dtype=complex) for a, p in fam.items()}
                for v, fam in self.aliceProjectors.items()
            },
        )
        object.__setattr__(
            self,
            "bobProjectors",
            {
                e: {b: np.asarray(p, dtype=complex) for b, p in fam.items()}
                for e, fam in self.bobProjectors.items()
            },
        )
        if self.state.dimension != self.dimA * self.dimB:
            raise DimensionMismatchError(
                f"state dimension {self.state.dimension} is not "
                f"{self.dimA} * {self.dimB}"
            )
        d = self.modulus
        for v, family in self.aliceProjectors.items():
            lengths = {len(a) for a in family}
            if len(lengths) > 1:
                raise ValidationError(
                    f"measurement at {v} mixes outcome tuple lengths {lengths}"
                )
            for a in family:
                if any(not 0 <= r < d for r in a):
                    raise ValidationError(
                        f"measurement at {v} has outcome {a} outside "
                        f"residues mod {d}"
                    )
            _check_projector_family(
                family, self.dimA, CHAIN_TOL, f"measurement at {v}"
            )
        for e, family in self.bobProjectors.items():
            if set(family) != set(range(d)):
                raise ValidationError(
                    f"measurement at edge {e} must have one outcome per "
                    f"residue mod {d}"
                )
            _check_projector_family(
                family, self.dimB, CHAIN_TOL, f"measurement at edge {e}"
            )


def _eigenprojection(matrix: np.ndarray, d: int, i: int) -> np.ndarray:
    """Projector onto the w^i eigenspace of an order-d unitary."""
    w = omega(d)
    out = np.zeros_like(matrix)
    power = np.eye(matrix.shape[0], dtype=complex)
    for k in range(d):
        out += w ** (-i * k) * power
        power = power @ matrix
    return out / d


def spectral_convert(
    measurements: ProjectiveMeasurements, game: LcsGame
) -> ObservableStrategy:
    """Fourier-transform outcome projectors into order-d observables."""
    d = game.modulus
    if measurements.modulus != d:
        raise DimensionMismatchError(
            f"measurements use modulus {measurements.modulus}, "
            f"game uses {d}"
        )
    w = omega(d)
    alice: dict[tuple[str, str], np.ndarray] = {}
    for v in game.vertices:
        edges = game.incident_edges(v)
        family = measurements.aliceProjectors.get(v)
        if family is None:
            raise PreconditionError(f"no measurement for vertex {v}")
        for a in family:
            if len(a) != len(edges):
                raise DimensionMismatchError(
                    f"outcome {a} at {v} does not assign all of {edges}"
                )
        for index, e in enumerate(edges):
            total = np.zeros((measurements.dimA, measurements.dimA), dtype=complex)
            for a, p in family.items():
                total += w ** a[index] * p
            alice[(v, e)] = total
    bob: dict[str, np.ndarray] = {}
    for e in game.edges:
        family = measurements.bobProjectors.get(e)
        if family is None:
            raise PreconditionError(f"no measurement for edge {e}")
        bob[e] = sum(w ** (-b) * p for b, p in family.items())
    return ObservableStrategy(
        d,
        measurements.dimA,
        measurements.dimB,
        alice,
        bob,
        measurements.state,
    )


def spectral_invert(
    strategy: ObservableStrategy, game: LcsGame
) -> ProjectiveMeasurements:
    """Recover outcome projectors from the observables.

    Alice's joint projector for an outcome tuple is the product of the
    per-edge eigenprojections, which commute within each vertex.
    """
    d = game.modulus
    if strategy.modulus != d:
        raise DimensionMismatchError(
            f"strategy uses modulus {strategy.modulus}, game uses {d}"
        )
    alice: dict[str, dict[tuple[int, ...], np.ndarray]] = {}
    for v in game.vertices:
        edges = game.incident_edges(v)
        perEdge = []
        for e in edges:
            matrix = strategy.aliceObservables.get((v, e))
            if matrix is None:
                raise PreconditionError(f"no observable for {(v, e)}")
            perEdge.append([_eigenprojection(matrix, d, i) for i in range(d)])
        family: dict[tuple[int, ...], np.ndarray] = {}
        for a in itertools.product(range(d), repeat=len(edges)):
            product = np.eye(strategy.dimA, dtype=complex)
            for index in range(len(edges)):
                product = product @ perEdge[index][a[index]]
            family[a] = product
        alice[v] = family
    bob: dict[str, dict[int, np.ndarray]] = {}
    for e in game.edges:
        matrix = strategy.bobObservables.get(e)
        if matrix is None:
            raise PreconditionError(f"no observable for edge {e}")
        bob[e] = {b: _eigenprojection(matrix, d, -b) for b in range(d)}
    return ProjectiveMeasurements(
        d, strategy.dimA, strategy.dimB, alice, bob, strategy.state
    )


def canonical_operator_solution(game: LcsGame) -> Representation:
    """The qubit operator solution sending each edge to a Pauli word.

    Available for the magic square and the magic pentagram over Z_2,
    where the solution group is the Pauli group on two and three qubits
    respectively.
    """
    d = game.modulus
    if d == 2 and game == magic_square(d):
        expressions = square_edge_expressions()
        tau = pauli_rep(1, 2, d)
    elif d == 2 and game == magic_pentagram(d):
        expressions = pentagram_edge_expressions()
        tau = pauli_rep(1, 3, d)
    else:
        raise PreconditionError(
            f"no canonical operator solution for this game at modulus {d}"
        )
    images = {e: tau.evaluate(text) for e, text in expressions.items()}
    return Representation(tau.dimension, images, omega(d))


def validate_operator_solution(
    rep: Representation, game: LcsGame, tol: float = CHAIN_TOL
) -> float:
    """Check rep against the game's solution group; return the residual.

    The scalar J image must be the primitive root of unity and every
    defining relation must hold within tol, else the representation is
    rejected.
    """
    d = game.modulus
    if set(rep.generatorImages) != set(game.edges):
        raise InvalidRepresentationError(
            "operator solution must have one image per game edge"
        )
    if abs(rep.jImage - omega(d)) > tol:
        raise InvalidRepresentationError(
            f"operator solution must send J to the primitive root of "
            f"unity of order {d}"
        )
    residual = representation_relation_residual(
        rep, solution_group(game).presentation
    )
    if residual > tol:
        raise InvalidRepresentationError(
            f"relation residual {residual:.3e} exceeds {tol:.1e}"
        )
    return residual


def ideal_strategy(
    game: LcsGame, solution: Representation | None = None
) -> ObservableStrategy:
    """Perfect strategy from an operator solution on the EPR state.

    Alice answers every incident pair with the solution's edge image,
    Bob with its entrywise conjugate.
    """
    if solution is None:
        solution = canonical_operator_solution(game)
    validate_operator_solution(solution, game)
    dim = solution.dimension
    alice: dict[tuple[str, str], np.ndarray] = {}
    for v in game.vertices:
        for e in game.incident_edges(v):
            alice[(v, e)] = solution.image(e)
    bob = {e: solution.image(e).conj() for e in game.edges}
    return ObservableStrategy(
        game.modulus, dim, dim, alice, bob, epr_density(dim)
    )


@dataclass(frozen=True)
class WinningProbability:
    """Score of a strategy together with its closeness measures.

    pCon is the probability that Bob's answer matches Alice's for the
    shared edge, pSat the probability that Alice's answers satisfy the
    queried equation.  eta and mu are the mean quarter-squared distances
    of the consistency and satisfaction operators from the identity.
    """

    pWin: float
    pCon: float
    pSat: float
    eta: float
    mu: float


def winning_probability(
    game: LcsGame,
    strategy: ObservableStrategy,
    kind: str = UNIFORM_INCIDENT,
) -> WinningProbability:
    """Score a strategy and audit the probability estimates.

    The win, consistency, and satisfaction probabilities come from the
    measurement form; eta and mu come from the observables directly.
    The two routes are tied together by bracketing inequalities, which
    are asserted here as internal checks.

    Non-incident questions (possible under the fully uniform
    distribution) carry no consistency check: the vertex player holds
    no observable for that edge, so the pair is won whenever her
    equation is satisfied, and it contributes nothing to eta.
    """
    d = game.modulus
    if strategy.modulus != d:
        raise DimensionMismatchError(
            f"strategy uses modulus {strategy.modulus}, game uses {d}"
        )
    weights = {
        pair: float(weight)
        for pair, weight in question_distribution(game, kind)
    }
    measurements = spectral_invert(strategy, game)
    rho = strategy.state.entries
    dimB = strategy.dimB

    pWin = pCon = pSat = eta = 0.0
    vertexWeight: dict[str, float] = {}
    for (v, e), weight in weights.items():
        vertexWeight[v] = vertexWeight.get(v, 0.0) + weight
        edges = game.incident_edges(v)
        incident = e in edges
        index = edges.index(e) if incident else -1
        bobFamily = measurements.bobProjectors[e]
        for a, p in measurements.aliceProjectors[v].items():
            satisfied = (
                sum(game.coefficient(v, f) * a[k] for k, f in enumerate(edges))
                - game.label(v)
            ) % d == 0
            for b, q in bobFamily.items():
                probability = float(
                    np.real(np.trace(rho @ np.kron(p, q)))
                )
                consistent = not incident or a[index] == b
                if consistent:
                    pCon += weight * probability
                if satisfied:
                    pSat += weight * probability
                if consistent and satisfied:
                    pWin += weight * probability
        if incident:
            consistency = np.kron(
                strategy.aliceObservables[(v, e)], strategy.bobObservables[e]
            )
            eta += weight * 0.25 * state_distance_squared(
                strategy.state, consistency, np.eye(strategy.state.dimension)
            )

    mu = 0.0
    for v, weight in vertexWeight.items():
        product = np.eye(strategy.dimA, dtype=complex)
        for e in game.incident_edges(v):
            product = product @ np.linalg.matrix_power(
                strategy.aliceObservables[(v, e)], game.coefficient(v, e) % d
            )
        target = omega(d) ** game.label(v) * np.eye(strategy.state.dimension)
        mu += weight * 0.25 * state_distance_squared(
            strategy.state, np.kron(product, np.eye(dimB)), target
        )

    checks = [
        pWin >= pCon + pSat - 1.0 - CHAIN_TOL,
        pWin <= min(pCon, pSat) + CHAIN_TOL,
        eta <= 1.0 - pCon + CHAIN_TOL,
        1.0 - pCon <= d * d * eta + CHAIN_TOL,
        mu <= 1.0 - pSat + CHAIN_TOL,
        1.0 - pSat <= d * d * mu + CHAIN_TOL,
    ]
    if not all(checks):
        raise LcsError(
            "probability estimates violate the bracketing inequalities: "
            f"pWin={pWin}, pCon={pCon}, pSat={pSat}, eta={eta}, mu={mu}"
        )
    return WinningProbability(pWin, pCon, pSat, eta, mu)
