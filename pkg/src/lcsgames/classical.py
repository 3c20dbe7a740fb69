"""Exact classical values of linear-constraint games."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import SizeCapError, ValidationError
from .games import UNIFORM_INCIDENT, LcsGame, question_distribution

DEFAULT_SEARCH_CAP = 10**7


def satisfying_assignments(game: LcsGame, vertex: str) -> tuple[dict[str, int], ...]:
    """All assignments to the vertex's incident edges solving its equation.

    When some coefficient is a unit mod d the enumeration is d^(k-1): the
    other edges range freely and the pivot edge is solved for.  Otherwise
    all d^k assignments are filtered.
    """
    d = game.modulus
    incident = game.incident_edges(vertex)
    target = game.label(vertex)
    pivot = next(
        (e for e in incident if math.gcd(game.coefficient(vertex, e), d) == 1), None
    )
    results: list[dict[str, int]] = []
    if pivot is None:
        for values in itertools.product(range(d), repeat=len(incident)):
            assignment = dict(zip(incident, values))
            if game.equation_holds(vertex, assignment):
                results.append(assignment)
        return tuple(results)

    others = tuple(e for e in incident if e != pivot)
    inverse = pow(game.coefficient(vertex, pivot), -1, d)
    for values in itertools.product(range(d), repeat=len(others)):
        rest = sum(
            game.coefficient(vertex, e) * a for e, a in zip(others, values)
        )
        pivotValue = (inverse * (target - rest)) % d
        assignment = dict(zip(others, values))
        assignment[pivot] = pivotValue
        results.append(dict(sorted(assignment.items(), key=lambda kv: incident.index(kv[0]))))
    results.sort(key=lambda a: tuple(a[e] for e in incident))
    return tuple(results)


@dataclass(frozen=True)
class ClassicalStrategy:
    """Deterministic strategy: full assignments for one player, values for the other.

    ``alice`` maps each vertex to a full edge assignment satisfying that
    vertex's equation; ``bob`` maps each edge to a value mod d.
    """

    game: LcsGame
    alice: Mapping[str, Mapping[str, int]]
    bob: Mapping[str, int]

    def __post_init__(self) -> None:
        for v in self.game.vertices:
            if v not in self.alice:
                raise ValidationError(f"no assignment for vertex {v!r}")
            row = self.alice[v]
            missing = [e for e in self.game.edges if e not in row]
            if missing:
                raise ValidationError(f"assignment for {v!r} misses edges {missing}")
            if not self.game.equation_holds(v, row):
                raise ValidationError(f"assignment for {v!r} violates its equation")
        for e in self.game.edges:
            if e not in self.bob:
                raise ValidationError(f"no value for edge {e!r}")

    def winning_probability(self, dist: str = UNIFORM_INCIDENT) -> Fraction:
        total = Fraction(0)
        for (v, e), weight in question_distribution(self.game, dist):
            if self.alice[v][e] % self.game.modulus == self.bob[e] % self.game.modulus:
                total += weight
        return total


def _vertex_tables(game: LcsGame, dist: str):
    """Per-vertex rows and the question weight of each incident edge."""
    weights: dict[tuple[str, str], Fraction] = dict(question_distribution(game, dist))
    tables = []
    for v in game.vertices:
        incident = game.incident_edges(v)
        rows = satisfying_assignments(game, v)
        edgeWeights = [weights.pop((v, e), Fraction(0)) for e in incident]
        tables.append((v, incident, rows, edgeWeights))
    # Remaining pairs are non-incident questions; the assigning player is
    # unconstrained there and can always copy the other player's value.
    freeWeight = sum(weights.values(), Fraction(0))
    return tables, freeWeight


def classical_value(
    game: LcsGame,
    dist: str = UNIFORM_INCIDENT,
    *,
    cap: int = DEFAULT_SEARCH_CAP,
    pruned: bool = False,
) -> Fraction:
    """Maximum winning probability over deterministic strategies, exactly.

    Shared randomness cannot beat the best deterministic strategy, so this
    is the full classical value.  The default mode crosses every tuple of
    per-vertex rows with every value table; pruned mode picks the best row
    per vertex for each fixed value table, which is exact because rows are
    chosen independently per vertex.
    """
    d = game.modulus
    tables, freeWeight = _vertex_tables(game, dist)
    bobCount = d ** len(game.edges)
    rowCounts = [max(1, len(rows)) for _, _, rows, _ in tables]
    if pruned:
        search = sum(rowCounts) * bobCount
    else:
        search = math.prod(rowCounts) * bobCount
    if search > cap:
        hint = "" if pruned else "; consider pruned=True"
        raise SizeCapError(f"search space {search} exceeds cap {cap}{hint}")

    edgeIndex = {e: i for i, e in enumerate(game.edges)}
    best = Fraction(0)
    for bob in itertools.product(range(d), repeat=len(game.edges)):
        if pruned:
            value = freeWeight
            for _, incident, rows, edgeWeights in tables:
                value += max(
                    (
                        sum(
                            (w for e, w in zip(incident, edgeWeights)
                             if row[e] == bob[edgeIndex[e]]),
                            Fraction(0),
                        )
                        for row in rows
                    ),
                    default=Fraction(0),
                )
            best = max(best, value)
        else:
            rowChoices = [rows if rows else (None,) for _, _, rows, _ in tables]
            for combo in itertools.product(*rowChoices):
                value = freeWeight
                for row, (_, incident, _, edgeWeights) in zip(combo, tables):
                    if row is None:
                        continue
                    value += sum(
                        (w for e, w in zip(incident, edgeWeights)
                         if row[e] == bob[edgeIndex[e]]),
                        Fraction(0),
                    )
                best = max(best, value)
    return best
