"""Solution groups of linear-constraint games and their verification."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import IncompleteWitnessError, PreconditionError, ValidationError
from .games import LcsGame
from .pauli import (
    PauliElement,
    canonical_form,
    identity,
    pauli_inverse,
    pauli_mul,
)
from .presentations import GroupPresentation
from .representations import MATRIX_TOL, pauli_rep
from .words import FreeWord, commutator, word

_IDENT_KEY = re.compile(r"^([xz])([1-9][0-9]*)$")


@dataclass(frozen=True)
class EquationRelation:
    """One defining relation of a solution group, tagged with its vertex."""

    vertex: str
    relation: FreeWord


@dataclass(frozen=True)
class SolutionGroupPresentation:
    """Presentation with one generator per edge of the underlying game.

    Equation relations say the signed product of a vertex's edges equals
    J to the vertex label; commutator relations make co-incident edges
    commute.
    """

    presentation: GroupPresentation
    equationRelations: tuple[EquationRelation, ...]
    commutatorRelations: tuple[FreeWord, ...]

    def __post_init__(self) -> None:
        expected = tuple(r.relation for r in self.equationRelations)
        expected += self.commutatorRelations
        if self.presentation.relations != expected:
            raise ValidationError(
                "presentation relations must list equation relations then commutators"
            )
        seen: set[frozenset[str]] = set()
        for relation in self.commutatorRelations:
            names = relation.generator_names()
            letters = relation.letters
            if (
                relation.jPower != 0
                or len(letters) != 4
                or len(names) != 2
                or letters != (
                    (letters[0][0], 1),
                    (letters[1][0], 1),
                    (letters[0][0], -1),
                    (letters[1][0], -1),
                )
            ):
                raise ValidationError(f"not a commutator of two edges: {relation.to_string()}")
            pair = frozenset(names)
            if pair in seen:
                raise ValidationError(f"duplicate commutator pair {sorted(pair)}")
            seen.add(pair)


def solution_group(game: LcsGame) -> SolutionGroupPresentation:
    """Present the group generated by the game's edges.

    One relation per vertex (its equation, with the right-hand side moved
    to a J power) and one commutator per unordered pair of co-incident
    edges.
    """
    equations = []
    for v in game.vertices:
        letters: list[tuple[str, int]] = []
        for e in game.edges:
            exponent = game.coefficient(v, e)
            if exponent:
                sign = 1 if exponent > 0 else -1
                letters += [(e, sign)] * abs(exponent)
        equations.append(
            EquationRelation(v, FreeWord.make(letters, jPower=-game.label(v)))
        )

    commutators = []
    edges = game.edges
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if game.hypergraph.co_incident(edges[i], edges[j]):
                commutators.append(commutator(edges[i], edges[j]))

    presentation = GroupPresentation(
        generators=edges,
        relations=tuple(r.relation for r in equations) + tuple(commutators),
        modulus=game.modulus,
    )
    return SolutionGroupPresentation(presentation, tuple(equations), tuple(commutators))


def product_presentation(
    factors: Sequence[GroupPresentation], prefixes: Sequence[str] | None = None
) -> GroupPresentation:
    """Join presentations, making generators of distinct factors commute.

    Generators and relations are the disjoint unions (ids prefixed
    ``g1.``, ``g2.``, ... by default) plus one commutator for every pair of
    generators from different factors.  A single factor is returned
    unchanged.
    """
    if not factors:
        raise PreconditionError("need at least one presentation")
    if len(factors) == 1:
        return factors[0]
    modulus = factors[0].modulus
    for factor in factors[1:]:
        if factor.modulus != modulus:
            raise PreconditionError("all factors must share one modulus")
    if prefixes is None:
        prefixes = [f"g{i + 1}." for i in range(len(factors))]

    def rename(w: FreeWord, prefix: str) -> FreeWord:
        return FreeWord(tuple((prefix + name, exp) for name, exp in w.letters), w.jPower)

    generators: list[str] = []
    relations: list[FreeWord] = []
    for prefix, factor in zip(prefixes, factors):
        generators += [prefix + s for s in factor.generators]
        relations += [rename(r, prefix) for r in factor.relations]
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            for s in factors[i].generators:
                for t in factors[j].generators:
                    relations.append(commutator(prefixes[i] + s, prefixes[j] + t))
    return GroupPresentation(tuple(generators), tuple(relations), modulus)


def _parse_identification(
    identification: Mapping[str, str], game: LcsGame
) -> int:
    """Check shape and injectivity; return the qudit count."""
    indices: set[int] = set()
    for key in identification:
        match = _IDENT_KEY.match(key)
        if not match:
            raise PreconditionError(f"identification key {key!r} is not x<i> or z<i>")
        indices.add(int(match.group(2)))
    n = max(indices, default=0)
    expected = {f"{letter}{i}" for letter in "xz" for i in range(1, n + 1)}
    if set(identification) != expected or n == 0:
        raise PreconditionError("identification must cover x1..xn, z1..zn exactly")
    values = list(identification.values())
    if len(set(values)) != len(values):
        raise PreconditionError("identification must be injective")
    unknown = [e for e in values if e not in game.edges]
    if unknown:
        raise PreconditionError(f"identification targets unknown edges {unknown}")
    return n


def verify_solution_group_iso(
    game: LcsGame,
    identification: Mapping[str, str],
    edgeExpressions: Mapping[str, FreeWord | str],
) -> bool:
    """Check that the game's solution group is the n-qudit Pauli group.

    ``identification`` names the edges playing the roles of the Pauli
    generators; ``edgeExpressions`` writes every edge as a word in them.
    The check is twofold: symbolically, every defining relation of the
    solution group must map to the correct central power under the
    canonical form; numerically, the irreducible matrix images of the
    edges must satisfy every game equation and co-incidence commutation
    within 1e-9.
    """
    n = _parse_identification(identification, game)
    d = game.modulus
    missing = [e for e in game.edges if e not in edgeExpressions]
    if missing:
        raise IncompleteWitnessError(f"edges without expressions: {missing}")

    expressions = {
        e: word(w) if isinstance(w, str) else w for e, w in edgeExpressions.items()
    }
    images = {e: canonical_form(expressions[e], n, d) for e in game.edges}

    # Every Pauli generator must be hit (up to a central phase), so the
    # expressed edges generate the whole group.
    for key, edge in identification.items():
        kind, index = _IDENT_KEY.match(key).groups()  # type: ignore[union-attr]
        i = int(index)
        target = images[edge]
        xVector = tuple(1 if (kind == "x" and k == i - 1) else 0 for k in range(n))
        zVector = tuple(1 if (kind == "z" and k == i - 1) else 0 for k in range(n))
        if target.xExp != xVector or target.zExp != zVector:
            return False

    group = solution_group(game)
    for relation in group.presentation.relations:
        product = identity(n, d)
        for name, exp in relation.letters:
            factor = images[name]
            if exp < 0:
                factor = pauli_inverse(factor)
            product = pauli_mul(product, factor)
        expected = PauliElement(n, d, (-relation.jPower) % d, (0,) * n, (0,) * n)
        if product != expected:
            return False

    rep = pauli_rep(1, n, d)
    matrices = {e: rep.evaluate(expressions[e]) for e in game.edges}
    dim = d**n
    eye = np.eye(dim)
    omega = np.exp(2j * np.pi / d)

    for v in game.vertices:
        productMatrix = eye
        for e in game.incident_edges(v):
            exponent = game.coefficient(v, e)
            productMatrix = productMatrix @ np.linalg.matrix_power(
                matrices[e], exponent % d
            )
        if np.max(np.abs(productMatrix - omega ** game.label(v) * eye)) > MATRIX_TOL:
            return False
    edges = game.edges
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if game.hypergraph.co_incident(edges[i], edges[j]):
                a, b = matrices[edges[i]], matrices[edges[j]]
                if np.max(np.abs(a @ b - b @ a)) > MATRIX_TOL:
                    return False

    for i in range(1, n + 1):
        a = matrices[identification[f"x{i}"]]
        b = matrices[identification[f"z{i}"]]
        if np.max(np.abs(b @ a - omega * a @ b)) > MATRIX_TOL:
            return False
        if np.max(np.abs(np.linalg.matrix_power(a, d) - eye)) > MATRIX_TOL:
            return False
        if np.max(np.abs(np.linalg.matrix_power(b, d) - eye)) > MATRIX_TOL:
            return False
    return True


def square_identification() -> dict[str, str]:
    """Edges of the magic square playing the two-qubit Pauli generators."""
    return {"x1": "e7", "x2": "e9", "z1": "e3", "z2": "e1"}


def square_edge_expressions() -> dict[str, str]:
    """Canonical expressions of the magic square edges in x1, z1, x2, z2."""
    return {
        "e1": "z2",
        "e2": "z1^-1 z2^-1",
        "e3": "z1",
        "e4": "x1^-1 z2^-1",
        "e5": "J x1 z1 x2 z2",
        "e6": "z1^-1 x2^-1",
        "e7": "x1",
        "e8": "x1^-1 x2^-1",
        "e9": "x2",
    }


def pentagram_identification() -> dict[str, str]:
    """Edges of the magic pentagram playing the three-qubit Pauli generators."""
    return {"x1": "e7", "z1": "e9", "x2": "e8", "z2": "e3", "x3": "e2", "z3": "e4"}


def pentagram_edge_expressions() -> dict[str, str]:
    """Canonical expressions of the magic pentagram edges."""
    return {
        "e1": "z1 x2^-1 x3",
        "e2": "x3",
        "e3": "z2",
        "e4": "z3",
        "e5": "x1 x2^-1 z3",
        "e6": "z2 x3^-1 x1",
        "e7": "x1",
        "e8": "x2",
        "e9": "z1",
        "e10": "z1 z2 z3^-1",
    }
