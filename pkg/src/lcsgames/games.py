"""Linear-constraint games over Z_d and their products."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatchError, PreconditionError, ValidationError

UNIFORM_INCIDENT = "uniform-incident"
FULLY_UNIFORM = "fully-uniform"


@dataclass(frozen=True)
class Hypergraph:
    """Finite vertex/edge structure with integer incidence coefficients.

    ``incidence`` holds one ``(vertex, edge, coefficient)`` triple per
    nonzero entry of the incidence matrix.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    incidence: tuple[tuple[str, str, int], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex ids")
        if len(set(self.edges)) != len(self.edges):
            raise ValidationError("duplicate edge ids")
        vertexSet = set(self.vertices)
        edgeSet = set(self.edges)
        coeff: dict[tuple[str, str], int] = {}
        byVertex: dict[str, list[str]] = {v: [] for v in self.vertices}
        byEdge: dict[str, list[str]] = {e: [] for e in self.edges}
        for vertex, edge, value in self.incidence:
            if vertex not in vertexSet:
                raise ValidationError(f"incidence references unknown vertex {vertex!r}")
            if edge not in edgeSet:
                raise ValidationError(f"incidence references unknown edge {edge!r}")
            if value == 0:
                raise ValidationError(f"zero coefficient at ({vertex!r}, {edge!r})")
            if (vertex, edge) in coeff:
                raise ValidationError(f"duplicate incidence entry ({vertex!r}, {edge!r})")
            coeff[(vertex, edge)] = value
            byVertex[vertex].append(edge)
            byEdge[edge].append(vertex)
        edgeOrder = {e: i for i, e in enumerate(self.edges)}
        vertexOrder = {v: i for i, v in enumerate(self.vertices)}
        object.__setattr__(self, "_coeff", coeff)
        object.__setattr__(
            self,
            "_byVertex",
            {v: tuple(sorted(es, key=edgeOrder.__getitem__)) for v, es in byVertex.items()},
        )
        object.__setattr__(
            self,
            "_byEdge",
            {e: tuple(sorted(vs, key=vertexOrder.__getitem__)) for e, vs in byEdge.items()},
        )

    def coefficient(self, vertex: str, edge: str) -> int:
        return self._coeff.get((vertex, edge), 0)  # type: ignore[attr-defined]

    def incident_edges(self, vertex: str) -> tuple[str, ...]:
        return self._byVertex[vertex]  # type: ignore[attr-defined]

    def incident_vertices(self, edge: str) -> tuple[str, ...]:
        return self._byEdge[edge]  # type: ignore[attr-defined]

    def degree(self, vertex: str) -> int:
        return len(self.incident_edges(vertex))

    def co_incident(self, a: str, b: str) -> bool:
        """True when some vertex touches both edges."""
        return bool(set(self.incident_vertices(a)) & set(self.incident_vertices(b)))


@dataclass(frozen=True)
class LcsGame:
    """A system of linear equations mod d played as a nonlocal game.

    Each vertex carries the equation
    ``sum_e H(v, e) * a(e) = label(v)  (mod modulus)``.
    """

    hypergraph: Hypergraph
    labels: tuple[tuple[str, int], ...]
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValidationError("modulus must be at least 2")
        labelled = [v for v, _ in self.labels]
        if labelled != list(self.hypergraph.vertices):
            raise ValidationError("labels must cover exactly the vertices, in order")
        for _, value in self.labels:
            if not 0 <= value < self.modulus:
                raise ValidationError("labels must be reduced mod the modulus")
        object.__setattr__(self, "_labelOf", dict(self.labels))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.hypergraph.vertices

    @property
    def edges(self) -> tuple[str, ...]:
        return self.hypergraph.edges

    def label(self, vertex: str) -> int:
        return self._labelOf[vertex]  # type: ignore[attr-defined]

    def coefficient(self, vertex: str, edge: str) -> int:
        return self.hypergraph.coefficient(vertex, edge)

    def incident_edges(self, vertex: str) -> tuple[str, ...]:
        return self.hypergraph.incident_edges(vertex)

    def equation_holds(self, vertex: str, assignment: Mapping[str, int]) -> bool:
        total = sum(
            self.coefficient(vertex, e) * assignment[e]
            for e in self.incident_edges(vertex)
        )
        return total % self.modulus == self.label(vertex)


def make_game(
    modulus: int,
    vertices: Sequence[str],
    edges: Sequence[str],
    incidence: Iterable[tuple[str, str, int]],
    labels: Mapping[str, int],
) -> LcsGame:
    """Assemble a game, filling in zero labels for unlabelled vertices."""
    graph = Hypergraph(tuple(vertices), tuple(edges), tuple(incidence))
    table = tuple((v, labels.get(v, 0) % modulus) for v in graph.vertices)
    return LcsGame(graph, table, modulus)


def magic_square(d: int) -> LcsGame:
    """The 3x3 magic square game over Z_d.

    Nine cell variables, three row equations with coefficient +1 and three
    column equations with coefficient -1; only the middle column has
    right-hand side 1.
    """
    if d < 2:
        raise PreconditionError("modulus must be at least 2")
    rows = (("v1", ("e1", "e2", "e3")), ("v2", ("e4", "e5", "e6")), ("v3", ("e7", "e8", "e9")))
    cols = (("v4", ("e1", "e4", "e7")), ("v5", ("e2", "e5", "e8")), ("v6", ("e3", "e6", "e9")))
    incidence = [(v, e, 1) for v, es in rows for e in es]
    incidence += [(v, e, -1) for v, es in cols for e in es]
    vertices = [v for v, _ in rows] + [v for v, _ in cols]
    edges = [f"e{i}" for i in range(1, 10)]
    return make_game(d, vertices, edges, incidence, {"v5": 1 % d})


def magic_pentagram(d: int = 2) -> LcsGame:
    """The magic pentagram game: five four-variable equations over Z_d.

    The modulus defaults to 2, where the game has a perfect quantum
    strategy; other moduli are accepted for impossibility experiments.
    """
    if d < 2:
        raise PreconditionError("modulus must be at least 2")
    equations = (
        ("v1", (("e1", 1), ("e2", -1), ("e8", 1), ("e9", -1))),
        ("v2", (("e2", 1), ("e3", -1), ("e6", 1), ("e7", -1))),
        ("v3", (("e3", 1), ("e4", -1), ("e9", 1), ("e10", -1))),
        ("v4", (("e4", 1), ("e5", -1), ("e7", 1), ("e8", -1))),
        ("v5", (("e5", 1), ("e6", -1), ("e10", 1), ("e1", -1))),
    )
    incidence = [(v, e, c) for v, terms in equations for e, c in terms]
    vertices = [v for v, _ in equations]
    edges = [f"e{i}" for i in range(1, 11)]
    return make_game(d, vertices, edges, incidence, {"v5": 1 % d})


def game_product(games: Sequence[LcsGame]) -> LcsGame:
    """Combine games by adjoining a sum variable for each cross-factor pair.

    For every pair of edges x, y from distinct factors, a fresh edge e and a
    fresh vertex with equation x + y - e = 0 (label 0) are added.  Factor ids
    are prefixed ``g1.``, ``g2.``, ... so the result is deterministic; a
    single-factor product is returned unchanged.
    """
    if not games:
        raise PreconditionError("game_product needs at least one game")
    if len(games) == 1:
        return games[0]
    modulus = games[0].modulus
    for game in games[1:]:
        if game.modulus != modulus:
            raise DimensionMismatchError("all factors must share one modulus")

    prefixes = [f"g{i + 1}." for i in range(len(games))]
    vertices: list[str] = []
    edges: list[str] = []
    incidence: list[tuple[str, str, int]] = []
    labels: dict[str, int] = {}
    for prefix, game in zip(prefixes, games):
        vertices += [prefix + v for v in game.vertices]
        edges += [prefix + e for e in game.edges]
        incidence += [
            (prefix + v, prefix + e, c) for v, e, c in game.hypergraph.incidence
        ]
        labels.update({prefix + v: game.label(v) for v in game.vertices})

    crossVertices: list[str] = []
    for i in range(len(games)):
        for j in range(i + 1, len(games)):
            for x in games[i].edges:
                for y in games[j].edges:
                    left = prefixes[i] + x
                    right = prefixes[j] + y
                    pairEdge = f"e.{left}|{right}"
                    pairVertex = f"v.{left}|{right}"
                    edges.append(pairEdge)
                    crossVertices.append(pairVertex)
                    incidence += [
                        (pairVertex, left, 1),
                        (pairVertex, right, 1),
                        (pairVertex, pairEdge, -1),
                    ]
    return make_game(modulus, vertices + crossVertices, edges, incidence, labels)


def pauli_game(n: int) -> LcsGame:
    """A game over Z_2 whose solution group is the n-qubit Pauli group.

    Built from magic squares (two qubits each) and, for odd n, one magic
    pentagram (three qubits), combined with game_product.
    """
    if n < 2:
        raise PreconditionError("need at least two qubits")
    if n == 2:
        return magic_square(2)
    if n == 3:
        return magic_pentagram(2)
    if n % 2 == 0:
        return game_product([magic_square(2)] * (n // 2))
    return game_product([magic_square(2)] * ((n - 3) // 2) + [magic_pentagram(2)])


def question_distribution(
    game: LcsGame, kind: str = UNIFORM_INCIDENT
) -> tuple[tuple[tuple[str, str], Fraction], ...]:
    """Question weights for (vertex, edge) pairs.

    ``uniform-incident`` picks a uniform vertex and then a uniform edge of
    that vertex; ``fully-uniform`` picks both components independently and
    uniformly, including non-incident pairs.
    """
    pairs: list[tuple[tuple[str, str], Fraction]] = []
    if kind == UNIFORM_INCIDENT:
        vertexWeight = Fraction(1, len(game.vertices))
        for v in game.vertices:
            degree = game.hypergraph.degree(v)
            if degree == 0:
                raise PreconditionError(
                    f"vertex {v!r} has no incident edges to ask about"
                )
            for e in game.incident_edges(v):
                pairs.append(((v, e), vertexWeight / degree))
    elif kind == FULLY_UNIFORM:
        weight = Fraction(1, len(game.vertices) * len(game.edges))
        for v in game.vertices:
            for e in game.edges:
                pairs.append(((v, e), weight))
    else:
        raise PreconditionError(f"unknown question distribution {kind!r}")
    return tuple(pairs)
