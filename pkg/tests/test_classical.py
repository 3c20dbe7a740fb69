"""Tests for exact classical values."""

import math
import random
from fractions import Fraction

import pytest

from lcsgames.classical import (
    ClassicalStrategy,
    classical_value,
    satisfying_assignments,
)
from lcsgames.errors import SizeCapError, ValidationError
from lcsgames.games import (
    FULLY_UNIFORM,
    magic_pentagram,
    magic_square,
    make_game,
)


def smith_solvable(rows, rhs, d):
    """Solvability oracle for H a = l (mod d) by integer elimination.

    Brings H to diagonal form with unimodular row/column operations, then
    checks each congruence gcd(diag, d) | rhs.
    """
    matrix = [list(r) for r in rows]
    target = list(rhs)
    m = len(matrix)
    k = len(matrix[0]) if m else 0
    pivot = 0
    while pivot < min(m, k):
        entries = [
            (abs(matrix[i][j]), i, j)
            for i in range(pivot, m)
            for j in range(pivot, k)
            if matrix[i][j] != 0
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        matrix[pivot], matrix[pi] = matrix[pi], matrix[pivot]
        target[pivot], target[pi] = target[pi], target[pivot]
        for row in matrix:
            row[pivot], row[pj] = row[pj], row[pivot]
        head = matrix[pivot][pivot]
        for i in range(pivot + 1, m):
            quotient = matrix[i][pivot] // head
            if quotient:
                matrix[i] = [a - quotient * b for a, b in zip(matrix[i], matrix[pivot])]
                target[i] -= quotient * target[pivot]
        for j in range(pivot + 1, k):
            quotient = matrix[pivot][j] // head
            if quotient:
                for row in matrix:
                    row[j] -= quotient * row[pivot]
        # advance only once the cross is clear; otherwise re-pick a smaller pivot
        if all(matrix[i][pivot] == 0 for i in range(pivot + 1, m)) and all(
            matrix[pivot][j] == 0 for j in range(pivot + 1, k)
        ):
            pivot += 1
    for i in range(m):
        diag = matrix[i][i] if i < k else 0
        if target[i] % math.gcd(abs(diag), d):
            return False
    return True


def game_system(game):
    rows = [
        [game.coefficient(v, e) for e in game.edges] for v in game.vertices
    ]
    rhs = [game.label(v) for v in game.vertices]
    return rows, rhs


def random_game(rng):
    d = rng.choice([2, 3])
    edgeCount = rng.randint(2, 5)
    vertexCount = rng.randint(1, 4)
    edges = [f"e{i}" for i in range(1, edgeCount + 1)]
    vertices = [f"v{i}" for i in range(1, vertexCount + 1)]
    incidence = []
    for v in vertices:
        chosen = rng.sample(edges, rng.randint(1, min(3, edgeCount)))
        for e in chosen:
            incidence.append((v, e, rng.choice([-2, -1, 1, 2])))
    labels = {v: rng.randrange(d) for v in vertices}
    return make_game(d, vertices, edges, incidence, labels)


class TestSatisfyingAssignments:
    def test_single_variable(self):
        game = make_game(3, ["v1"], ["e1"], [("v1", "e1", 1)], {"v1": 2})
        assert satisfying_assignments(game, "v1") == ({"e1": 2},)

    def test_counts_with_unit_pivot(self):
        game = magic_square(3)
        for v in game.vertices:
            assert len(satisfying_assignments(game, v)) == 9

    def test_every_assignment_satisfies(self):
        game = magic_pentagram()
        for v in game.vertices:
            for assignment in satisfying_assignments(game, v):
                assert game.equation_holds(v, assignment)

    def test_no_unit_pivot(self):
        # 2a = 1 mod 4 has no solution; 2a = 2 mod 4 has two
        game = make_game(4, ["v1"], ["e1"], [("v1", "e1", 2)], {"v1": 1})
        assert satisfying_assignments(game, "v1") == ()
        game = make_game(4, ["v1"], ["e1"], [("v1", "e1", 2)], {"v1": 2})
        assert len(satisfying_assignments(game, "v1")) == 2


class TestClassicalStrategy:
    def test_valid_strategy_scores(self):
        game = make_game(2, ["v1"], ["e1", "e2"], [("v1", "e1", 1), ("v1", "e2", 1)], {})
        strategy = ClassicalStrategy(
            game, {"v1": {"e1": 1, "e2": 1}}, {"e1": 1, "e2": 0}
        )
        assert strategy.winning_probability() == Fraction(1, 2)

    def test_row_must_satisfy_equation(self):
        game = make_game(2, ["v1"], ["e1", "e2"], [("v1", "e1", 1), ("v1", "e2", 1)], {})
        with pytest.raises(ValidationError):
            ClassicalStrategy(game, {"v1": {"e1": 1, "e2": 0}}, {"e1": 0, "e2": 0})

    def test_missing_edge_value(self):
        game = make_game(2, ["v1"], ["e1", "e2"], [("v1", "e1", 1), ("v1", "e2", 1)], {})
        with pytest.raises(ValidationError):
            ClassicalStrategy(game, {"v1": {"e1": 0, "e2": 0}}, {"e1": 0})


class TestClassicalValue:
    def test_magic_square_value(self):
        assert classical_value(magic_square(2), pruned=True) == Fraction(17, 18)

    def test_magic_pentagram_value(self):
        assert classical_value(magic_pentagram(), pruned=True) == Fraction(19, 20)

    def test_single_trivial_equation(self):
        game = make_game(2, ["v1"], ["e1"], [("v1", "e1", 1)], {})
        assert classical_value(game) == 1

    def test_full_and_pruned_agree(self):
        rng = random.Random(7)
        for _ in range(10):
            d = rng.choice([2, 3])
            edges = ["e1", "e2", "e3"]
            vertices = ["v1", "v2"]
            incidence = []
            for v in vertices:
                for e in rng.sample(edges, rng.randint(1, 2)):
                    incidence.append((v, e, rng.choice([-1, 1])))
            labels = {v: rng.randrange(d) for v in vertices}
            game = make_game(d, vertices, edges, incidence, labels)
            assert classical_value(game) == classical_value(game, pruned=True)

    def test_relabelling_invariance(self):
        base = magic_square(2)
        rng = random.Random(3)
        for _ in range(3):
            vertexNames = {v: f"w{rng.randrange(10**6)}" for v in base.vertices}
            edgeNames = {e: f"f{rng.randrange(10**6)}" for e in base.edges}
            vertices = [vertexNames[v] for v in base.vertices]
            edges = [edgeNames[e] for e in base.edges]
            rng.shuffle(vertices)
            rng.shuffle(edges)
            incidence = [
                (vertexNames[v], edgeNames[e], c)
                for v, e, c in base.hypergraph.incidence
            ]
            labels = {vertexNames[v]: base.label(v) for v in base.vertices}
            game = make_game(2, vertices, edges, incidence, labels)
            assert classical_value(game, pruned=True) == Fraction(17, 18)

    def test_value_one_iff_solvable(self):
        rng = random.Random(0)
        for _ in range(50):
            game = random_game(rng)
            rows, rhs = game_system(game)
            solvable = smith_solvable(rows, rhs, game.modulus)
            value = classical_value(game, pruned=True, cap=10**8)
            assert (value == 1) == solvable, (rows, rhs, game.modulus, value)

    def test_cap_error_suggests_pruning(self):
        with pytest.raises(SizeCapError, match="pruned"):
            classical_value(magic_pentagram(), cap=10**4)

    def test_fully_uniform_includes_free_pairs(self):
        game = make_game(
            2,
            ["v1", "v2"],
            ["e1", "e2"],
            [("v1", "e1", 1), ("v2", "e2", 1)],
            {"v1": 0, "v2": 1},
        )
        # both equations are solvable and non-incident questions are free wins
        assert classical_value(game, FULLY_UNIFORM) == 1
