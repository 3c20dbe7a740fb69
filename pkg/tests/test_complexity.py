"""Tests for witness complexity parameters of games."""

import pytest

from lcsgames.errors import IncompleteWitnessError, PreconditionError
from lcsgames.games import magic_pentagram, magic_square, make_game, pauli_game
from lcsgames.pauli import PauliElement, x_element, z_element
from lcsgames.pictures import (
    ComplexityParameters,
    PictureBuilder,
    build_triangle_picture,
    commutator_picture_square,
    commutator_picture_square_mirror,
    complexity_parameters,
    glue_pictures,
    pentagram_canonical_witnesses,
    picture_usage,
    product_canonical_witnesses,
    square_canonical_witnesses,
)
from lcsgames.presentations import pauli_presentation
from lcsgames.solutiongroups import solution_group


def through_picture(label):
    builder = PictureBuilder()
    builder.boundary("b1")
    builder.boundary("b2")
    builder.strand(label, ["b2", "b1"])
    return builder.build()


class TestPictureUsage:
    def test_through_strand_has_usage_one(self):
        pres = solution_group(magic_square(2)).presentation
        assert picture_usage(square_canonical_witnesses(2)["e1"], pres) == 1

    def test_centre_witness_has_usage_three(self):
        pres = solution_group(magic_square(2)).presentation
        assert picture_usage(square_canonical_witnesses(2)["e5"], pres) == 3

    def test_invalid_picture_is_refused(self):
        pic = glue_pictures(
            commutator_picture_square(3),
            commutator_picture_square_mirror(3),
            (("b1", "b4"), ("b3", "b2")),
        )
        pres = solution_group(magic_square(3)).presentation
        with pytest.raises(PreconditionError):
            picture_usage(pic, pres)


class TestCanonicalParameters:
    def test_square(self):
        params = complexity_parameters(magic_square(2), square_canonical_witnesses(2))
        assert params == ComplexityParameters(l0=3, m0=3, m=432, delta=432)

    def test_square_scales_with_the_modulus(self):
        params = complexity_parameters(magic_square(3), square_canonical_witnesses(3))
        assert params == ComplexityParameters(l0=3, m0=3, m=972, delta=972)

    def test_pentagram(self):
        params = complexity_parameters(
            magic_pentagram(2), pentagram_canonical_witnesses(2)
        )
        assert params == ComplexityParameters(l0=4, m0=1, m=648, delta=648)

    def test_two_square_product(self):
        game = pauli_game(4)
        params = complexity_parameters(game, product_canonical_witnesses(game))
        assert params == ComplexityParameters(l0=3, m0=3, m=1152, delta=1152)

    def test_square_pentagram_product(self):
        game = pauli_game(5)
        params = complexity_parameters(game, product_canonical_witnesses(game))
        assert params == ComplexityParameters(l0=4, m0=3, m=1440, delta=1440)


class TestWitnessChecking:
    def test_missing_witness_is_reported_by_edge(self):
        witnesses = dict(square_canonical_witnesses(2))
        del witnesses["e3"]
        with pytest.raises(IncompleteWitnessError, match="e3"):
            complexity_parameters(magic_square(2), witnesses)

    def test_swapped_witnesses_name_the_edge(self):
        witnesses = dict(square_canonical_witnesses(2))
        witnesses["e2"], witnesses["e4"] = witnesses["e4"], witnesses["e2"]
        with pytest.raises(PreconditionError, match="e2|e4"):
            complexity_parameters(magic_square(2), witnesses)

    def test_invalid_witness_is_refused(self):
        witnesses = dict(square_canonical_witnesses(3))
        witnesses["e1"] = glue_pictures(
            commutator_picture_square(3),
            commutator_picture_square_mirror(3),
            (("b1", "b4"), ("b3", "b2")),
        )
        with pytest.raises(PreconditionError):
            complexity_parameters(magic_square(3), witnesses)


class TestAuditedTriangles:
    def triangles(self, n, d, pairs):
        return {
            (x, y): build_triangle_picture(x, y, n, d) for x, y in pairs
        }

    def test_audited_m_is_the_largest_triangle_usage(self):
        pairs = [
            (x_element(1, 2, 2), z_element(1, 2, 2)),
            (x_element(2, 2, 2), z_element(2, 2, 2)),
            (
                PauliElement(2, 2, 1, (1, 1), (0, 1)),
                PauliElement(2, 2, 0, (0, 1), (1, 1)),
            ),
        ]
        triangles = self.triangles(2, 2, pairs)
        params = complexity_parameters(
            magic_square(2), square_canonical_witnesses(2), triangles
        )
        pres = pauli_presentation(2, 2)
        expected = max(picture_usage(pic, pres) for pic in triangles.values())
        assert params.m == expected
        assert params.delta == max(params.l0, params.m0, params.m)

    def test_empty_sample_is_refused(self):
        with pytest.raises(PreconditionError, match="empty"):
            complexity_parameters(magic_square(2), square_canonical_witnesses(2), {})

    def test_wrong_dimension_triangle_is_refused(self):
        triangles = self.triangles(1, 2, [(x_element(1, 1, 2), z_element(1, 1, 2))])
        with pytest.raises(PreconditionError, match="dimensions"):
            complexity_parameters(
                magic_square(2), square_canonical_witnesses(2), triangles
            )

    def test_mislabelled_triangle_is_refused(self):
        x = x_element(1, 2, 2)
        z = z_element(1, 2, 2)
        triangles = {(z, x): build_triangle_picture(x, z, 2, 2)}
        with pytest.raises(PreconditionError, match="wrong boundary"):
            complexity_parameters(
                magic_square(2), square_canonical_witnesses(2), triangles
            )


class TestUnrecognisedGames:
    def game(self):
        return make_game(
            2,
            ["v1"],
            ["f1", "f2"],
            [("v1", "f1", 1), ("v1", "f2", 1)],
            {"v1": 0},
        )

    def test_analytic_m_needs_a_recognised_shape(self):
        game = self.game()
        witnesses = {"f1": through_picture("f1"), "f2": through_picture("f2")}
        with pytest.raises(PreconditionError, match="triangle witnesses"):
            complexity_parameters(game, witnesses)
