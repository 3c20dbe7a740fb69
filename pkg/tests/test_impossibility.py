"""Tests for the picture-based J^2 = 1 certification."""

import pytest

from lcsgames.errors import PreconditionError
from lcsgames.games import game_product, magic_pentagram, magic_square
from lcsgames.impossibility import impossibility_check
from lcsgames.solutiongroups import solution_group
from lcsgames.words import word


def letters(text):
    return word(text).letters


class TestSquare:
    @pytest.mark.parametrize(
        "d,jTrivial,abelian,excluded",
        [
            (2, False, False, False),
            (3, True, True, True),
            (4, False, False, True),
            (5, True, True, True),
        ],
    )
    def test_flag_matrix(self, d, jTrivial, abelian, excluded):
        report = impossibility_check(magic_square(d))
        assert report.modulus == d
        assert report.conclusive
        assert report.jSquaredTrivial
        assert report.jTrivial == jTrivial
        assert report.abelian == abelian
        assert report.pseudotelepathyExcluded == excluded

    def test_uses_a_non_co_incident_pair(self):
        report = impossibility_check(magic_square(2))
        assert report.generatorPair == ("e7", "e3")

    def test_reports_carry_the_validated_claims(self):
        report = impossibility_check(magic_square(3))
        assert report.commutatorReport.valid
        assert report.mirrorReport.valid
        assert report.commutatorReport.claim == (letters("e7 e3 e7^-1 e3^-1"), 1)
        assert report.mirrorReport.claim == (letters("e3 e7 e3^-1 e7^-1"), 1)

    def test_pictures_revalidate_against_the_solution_group(self):
        from lcsgames.pictures import validate_picture

        report = impossibility_check(magic_square(2))
        pres = solution_group(magic_square(2)).presentation
        assert validate_picture(report.commutator, pres).valid
        assert validate_picture(report.mirror, pres).valid

    def test_explanations_differ_by_modulus(self):
        seen = {impossibility_check(magic_square(d)).explanation for d in (2, 3, 4)}
        assert len(seen) == 3


class TestPentagram:
    def test_mod_two_is_consistent(self):
        report = impossibility_check(magic_pentagram(2))
        assert report.generatorPair == ("e7", "e9")
        assert report.conclusive
        assert not report.pseudotelepathyExcluded

    def test_odd_modulus_is_excluded(self):
        report = impossibility_check(magic_pentagram(3))
        assert report.conclusive
        assert report.jTrivial
        assert report.abelian
        assert report.pseudotelepathyExcluded


class TestScope:
    def test_products_are_out_of_scope(self):
        game = game_product([magic_square(2), magic_square(2)])
        with pytest.raises(PreconditionError):
            impossibility_check(game)
