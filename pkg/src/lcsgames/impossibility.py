"""Diagram-certified obstructions to perfect quantum strategies.

For the magic square and magic pentagram over Z_d, a pair of validated
pictures proves both [x, z] = J and [z, x] = J for an identified
generator pair whose edges share no equation.  Since the two commutators
are mutually inverse, the pair forces J^2 = 1 in the solution group.
For odd d this collapses J to the identity, making the group abelian,
and no operator solution can send J to a primitive d-th root of unity;
for even d above 2 the required root does not square to one.  Only
d = 2 escapes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .games import LcsGame, magic_pentagram, magic_square
from .pictures.build import (
    commutator_picture_pentagram,
    commutator_picture_pentagram_mirror,
    commutator_picture_square,
    commutator_picture_square_mirror,
)
from .pictures.core import CombinatorialPicture, ValidityReport, validate_picture
from .solutiongroups import solution_group
from .words import Letter


@dataclass(frozen=True)
class ImpossibilityReport:
    """Outcome of the J^2 = 1 certification for one game.

    conclusive is set when both pictures validate with the expected
    commutator claims; the remaining flags record what the certified
    J^2 = 1 implies at this modulus.
    """

    modulus: int
    generatorPair: tuple[str, str]
    commutator: CombinatorialPicture
    mirror: CombinatorialPicture
    commutatorReport: ValidityReport
    mirrorReport: ValidityReport
    conclusive: bool
    jSquaredTrivial: bool
    jTrivial: bool
    abelian: bool
    pseudotelepathyExcluded: bool
    explanation: str


def _commutator_letters(x: str, z: str) -> tuple[Letter, ...]:
    return ((x, 1), (z, 1), (x, -1), (z, -1))


def impossibility_check(game: LcsGame) -> ImpossibilityReport:
    """Certify J^2 = 1 for a magic square or magic pentagram game.

    Builds the commutator picture for a non-co-incident generator pair
    and its mirror, validates both against the solution group, and draws
    the modulus-dependent conclusion.  A validation failure yields an
    inconclusive report rather than an error.
    """
    d = game.modulus
    if game == magic_square(d):
        pair = ("e7", "e3")
        first = commutator_picture_square(d)
        second = commutator_picture_square_mirror(d)
    elif game == magic_pentagram(d):
        pair = ("e7", "e9")
        first = commutator_picture_pentagram(d)
        second = commutator_picture_pentagram_mirror(d)
    else:
        raise PreconditionError(
            "impossibility_check needs a magic square or magic pentagram game"
        )

    pres = solution_group(game).presentation
    firstReport = validate_picture(first, pres)
    secondReport = validate_picture(second, pres)
    x, z = pair
    conclusive = (
        firstReport.valid
        and secondReport.valid
        and firstReport.claim == (_commutator_letters(x, z), 1)
        and secondReport.claim == (_commutator_letters(z, x), 1)
    )

    jSquared = conclusive
    jTrivial = conclusive and d % 2 == 1
    abelian = jTrivial
    excluded = conclusive and d != 2
    if not conclusive:
        explanation = (
            "picture validation failed, so no commutator identity is "
            "certified and nothing can be concluded"
        )
    elif d == 2:
        explanation = (
            "the pictures prove J^2 = 1, which at modulus 2 is consistent "
            "with J != 1, so perfect quantum strategies survive"
        )
    elif d % 2 == 1:
        explanation = (
            "the pictures prove J^2 = 1; together with J^"
            f"{d} = 1 this forces J = 1, so the solution group is abelian "
            "and no operator solution can represent J faithfully: the game "
            "has no perfect quantum strategy"
        )
    else:
        explanation = (
            "the pictures prove J^2 = 1, but an operator solution would "
            f"send J to a primitive {d}th root of unity whose square is "
            "not 1, so no perfect quantum strategy exists"
        )
    return ImpossibilityReport(
        modulus=d,
        generatorPair=pair,
        commutator=first,
        mirror=second,
        commutatorReport=firstReport,
        mirrorReport=secondReport,
        conclusive=conclusive,
        jSquaredTrivial=jSquared,
        jTrivial=jTrivial,
        abelian=abelian,
        pseudotelepathyExcluded=excluded,
        explanation=explanation,
    )
