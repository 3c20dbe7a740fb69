"""Complexity parameters of a game's picture witnesses.

The stability analysis of a game is quantified by four integers: the
largest equation length l0, the largest witness usage m0 over the
canonical edge witnesses, the largest usage m over triangle pictures,
and their maximum delta.  Usage of a picture is the largest number of
strands sharing one generator or vertices sharing one relation.

Canonical witnesses are checked before they are counted: the witness
for an edge must be a valid picture whose rim mentions the edge
inversely exactly once, and for the square, the pentagram and their
products the remaining word must evaluate to the edge's Pauli
expression under the standard identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import IncompleteWitnessError, PreconditionError
from ..games import LcsGame
from ..pauli import (
    PauliElement,
    canonical_form,
    identity,
    pauli_inverse,
    pauli_mul,
    pauli_to_word,
)
from ..presentations import GroupPresentation, pauli_presentation
from ..solutiongroups import (
    pentagram_edge_expressions,
    solution_group,
    square_edge_expressions,
)
from ..words import Letter, invert_letters, reduce_letters
from .core import (
    CombinatorialPicture,
    ValidityReport,
    letters_to_text,
    validate_picture,
)


@dataclass(frozen=True)
class ComplexityParameters:
    """Witness complexity of a game: l0, m0, m and their maximum delta."""

    l0: int
    m0: int
    m: int
    delta: int


def _usage(pic: CombinatorialPicture, rep: ValidityReport) -> int:
    best = 0
    for count in pic.generator_usage().values():
        best = max(best, count)
    perRelation: dict[str, int] = {}
    for match in rep.matches:
        perRelation[match.relationKey] = perRelation.get(match.relationKey, 0) + 1
    for count in perRelation.values():
        best = max(best, count)
    return best


def picture_usage(pic: CombinatorialPicture, pres: GroupPresentation) -> int:
    """Largest strand count per generator or vertex count per relation.

    The picture is validated first; an invalid picture raises
    PreconditionError.
    """
    rep = validate_picture(pic, pres)
    if not rep.valid:
        raise PreconditionError(f"picture is not valid: {rep.errors[0]}")
    return _usage(pic, rep)


def _shift(p: PauliElement, offset: int, total: int) -> PauliElement:
    """Embed an element on qubits [offset, offset + p.n) of a larger register."""
    before = (0,) * offset
    after = (0,) * (total - offset - p.n)
    return PauliElement(
        total, p.d, p.phase, before + p.xExp + after, before + p.zExp + after
    )


_SQUARE_EDGES = tuple(f"e{i}" for i in range(1, 10))
_PENTAGRAM_EDGES = tuple(f"e{i}" for i in range(1, 11))


def _factor_layout(game: LcsGame) -> list[tuple[str, str, int]] | None:
    """Product structure as (prefix, kind, qubits) per factor, or None.

    Recognises the magic square, the magic pentagram, and products of
    those assembled with factor prefixes "g1.", "g2.", ...
    """
    edges = set(game.edges)
    if edges == set(_SQUARE_EDGES):
        return [("", "square", 2)]
    if edges == set(_PENTAGRAM_EDGES):
        return [("", "pentagram", 3)]
    byPrefix: dict[str, set[str]] = {}
    for e in game.edges:
        if e.startswith("e.") and "|" in e:
            continue
        if "." not in e:
            return None
        prefix, suffix = e.split(".", 1)
        byPrefix.setdefault(prefix + ".", set()).add(suffix)
    if not byPrefix:
        return None
    layout: list[tuple[str, str, int]] = []
    for prefix in sorted(byPrefix, key=lambda p: (len(p), p)):
        suffixes = byPrefix[prefix]
        if suffixes == set(_SQUARE_EDGES):
            layout.append((prefix, "square", 2))
        elif suffixes == set(_PENTAGRAM_EDGES):
            layout.append((prefix, "pentagram", 3))
        else:
            return None
    return layout


def _qubit_count(game: LcsGame) -> int | None:
    layout = _factor_layout(game)
    if layout is None:
        return None
    return sum(qubits for _, _, qubits in layout)


def _edge_elements(game: LcsGame) -> dict[str, PauliElement] | None:
    """Each edge's Pauli element under the standard identification.

    The identification is a theorem only over Z_2, so None is returned
    for any other modulus and the expression check is skipped.
    """
    layout = _factor_layout(game)
    if layout is None or game.modulus != 2:
        return None
    d = game.modulus
    total = sum(qubits for _, _, qubits in layout)
    elements: dict[str, PauliElement] = {}
    offset = 0
    for prefix, kind, qubits in layout:
        expressions = (
            square_edge_expressions()
            if kind == "square"
            else pentagram_edge_expressions()
        )
        for suffix, expr in expressions.items():
            local = canonical_form(expr, qubits, d)
            elements[prefix + suffix] = _shift(local, offset, total)
        offset += qubits
    for e in game.edges:
        if e in elements:
            continue
        left, right = e[2:].split("|", 1)
        elements[e] = pauli_mul(elements[left], elements[right])
    return elements


def _analytic_m(game: LcsGame) -> int | None:
    layout = _factor_layout(game)
    if layout is None:
        return None
    d = game.modulus
    if len(layout) == 1:
        kind = layout[0][1]
        return 108 * d * d if kind == "square" else 162 * d * d
    total = sum(qubits for _, _, qubits in layout)
    return 72 * d * d * total


def _witness_word(
    edge: str, rep: ValidityReport
) -> tuple[Letter, ...]:
    """Rotate the raw boundary so it ends with the edge inverse."""
    raw = rep.boundaryRaw
    hits = [i for i, (label, sign) in enumerate(raw) if label == edge and sign == -1]
    if len(hits) != 1:
        raise PreconditionError(
            f"witness for {edge} has boundary {letters_to_text(raw)}, "
            f"which does not isolate {edge} inversely once"
        )
    i = hits[0]
    return raw[i + 1 :] + raw[:i]


def _check_expression(
    edge: str,
    word: tuple[Letter, ...],
    jPower: int,
    elements: Mapping[str, PauliElement],
    n: int,
    d: int,
) -> None:
    produced = identity(n, d)
    for label, sign in word:
        element = elements[label]
        produced = pauli_mul(
            produced, element if sign > 0 else pauli_inverse(element)
        )
    target = elements[edge]
    wanted = PauliElement(n, d, (target.phase + jPower) % d, target.xExp, target.zExp)
    if produced != wanted:
        raise PreconditionError(
            f"witness for {edge} proves {letters_to_text(word)} with "
            f"J-power {jPower}, which is not the expression for {edge}"
        )


def _triangle_claim(
    x: PauliElement, y: PauliElement
) -> tuple[tuple[Letter, ...], int]:
    yx = pauli_mul(y, x)
    letters = (
        pauli_to_word(x).letters
        + invert_letters(pauli_to_word(yx).letters)
        + pauli_to_word(y).letters
    )
    jPower = (yx.phase - x.phase - y.phase) % x.d
    return reduce_letters(letters), jPower


def _cyclic_equal(a: tuple[Letter, ...], b: tuple[Letter, ...]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a == b[k:] + b[:k] for k in range(len(b)))


def complexity_parameters(
    game: LcsGame,
    witnessCanonical: Mapping[str, CombinatorialPicture],
    witnessTriangles: Mapping[
        tuple[PauliElement, PauliElement], CombinatorialPicture
    ]
    | None = None,
) -> ComplexityParameters:
    """Measure a game's witness complexity.

    witnessCanonical maps every edge to a picture proving the edge equals
    its canonical expression in the solution group.  witnessTriangles
    optionally samples pictures for products of Pauli elements; when it is
    omitted, m falls back to the closed-form bound available for the
    square, the pentagram and their products.  Bad or missing witnesses
    raise IncompleteWitnessError or PreconditionError naming the witness.
    """
    pres = solution_group(game).presentation
    d = game.modulus
    elements = _edge_elements(game)
    qubits = _qubit_count(game)

    missing = [e for e in game.edges if e not in witnessCanonical]
    if missing:
        raise IncompleteWitnessError(f"no witness for edge {missing[0]}")

    m0 = 0
    for e in game.edges:
        pic = witnessCanonical[e]
        rep = validate_picture(pic, pres)
        if not rep.valid:
            raise PreconditionError(
                f"witness for {e} is not a valid picture: {rep.errors[0]}"
            )
        word = _witness_word(e, rep)
        if elements is not None and qubits is not None:
            _check_expression(e, word, rep.jPowerTotal, elements, qubits, d)
        m0 = max(m0, _usage(pic, rep))

    l0 = max(
        sum(abs(game.coefficient(v, e)) for e in game.incident_edges(v))
        for v in game.vertices
    )

    if witnessTriangles is None:
        analytic = _analytic_m(game)
        if analytic is None:
            raise PreconditionError(
                "triangle witnesses are required for this game"
            )
        m = analytic
    else:
        if not witnessTriangles:
            raise PreconditionError("empty triangle witness sample")
        if qubits is None:
            raise PreconditionError(
                "triangle witnesses need a recognised qubit identification"
            )
        pauliPres = pauli_presentation(qubits, d)
        m = 0
        for (x, y), pic in witnessTriangles.items():
            if (x.n, x.d) != (qubits, d) or (y.n, y.d) != (qubits, d):
                raise PreconditionError(
                    f"triangle witness for ({x}, {y}) has the wrong dimensions"
                )
            rep = validate_picture(pic, pauliPres)
            if not rep.valid:
                raise PreconditionError(
                    f"triangle witness for ({x}, {y}) is not a valid picture: "
                    f"{rep.errors[0]}"
                )
            letters, jPower = _triangle_claim(x, y)
            if rep.jPowerTotal != jPower or not _cyclic_equal(
                rep.boundaryReduced, letters
            ):
                raise PreconditionError(
                    f"triangle witness for ({x}, {y}) proves the wrong boundary"
                )
            m = max(m, _usage(pic, rep))

    delta = max(l0, m0, m)
    return ComplexityParameters(l0, m0, m, delta)
