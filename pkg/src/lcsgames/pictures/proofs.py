"""Rewriting proofs extracted from pictures.

A valid picture certifies that its boundary word equals a power of J in
the presented group.  This module makes that certificate explicit: it
converts a picture into a sequence of elementary rewriting steps that
builds the boundary word from the empty word, and it can replay such a
sequence independently of any picture.  Replaying the extracted steps
reproduces exactly the claim reported by validate_picture.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import LcsError, PreconditionError, ValidationError
from ..presentations import GroupPresentation
from ..words import Letter, invert_letters
from .core import (
    CombinatorialPicture,
    letters_to_text,
    relation_table,
    validate_picture,
)


@dataclass(frozen=True)
class ConjugateBy:
    """Conjugate the whole word by a generator.

    Side "left" sends w to g.w.g^-1, side "right" sends w to g^-1.w.g.
    """

    generator: str
    side: str


@dataclass(frozen=True)
class MultiplyByRelation:
    """Append a cyclic rotation of a relation word and add its J-power.

    The relation is named by its key in the relation table.  When inverted
    is set the letters are inverted before rotating.  jPower is the power
    of J the appended word equals in the group.
    """

    relation: str
    rotation: int
    inverted: bool
    jPower: int


@dataclass(frozen=True)
class FreeCancel:
    """Delete the mutually inverse letters at (position, position + 1)."""

    position: int


ProofStep = ConjugateBy | MultiplyByRelation | FreeCancel


@dataclass(frozen=True)
class ProofTrace:
    """Extracted proof: steps plus usage tallies and the proven claim.

    claim is (letters, jPower): replaying the steps from the empty word
    yields exactly these letters with this total J-power.
    """

    steps: tuple[ProofStep, ...]
    generatorConjugations: dict[str, int]
    relationMultiplications: dict[str, int]
    claim: tuple[tuple[Letter, ...], int]


def replay_steps(
    steps: Iterable[ProofStep], pres: GroupPresentation
) -> tuple[tuple[Letter, ...], int]:
    """Apply proof steps to the empty word, returning (word, jPower).

    Raises ValidationError when a step does not apply: an unknown
    generator or relation, a rotation out of range, a J-power that does
    not match the relation, or a cancellation at a position that does not
    hold an inverse pair.
    """
    d = pres.modulus
    table = {
        key: (letters, content) for key, letters, content in relation_table(pres)
    }
    word: list[Letter] = []
    j = 0
    for i, step in enumerate(steps):
        if isinstance(step, ConjugateBy):
            if step.generator not in pres.generators:
                raise ValidationError(
                    f"step {i}: unknown generator {step.generator}"
                )
            if step.side == "left":
                sign = 1
            elif step.side == "right":
                sign = -1
            else:
                raise ValidationError(
                    f"step {i}: side must be left or right, not {step.side}"
                )
            word.insert(0, (step.generator, sign))
            word.append((step.generator, -sign))
        elif isinstance(step, MultiplyByRelation):
            if step.relation not in table:
                raise ValidationError(f"step {i}: unknown relation {step.relation}")
            letters, content = table[step.relation]
            target = invert_letters(letters) if step.inverted else letters
            required = (-content if step.inverted else content) % d
            if step.jPower % d != required:
                raise ValidationError(
                    f"step {i}: J-power {step.jPower} does not match "
                    f"relation {step.relation}"
                )
            if not 0 <= step.rotation < len(target):
                raise ValidationError(
                    f"step {i}: rotation {step.rotation} out of range"
                )
            k = step.rotation
            word.extend(target[k:] + target[:k])
            j += step.jPower
        elif isinstance(step, FreeCancel):
            p = step.position
            if not 0 <= p <= len(word) - 2:
                raise ValidationError(
                    f"step {i}: cancel position {p} out of range"
                )
            a, b = word[p], word[p + 1]
            if a[0] != b[0] or a[1] != -b[1]:
                raise ValidationError(
                    f"step {i}: letters at {p} are not an inverse pair"
                )
            del word[p : p + 2]
        else:
            raise ValidationError(f"step {i}: unrecognised step {step!r}")
    return tuple(word), j % d


@dataclass
class _Entry:
    """One strand crossing the swallowed frontier.

    dartInside sits at a swallowed vertex, dartOutside is its twin.  The
    letter is the reading of dartInside; stub marks strands that end on
    the rim.
    """

    dartInside: str
    dartOutside: str
    letter: Letter
    stub: bool


def extract_proof(
    pic: CombinatorialPicture, pres: GroupPresentation
) -> ProofTrace:
    """Convert a valid picture into an explicit rewriting proof.

    The steps build the picture's reduced boundary word from the empty
    word, one connected component at a time.  Within a component the
    interior vertices are absorbed one relation multiplication each, with
    conjugations rotating finished letters out of the way and free
    cancellations erasing matched strand ends.  Each generator is
    conjugated at most twice per strand carrying it and each relation is
    multiplied exactly once per vertex spelling it.

    Raises PreconditionError when the picture is invalid and LcsError
    when the traversal cannot complete or the replayed steps fail to
    reproduce the validator's claim.
    """
    rep = validate_picture(pic, pres)
    if not rep.valid:
        raise PreconditionError(f"picture is not valid: {rep.errors[0]}")
    d = pres.modulus
    by_dart = {h.id: h for h in pic.halfEdges}
    by_vertex = {v.id: v for v in pic.vertices}
    rot = {vid: order for vid, order in pic.rotation}
    position = {
        h: (vid, i) for vid, order in pic.rotation for i, h in enumerate(order)
    }
    match_of = {m.vertex: m for m in rep.matches}
    table = {
        key: (letters, content) for key, letters, content in relation_table(pres)
    }

    def phi(hid: str) -> str:
        twin = by_dart[hid].twin
        vid, i = position[twin]
        order = rot[vid]
        return order[(i + 1) % len(order)]

    # Vertices of each component, keyed by the smallest member id.
    parent = {v.id: v.id for v in pic.vertices}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for h in pic.halfEdges:
        ra, rb = find(h.vertex), find(by_dart[h.twin].vertex)
        if ra != rb:
            parent[ra] = rb
    grouped: dict[str, list[str]] = {}
    for v in pic.vertices:
        grouped.setdefault(find(v.id), []).append(v.id)
    by_smallest = {min(vids): vids for vids in grouped.values()}

    steps: list[ProofStep] = []
    word: list[Letter] = []

    def vertex_letter(dart: str) -> Letter:
        h = by_dart[dart]
        return (h.label, 1 if h.orientation == "outgoing" else -1)

    for comp in reversed(rep.components):
        members = by_smallest[comp.smallestVertex]
        interior = sorted(
            v for v in members if by_vertex[v].kind == "interior"
        )
        if not interior:
            # A bare strand between two rim points cancels to nothing.
            continue
        before = list(word)

        swallowed: set[str] = set()
        frontier: list[_Entry] = []
        front_advanced = 0

        def make_entry(dart_inside: str) -> _Entry:
            dart_outside = by_dart[dart_inside].twin
            stub = by_vertex[by_dart[dart_outside].vertex].kind == "boundary"
            return _Entry(dart_inside, dart_outside, vertex_letter(dart_inside), stub)

        def multiply(vertex_id: str, start: int) -> list[_Entry]:
            m = match_of[vertex_id]
            _, content = table[m.relationKey]
            required = (-content if m.inverted else content) % d
            order = rot[vertex_id]
            length = len(order)
            steps.append(
                MultiplyByRelation(
                    m.relationKey, (m.rotation + start) % length, m.inverted, required
                )
            )
            reading = [order[(start + i) % length] for i in range(length)]
            word.extend(vertex_letter(h) for h in reading)
            swallowed.add(vertex_id)
            return [make_entry(h) for h in reading]

        def advance() -> None:
            nonlocal front_advanced
            entry = frontier[-1]
            g, sign = entry.letter
            steps.append(ConjugateBy(g, "left" if sign > 0 else "right"))
            word.insert(0, (g, sign))
            word.append((g, -sign))
            steps.append(FreeCancel(len(word) - 2))
            del word[len(word) - 2 :]
            frontier.pop()
            frontier.insert(0, entry)
            front_advanced += 1

        if comp.closed:
            frontier.extend(multiply(interior[0], 0))
        else:
            start = rot[comp.canonicalStart][0]
            last_stub = start
            cur = start
            for _ in range(len(pic.halfEdges) + 1):
                cur = phi(cur)
                if cur == start:
                    break
                if by_vertex[by_dart[cur].vertex].kind == "boundary":
                    last_stub = cur
            inner = by_dart[last_stub].twin
            v0 = by_dart[inner].vertex
            p = rot[v0].index(inner)
            frontier.extend(multiply(v0, p + 1))

        guard = 4 * (len(pic.halfEdges) + len(pic.vertices)) + 8
        iterations = 0
        while front_advanced < len(frontier):
            iterations += 1
            if iterations > guard:
                raise LcsError(
                    f"traversal failure in component of {comp.smallestVertex}: "
                    "no progress"
                )
            entry = frontier[-1]
            if entry.stub:
                advance()
                continue
            other = by_dart[entry.dartOutside].vertex
            if other not in swallowed:
                tail = multiply(other, rot[other].index(entry.dartOutside))
                steps.append(FreeCancel(len(word) - len(tail) - 1))
                del word[len(word) - len(tail) - 1 : len(word) - len(tail) + 1]
                frontier.pop()
                frontier.extend(tail[1:])
                continue
            twin_index = None
            for i, e in enumerate(frontier):
                if e.dartInside == entry.dartOutside:
                    twin_index = i
                    break
            if twin_index is None:
                raise LcsError(
                    f"traversal failure at {entry.dartInside}: "
                    "matching strand end is not on the frontier"
                )
            if twin_index == len(frontier) - 2 and twin_index >= front_advanced:
                steps.append(FreeCancel(len(word) - 2))
                del word[len(word) - 2 :]
                del frontier[-2:]
            elif twin_index == 0 and front_advanced > 0:
                advance()
                steps.append(FreeCancel(0))
                del word[0:2]
                del frontier[0:2]
                front_advanced -= 2
            elif twin_index >= front_advanced:
                advance()
            else:
                raise LcsError(
                    f"traversal failure at {entry.dartInside}: "
                    "strand pair out of order"
                )

        for e in frontier:
            if not e.stub:
                raise LcsError(
                    f"traversal failure: strand {e.dartInside} left unresolved"
                )

        count = len(frontier)
        if tuple(word[:count]) != comp.rawLetters:
            raise LcsError(
                "traversal failure: component reading "
                f"{letters_to_text(tuple(word[:count]))} does not match the "
                f"boundary {letters_to_text(comp.rawLetters)}"
            )
        reducing = True
        while reducing:
            reducing = False
            for p in range(count - 1):
                a, b = word[p], word[p + 1]
                if a[0] == b[0] and a[1] == -b[1]:
                    steps.append(FreeCancel(p))
                    del word[p : p + 2]
                    count -= 2
                    reducing = True
                    break
        if tuple(word[:count]) != comp.reducedLetters:
            raise LcsError("traversal failure: reduced boundary mismatch")
        if comp.closed and word != before:
            raise LcsError(
                f"traversal failure: component of {comp.smallestVertex} "
                "left residue"
            )

    outcome = replay_steps(tuple(steps), pres)
    if outcome != rep.claim:
        raise LcsError(
            "proof audit failure: replay yields "
            f"{letters_to_text(outcome[0])} with J-power {outcome[1]}, "
            f"claim is {letters_to_text(rep.claim[0])} with "
            f"J-power {rep.claim[1]}"
        )

    conjugations: dict[str, int] = {}
    multiplications: dict[str, int] = {}
    for step in steps:
        if isinstance(step, ConjugateBy):
            conjugations[step.generator] = conjugations.get(step.generator, 0) + 1
        elif isinstance(step, MultiplyByRelation):
            multiplications[step.relation] = (
                multiplications.get(step.relation, 0) + 1
            )
    usage = pic.generator_usage()
    for g, c in conjugations.items():
        if c > 2 * usage.get(g, 0):
            raise LcsError(
                f"proof audit failure: generator {g} conjugated {c} times "
                f"for {usage.get(g, 0)} strands"
            )
    expected: dict[str, int] = {}
    for m in rep.matches:
        expected[m.relationKey] = expected.get(m.relationKey, 0) + 1
    if multiplications != expected:
        raise LcsError("proof audit failure: relation usage mismatch")

    return ProofTrace(tuple(steps), conjugations, multiplications, rep.claim)
