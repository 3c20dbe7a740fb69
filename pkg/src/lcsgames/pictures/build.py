"""Programmatic assembly of planar diagrams.

PictureBuilder handles the bookkeeping that makes hand-built rotation
systems error prone: dart naming, twin pairing, crossing insertion, and
J-power assignment for crossing vertices.  On top of it this module
constructs the diagram families the rest of the library relies on:
commutator diagrams for the magic square and pentagram solution groups,
canonical-form witnesses for every game edge, and compiled diagrams for
arbitrary words over the qudit Pauli presentation.
"""

from __future__ import annotations

from ..errors import PreconditionError, ValidationError
from ..games import LcsGame, magic_pentagram, magic_square
from ..pauli import PauliElement, pauli_to_word
from ..presentations import GroupPresentation, pauli_presentation
from ..solutiongroups import SolutionGroupPresentation, solution_group
from ..words import FreeWord, Letter, invert_letters, word
from .core import (
    CombinatorialPicture,
    PictureHalfEdge,
    PictureVertex,
    find_relation_match,
    glue_pictures,
    letters_to_text,
    relation_table,
)


class PictureBuilder:
    """Mutable assembly buffer for a combinatorial picture.

    Vertices and strands are declared first, then explicit clockwise
    rotations for the interior vertices; boundary rotations are implied.
    Crossings can be inserted between rotation-adjacent strands afterwards,
    and their J-power labels filled in from a presentation.
    """

    def __init__(self) -> None:
        self._vertices: dict[str, int | None | str] = {}
        self._kinds: dict[str, str] = {}
        self._labels: dict[str, int | None] = {}
        self._darts: dict[str, dict[str, str]] = {}
        self._rotations: dict[str, list[str]] = {}
        self._pending: list[str] = []
        self._crossingCount = 0

    def interior(self, vertexId: str, jPower: int = 0) -> None:
        self._add_vertex(vertexId, "interior", jPower)

    def boundary(self, vertexId: str) -> None:
        self._add_vertex(vertexId, "boundary", None)

    def _add_vertex(self, vertexId: str, kind: str, jPower: int | None) -> None:
        if vertexId in self._kinds:
            raise ValidationError(f"vertex {vertexId} declared twice")
        self._kinds[vertexId] = kind
        self._labels[vertexId] = jPower

    def set_label(self, vertexId: str, jPower: int) -> None:
        self._labels[vertexId] = jPower

    def _fresh_dart(self, base: str) -> str:
        name = base
        k = 1
        while name in self._darts:
            k += 1
            name = f"{base}~{k}"
        return name

    def segment(self, label: str, tail: str, head: str) -> tuple[str, str]:
        """One directed edge from tail to head; returns its two dart ids."""
        for vertexId in (tail, head):
            if vertexId not in self._kinds:
                raise ValidationError(f"segment endpoint {vertexId} is not declared")
        tailDart = self._fresh_dart(f"{label}:{tail}>{head}")
        headDart = self._fresh_dart(f"{label}:{head}<{tail}")
        self._darts[tailDart] = {
            "twin": headDart, "vertex": tail, "label": label, "orientation": "outgoing",
        }
        self._darts[headDart] = {
            "twin": tailDart, "vertex": head, "label": label, "orientation": "ingoing",
        }
        return tailDart, headDart

    def strand(self, label: str, path: list[str]) -> None:
        """A directed curve through the listed vertices, one segment per hop."""
        for tail, head in zip(path, path[1:]):
            self.segment(label, tail, head)

    def rotation(self, vertexId: str, entries: list) -> None:
        """Clockwise dart order; entries are dart ids or (label, neighbor)."""
        used: list[str] = []
        for entry in entries:
            used.append(entry if isinstance(entry, str) else self._resolve(vertexId, entry, used))
        self._rotations[vertexId] = used

    def _resolve(self, vertexId: str, entry: tuple[str, str], used: list[str]) -> str:
        label, neighbor = entry
        for dartId, info in self._darts.items():
            if dartId in used or info["vertex"] != vertexId or info["label"] != label:
                continue
            if self._darts[info["twin"]]["vertex"] == neighbor:
                return dartId
        raise ValidationError(f"no unused {label} dart from {vertexId} toward {neighbor}")

    def vertex_word(self, vertexId: str) -> tuple[Letter, ...]:
        return tuple(
            (self._darts[d]["label"], 1 if self._darts[d]["orientation"] == "outgoing" else -1)
            for d in self._rotations[vertexId]
        )

    def crossing(self, vertexId: str) -> None:
        """An interior vertex whose J-power is assigned by finalize_labels."""
        self._add_vertex(vertexId, "interior", None)
        self._pending.append(vertexId)

    def _split_dart(self, dartId: str, crossingId: str) -> tuple[str, str, str, str]:
        # Replace one segment by two with the crossing in the middle,
        # preserving the strand's direction and the far end's rotation slot.
        info = self._darts[dartId]
        twinId = info["twin"]
        far = self._darts[twinId]["vertex"]
        near = info["vertex"]
        label = info["label"]
        if info["orientation"] == "outgoing":
            nearDart, xNear = self.segment(label, near, crossingId)
            xFar, farDart = self.segment(label, crossingId, far)
        else:
            xNear, nearDart = self.segment(label, crossingId, near)
            farDart, xFar = self.segment(label, far, crossingId)
        if far in self._rotations:
            slots = self._rotations[far]
            slots[slots.index(twinId)] = farDart
        del self._darts[dartId]
        del self._darts[twinId]
        return nearDart, xNear, xFar, farDart

    def insert_crossing(self, vertexId: str, slot: int) -> str:
        """Cross the strands at rotation slots (slot, slot+1) of a vertex."""
        rot = self._rotations[vertexId]
        if not 0 <= slot < len(rot) - 1:
            raise ValidationError(f"no adjacent slot pair at {slot} on {vertexId}")
        self._crossingCount += 1
        crossingId = self._fresh_vertex(f"c{self._crossingCount}")
        self.crossing(crossingId)
        aNear, aSide, aFar, _ = self._split_dart(rot[slot], crossingId)
        bNear, bSide, bFar, _ = self._split_dart(rot[slot + 1], crossingId)
        rot[slot], rot[slot + 1] = bNear, aNear
        self._rotations[crossingId] = [aSide, bSide, aFar, bFar]
        return crossingId

    def _fresh_vertex(self, base: str) -> str:
        name = base
        k = 1
        while name in self._kinds:
            k += 1
            name = f"{base}~{k}"
        return name

    def auto_fix_vertex(self, vertexId: str, target: tuple[Letter, ...]) -> None:
        """Insert crossings until the vertex word is a rotation of target.

        Picks the rotation needing the fewest adjacent swaps (ties to the
        smallest rotation) and realizes each swap as a crossing.
        """
        current = self.vertex_word(vertexId)
        if sorted(current) != sorted(target):
            raise ValidationError(
                f"vertex {vertexId} word {letters_to_text(current)} cannot spell "
                f"{letters_to_text(target)}"
            )
        best: tuple[int, int, list[int]] | None = None
        for k in range(max(len(target), 1)):
            rotated = target[k:] + target[:k]
            assigned: list[int] = []
            for letter in current:
                index = next(
                    i for i, t in enumerate(rotated) if t == letter and i not in assigned
                )
                assigned.append(index)
            inversions = sum(
                1
                for i in range(len(assigned))
                for j in range(i + 1, len(assigned))
                if assigned[i] > assigned[j]
            )
            if best is None or inversions < best[0]:
                best = (inversions, k, assigned)
        assert best is not None
        perm = best[2]
        while True:
            bad = next((i for i in range(len(perm) - 1) if perm[i] > perm[i + 1]), None)
            if bad is None:
                break
            self.insert_crossing(vertexId, bad)
            perm[bad], perm[bad + 1] = perm[bad + 1], perm[bad]

    def finalize_labels(self, pres: GroupPresentation) -> None:
        """Assign each pending crossing the J-power its word requires."""
        table = relation_table(pres)
        for vertexId in self._pending:
            spelled = self.vertex_word(vertexId)
            hit = find_relation_match(spelled, table, pres.modulus, jPower=None)
            if hit is None:
                raise ValidationError(
                    f"crossing {vertexId} word {letters_to_text(spelled)} spells no relation"
                )
            self._labels[vertexId] = hit[3]
        self._pending = []

    def build(self) -> CombinatorialPicture:
        vertices = []
        rotation = []
        for vertexId, kind in self._kinds.items():
            jPower = self._labels[vertexId]
            if kind == "interior" and jPower is None:
                raise ValidationError(f"vertex {vertexId} was never labeled")
            vertices.append(PictureVertex(vertexId, kind, jPower))
            incident = [d for d, info in self._darts.items() if info["vertex"] == vertexId]
            if kind == "boundary":
                if len(incident) != 1:
                    raise ValidationError(f"boundary vertex {vertexId} needs exactly one strand")
                rotation.append((vertexId, tuple(incident)))
            else:
                rotation.append((vertexId, tuple(self._rotations.get(vertexId, incident))))
        halfEdges = tuple(
            PictureHalfEdge(d, info["twin"], info["vertex"], info["label"], info["orientation"])
            for d, info in self._darts.items()
        )
        return CombinatorialPicture(tuple(vertices), halfEdges, tuple(rotation))


def _equation_letters(sg: SolutionGroupPresentation, vertex: str) -> tuple[Letter, ...]:
    for eq in sg.equationRelations:
        if eq.vertex == vertex:
            return eq.relation.letters
    raise ValidationError(f"no equation for vertex {vertex}")


def _equation_content(sg: SolutionGroupPresentation, vertex: str) -> int:
    for eq in sg.equationRelations:
        if eq.vertex == vertex:
            return sg.presentation.relation_content(eq.relation)
    raise ValidationError(f"no equation for vertex {vertex}")


def _equation_diagram(
    sg: SolutionGroupPresentation,
    interiors: list[tuple[str, str, bool]],
    boundaries: list[str],
    strands: list[tuple[str, list[str]]],
    rotations: dict[str, list[tuple[str, str]]],
) -> CombinatorialPicture:
    """Assemble a diagram whose interior vertices spell game equations.

    interiors lists (vertexId, gameVertex, inverted); each vertex word is
    coerced to (the inversion of) its equation by inserted crossings.
    """
    builder = PictureBuilder()
    d = sg.presentation.modulus
    for vertexId, gameVertex, inverted in interiors:
        content = _equation_content(sg, gameVertex)
        builder.interior(vertexId, (-content if inverted else content) % d)
    for vertexId in boundaries:
        builder.boundary(vertexId)
    for label, path in strands:
        builder.strand(label, path)
    for vertexId, entries in rotations.items():
        builder.rotation(vertexId, list(entries))
    for vertexId, gameVertex, inverted in interiors:
        target = _equation_letters(sg, gameVertex)
        builder.auto_fix_vertex(vertexId, invert_letters(target) if inverted else target)
    builder.finalize_labels(sg.presentation)
    return builder.build()


def commutator_picture_square(d: int = 2) -> CombinatorialPicture:
    """Derive x1 z1 x1^-1 z1^-1 = J inside the magic square solution group.

    Rows and columns of the square alternate around a hexagon, with the
    centre cell's strand as a chord; the four unmatched cell strands exit
    to the rim and spell the commutator of e7 (playing x1) and e3 (z1).
    """
    sg = solution_group(magic_square(d))
    return _equation_diagram(
        sg,
        interiors=[
            ("R1", "v1", False), ("R2", "v2", False), ("R3", "v3", False),
            ("C1", "v4", False), ("C2", "v5", False), ("C3", "v6", False),
        ],
        boundaries=["b1", "b2", "b3", "b4"],
        strands=[
            ("e8", ["R3", "C2"]), ("e2", ["R1", "C2"]), ("e1", ["R1", "C1"]),
            ("e4", ["R2", "C1"]), ("e6", ["R2", "C3"]), ("e9", ["R3", "C3"]),
            ("e5", ["R2", "C2"]),
            ("e7", ["R3", "b1"]), ("e3", ["R1", "b2"]),
            ("e7", ["b3", "C1"]), ("e3", ["b4", "C3"]),
        ],
        rotations={
            "R3": [("e7", "b1"), ("e8", "C2"), ("e9", "C3")],
            "R1": [("e2", "C2"), ("e3", "b2"), ("e1", "C1")],
            "R2": [("e6", "C3"), ("e5", "C2"), ("e4", "C1")],
            "C1": [("e4", "R2"), ("e1", "R1"), ("e7", "b3")],
            "C2": [("e2", "R1"), ("e5", "R2"), ("e8", "R3")],
            "C3": [("e6", "R2"), ("e3", "b4"), ("e9", "R3")],
        },
    )


def commutator_picture_square_mirror(d: int = 2) -> CombinatorialPicture:
    """Derive z1 x1 z1^-1 x1^-1 = J inside the magic square solution group.

    Same hexagon-and-chord scheme as commutator_picture_square, traversed
    with the opposite handedness so the rim spells the reversed commutator.
    """
    sg = solution_group(magic_square(d))
    return _equation_diagram(
        sg,
        interiors=[
            ("R1", "v1", False), ("R2", "v2", False), ("R3", "v3", False),
            ("C1", "v4", False), ("C2", "v5", False), ("C3", "v6", False),
        ],
        boundaries=["b1", "b2", "b3", "b4"],
        strands=[
            ("e2", ["R1", "C2"]), ("e8", ["R3", "C2"]), ("e9", ["R3", "C3"]),
            ("e6", ["R2", "C3"]), ("e4", ["R2", "C1"]), ("e1", ["R1", "C1"]),
            ("e5", ["R2", "C2"]),
            ("e3", ["R1", "b1"]), ("e7", ["R3", "b2"]),
            ("e3", ["b3", "C3"]), ("e7", ["b4", "C1"]),
        ],
        rotations={
            "R1": [("e3", "b1"), ("e2", "C2"), ("e1", "C1")],
            "C2": [("e8", "R3"), ("e5", "R2"), ("e2", "R1")],
            "R3": [("e8", "C2"), ("e7", "b2"), ("e9", "C3")],
            "C3": [("e3", "b3"), ("e6", "R2"), ("e9", "R3")],
            "R2": [("e4", "C1"), ("e5", "C2"), ("e6", "C3")],
            "C1": [("e4", "R2"), ("e7", "b4"), ("e1", "R1")],
        },
    )


def commutator_picture_pentagram(d: int = 2) -> CombinatorialPicture:
    """Derive x1 z1 x1^-1 z1^-1 = J inside the pentagram solution group.

    Four equation vertices sit on a quadrilateral around the fifth, whose
    strands radiate as spokes; e7 (playing x1) and e9 (z1) exit to the rim.
    """
    sg = solution_group(magic_pentagram(d))
    return _equation_diagram(
        sg,
        interiors=[
            ("v1", "v1", False), ("v2", "v2", False), ("v3", "v3", False),
            ("v4", "v4", False), ("v5", "v5", False),
        ],
        boundaries=["b1", "b2", "b3", "b4"],
        strands=[
            ("e2", ["v2", "v1"]), ("e3", ["v3", "v2"]), ("e4", ["v4", "v3"]),
            ("e8", ["v1", "v4"]),
            ("e1", ["v1", "v5"]), ("e6", ["v2", "v5"]),
            ("e10", ["v5", "v3"]), ("e5", ["v5", "v4"]),
            ("e7", ["v4", "b1"]), ("e9", ["v3", "b2"]),
            ("e7", ["b3", "v2"]), ("e9", ["b4", "v1"]),
        ],
        rotations={
            "v5": [("e1", "v1"), ("e5", "v4"), ("e10", "v3"), ("e6", "v2")],
            "v1": [("e9", "b4"), ("e8", "v4"), ("e1", "v5"), ("e2", "v2")],
            "v2": [("e2", "v1"), ("e6", "v5"), ("e3", "v3"), ("e7", "b3")],
            "v3": [("e3", "v2"), ("e10", "v5"), ("e4", "v4"), ("e9", "b2")],
            "v4": [("e4", "v3"), ("e5", "v5"), ("e8", "v1"), ("e7", "b1")],
        },
    )


def commutator_picture_pentagram_mirror(d: int = 2) -> CombinatorialPicture:
    """Derive z1 x1 z1^-1 x1^-1 = J inside the pentagram solution group."""
    sg = solution_group(magic_pentagram(d))
    return _equation_diagram(
        sg,
        interiors=[
            ("v1", "v1", False), ("v2", "v2", False), ("v3", "v3", False),
            ("v4", "v4", False), ("v5", "v5", False),
        ],
        boundaries=["b1", "b2", "b3", "b4"],
        strands=[
            ("e2", ["v2", "v1"]), ("e3", ["v3", "v2"]), ("e4", ["v4", "v3"]),
            ("e8", ["v1", "v4"]),
            ("e1", ["v1", "v5"]), ("e6", ["v2", "v5"]),
            ("e10", ["v5", "v3"]), ("e5", ["v5", "v4"]),
            ("e9", ["v3", "b1"]), ("e7", ["v4", "b2"]),
            ("e9", ["b3", "v1"]), ("e7", ["b4", "v2"]),
        ],
        rotations={
            "v5": [("e1", "v1"), ("e6", "v2"), ("e10", "v3"), ("e5", "v4")],
            "v3": [("e4", "v4"), ("e10", "v5"), ("e3", "v2"), ("e9", "b1")],
            "v4": [("e4", "v3"), ("e7", "b2"), ("e8", "v1"), ("e5", "v5")],
            "v1": [("e2", "v2"), ("e1", "v5"), ("e8", "v4"), ("e9", "b3")],
            "v2": [("e6", "v5"), ("e2", "v1"), ("e7", "b4"), ("e3", "v3")],
        },
    )


def _through_picture(label: str) -> CombinatorialPicture:
    builder = PictureBuilder()
    builder.boundary("b01")
    builder.boundary("b02")
    builder.strand(label, ["b02", "b01"])
    return builder.build()


def _radial_builder(letters: tuple[Letter, ...], jPower: int) -> PictureBuilder:
    # One interior vertex whose strands run straight to the rim, so the
    # boundary word equals the vertex word.
    builder = PictureBuilder()
    builder.interior("V", jPower)
    entries = []
    for index, (name, exp) in enumerate(letters):
        rim = f"b{index + 1:02d}"
        builder.boundary(rim)
        builder.strand(name, ["V", rim] if exp == 1 else [rim, "V"])
        entries.append((name, rim))
    builder.rotation("V", entries)
    return builder


def _witness_from_equation(
    sg: SolutionGroupPresentation,
    gameVertex: str,
    boundaryLetters: tuple[Letter, ...],
    inverted: bool,
) -> CombinatorialPicture:
    d = sg.presentation.modulus
    content = _equation_content(sg, gameVertex)
    builder = _radial_builder(boundaryLetters, (-content if inverted else content) % d)
    target = _equation_letters(sg, gameVertex)
    builder.auto_fix_vertex("V", invert_letters(target) if inverted else target)
    builder.finalize_labels(sg.presentation)
    return builder.build()


def square_canonical_witnesses(d: int = 2) -> dict[str, CombinatorialPicture]:
    """One picture per magic-square edge with boundary can(e) e^-1.

    The identity cells e1, e3, e7, e9 are through-strands; four cells need
    a single equation vertex; the centre cell e5 needs all of x1 z1 x2 z2
    and is drawn with three equation vertices and two crossings, the
    costliest canonical witness (its x2 strand crosses twice).
    """
    sg = solution_group(magic_square(d))
    out: dict[str, CombinatorialPicture] = {}
    for name in ("e1", "e3", "e7", "e9"):
        out[name] = _through_picture(name)
    out["e2"] = _witness_from_equation(
        sg, "v1", (("e3", -1), ("e1", -1), ("e2", -1)), inverted=True
    )
    out["e4"] = _witness_from_equation(
        sg, "v4", (("e7", -1), ("e1", -1), ("e4", -1)), inverted=False
    )
    out["e6"] = _witness_from_equation(
        sg, "v6", (("e3", -1), ("e9", -1), ("e6", -1)), inverted=False
    )
    out["e8"] = _witness_from_equation(
        sg, "v3", (("e7", -1), ("e9", -1), ("e8", -1)), inverted=True
    )
    out["e5"] = _square_centre_witness(sg)
    return out


def _square_centre_witness(sg: SolutionGroupPresentation) -> CombinatorialPicture:
    # Boundary e7 e3 e9 e1 e5^-1: the top row, bottom row and middle column
    # equations meet at the centre cell, with e9 threading two crossings.
    builder = PictureBuilder()
    d = sg.presentation.modulus
    builder.interior("V1", _equation_content(sg, "v1") % d)
    builder.interior("V3", _equation_content(sg, "v3") % d)
    builder.interior("V5", _equation_content(sg, "v5") % d)
    builder.crossing("X1")
    builder.crossing("X2")
    for rim in ("b01", "b02", "b03", "b04", "b05"):
        builder.boundary(rim)
    builder.strand("e7", ["V3", "X1", "b01"])
    builder.strand("e3", ["V1", "X2", "b02"])
    builder.strand("e9", ["V3", "X1", "X2", "b03"])
    builder.strand("e1", ["V1", "b04"])
    builder.strand("e5", ["b05", "V5"])
    builder.strand("e2", ["V1", "V5"])
    builder.strand("e8", ["V3", "V5"])
    builder.rotation("V3", [("e8", "V5"), ("e9", "X1"), ("e7", "X1")])
    builder.rotation("V1", [("e3", "X2"), ("e1", "b04"), ("e2", "V5")])
    builder.rotation("V5", [("e5", "b05"), ("e8", "V3"), ("e2", "V1")])
    builder.rotation("X1", [("e9", "X2"), ("e7", "V3"), ("e9", "V3"), ("e7", "b01")])
    builder.rotation("X2", [("e9", "b03"), ("e3", "V1"), ("e9", "X1"), ("e3", "b02")])
    builder.finalize_labels(sg.presentation)
    return builder.build()


def pentagram_canonical_witnesses(d: int = 2) -> dict[str, CombinatorialPicture]:
    """One picture per pentagram edge with boundary can(e) e^-1.

    Six edges are their own canonical forms (through-strands); each of the
    other four spells one equation around a single vertex, so no strand is
    used more than once.
    """
    sg = solution_group(magic_pentagram(d))
    out: dict[str, CombinatorialPicture] = {}
    for name in ("e2", "e3", "e4", "e7", "e8", "e9"):
        out[name] = _through_picture(name)
    out["e1"] = _witness_from_equation(
        sg, "v1", (("e9", 1), ("e8", -1), ("e2", 1), ("e1", -1)), inverted=True
    )
    out["e5"] = _witness_from_equation(
        sg, "v4", (("e7", 1), ("e8", -1), ("e4", 1), ("e5", -1)), inverted=False
    )
    out["e6"] = _witness_from_equation(
        sg, "v2", (("e3", 1), ("e2", -1), ("e7", 1), ("e6", -1)), inverted=True
    )
    out["e10"] = _witness_from_equation(
        sg, "v3", (("e3", 1), ("e4", -1), ("e9", 1), ("e10", -1)), inverted=False
    )
    return out


def _relabel_picture(
    pic: CombinatorialPicture, prefix: str
) -> CombinatorialPicture:
    # Prefix every id and label; an exact isomorphism onto prefixed names.
    vertices = tuple(
        PictureVertex(prefix + v.id, v.kind, v.jPower) for v in pic.vertices
    )
    halfEdges = tuple(
        PictureHalfEdge(prefix + h.id, prefix + h.twin, prefix + h.vertex, prefix + h.label, h.orientation)
        for h in pic.halfEdges
    )
    rotation = tuple(
        (prefix + vertexId, tuple(prefix + d for d in darts))
        for vertexId, darts in pic.rotation
    )
    return CombinatorialPicture(vertices, halfEdges, rotation)


def _factor_witnesses(game: LcsGame) -> dict[str, dict[str, CombinatorialPicture]]:
    prefixes: dict[str, list[str]] = {}
    for edge in game.edges:
        if edge.startswith("g") and "." in edge and not edge.startswith("e."):
            prefix = edge.split(".", 1)[0] + "."
            prefixes.setdefault(prefix, []).append(edge)
    out: dict[str, dict[str, CombinatorialPicture]] = {}
    for prefix, edges in prefixes.items():
        base = (
            square_canonical_witnesses(game.modulus)
            if len(edges) == 9
            else pentagram_canonical_witnesses(game.modulus)
        )
        out[prefix] = {
            prefix + name: _relabel_picture(pic, prefix) for name, pic in base.items()
        }
    return out


def _negative_stub(pic: CombinatorialPicture, label: str) -> str:
    for h in pic.halfEdges:
        if h.label == label and h.orientation == "outgoing":
            vertex = pic.vertex(h.vertex)
            if vertex.kind == "boundary":
                return vertex.id
    raise ValidationError(f"no rim strand leaving along {label}")


def _positive_stub(pic: CombinatorialPicture, label: str) -> str:
    for h in pic.halfEdges:
        if h.label == label and h.orientation == "ingoing":
            vertex = pic.vertex(h.vertex)
            if vertex.kind == "boundary":
                return vertex.id
    raise ValidationError(f"no rim strand arriving along {label}")


def product_canonical_witnesses(game: LcsGame) -> dict[str, CombinatorialPicture]:
    """Canonical-form witnesses for a product game's edges.

    Factor edges reuse the square or pentagram witnesses under the factor
    prefix.  Each pair edge gets its defining three-strand vertex with the
    two factor witnesses glued onto the x and y stubs, exposing the
    boundary can(x) can(y) e^-1.
    """
    factorWitnesses = _factor_witnesses(game)
    if not factorWitnesses:
        if len(game.edges) == 9:
            return square_canonical_witnesses(game.modulus)
        return pentagram_canonical_witnesses(game.modulus)
    sg = solution_group(game)
    out: dict[str, CombinatorialPicture] = {}
    for witnesses in factorWitnesses.values():
        out.update(witnesses)
    for edge in game.edges:
        if not edge.startswith("e."):
            continue
        left, right = edge[2:].split("|")
        gameVertex = f"v.{left}|{right}"
        core = _witness_from_equation(
            sg, gameVertex, ((left, 1), (right, 1), (edge, -1)), inverted=False
        )
        leftGlued = glue_pictures(
            core,
            out[left],
            ((_positive_stub(core, left), _negative_stub(out[left], left)),),
        )
        out[edge] = glue_pictures(
            leftGlued,
            out[right],
            ((_positive_stub(leftGlued, right), _negative_stub(out[right], right)),),
        )
    return out


def anticommutation_presentation() -> GroupPresentation:
    """Four generators with i central, ixyz = 1, y^2 = 1 and i^2 = J.

    The central element i lets x and z anticommute indirectly: from the
    relations, x z x z = J even though x and z never meet in a relation.
    """
    return GroupPresentation(
        generators=("i", "x", "y", "z"),
        relations=(
            word("i x y z"),
            word("y y"),
            FreeWord((("i", 1), ("i", 1)), -1),
            word("i x i^-1 x^-1"),
            word("i y i^-1 y^-1"),
            word("i z i^-1 z^-1"),
        ),
        modulus=2,
    )


def anticommutation_picture() -> CombinatorialPicture:
    """A picture over anticommutation_presentation proving x z x z = J.

    Two ixyz vertices feed a shared y^2 sink and a shared i^2 sink; one i
    strand crosses a z strand on its way down and an x strand as it leaves
    its vertex, and the rim reads x z x z with total J-power 1.
    """
    pres = anticommutation_presentation()
    builder = PictureBuilder()
    builder.interior("A1", 0)
    builder.interior("A2", 0)
    builder.interior("B", 0)
    builder.interior("C", 1)
    builder.crossing("X1")
    for rim in ("b1", "b2", "b3", "b4"):
        builder.boundary(rim)
    builder.strand("x", ["A1", "b1"])
    builder.strand("x", ["A2", "b3"])
    builder.strand("z", ["A1", "X1", "b4"])
    builder.strand("z", ["A2", "b2"])
    builder.strand("y", ["A1", "B"])
    builder.strand("y", ["A2", "B"])
    builder.strand("i", ["A1", "C"])
    builder.strand("i", ["A2", "X1", "C"])
    builder.rotation("A1", [("x", "b1"), ("y", "B"), ("z", "X1"), ("i", "C")])
    builder.rotation("A2", [("y", "B"), ("z", "b2"), ("x", "b3"), ("i", "X1")])
    builder.rotation("B", [("y", "A2"), ("y", "A1")])
    builder.rotation("C", [("i", "A1"), ("i", "X1")])
    builder.rotation("X1", [("i", "C"), ("z", "A1"), ("i", "A2"), ("z", "b4")])
    builder.insert_crossing("A2", 2)
    builder.finalize_labels(pres)
    return builder.build()


def xz_cycle_picture() -> tuple[CombinatorialPicture, GroupPresentation]:
    """The d=3 single-qudit picture for (zx) z (xz) x, which equals J^0."""
    pres = pauli_presentation(1, 3)
    return build_word_picture(word("z x z x z x").letters, pres), pres


class _Wire:
    __slots__ = ("label", "sign", "anchor", "slot")

    def __init__(self, label: str, sign: int, anchor: str, slot: int | None) -> None:
        self.label = label
        self.sign = sign
        self.anchor = anchor
        self.slot = slot


def _commuting_pairs(pres: GroupPresentation) -> set[frozenset[str]]:
    pairs: set[frozenset[str]] = set()
    for relation in pres.relations:
        letters = relation.letters
        if len(letters) != 4:
            continue
        (a, p), (b, q), (c, r), (e, s) = letters
        if a == c and b == e and (p, q, r, s) == (1, 1, -1, -1) and a != b:
            pairs.add(frozenset((a, b)))
    return pairs


def build_word_picture(
    letters: tuple[Letter, ...], pres: GroupPresentation
) -> CombinatorialPicture:
    """Compile a word into a picture whose boundary spells it.

    The letters hang as wires from the rim.  Adjacent wires with commuting
    labels are sorted into generator order through crossings, opposite
    pairs cancel through u-turns, and leftover runs of d equal letters end
    in a power vertex.  The word must reduce to a power of J under those
    moves.
    """
    letters = tuple(letters)
    names = set(pres.generators)
    for name, exp in letters:
        if name not in names or exp not in (1, -1):
            raise PreconditionError(f"letter {name}^{exp} is not over the presentation")
    if not letters:
        return CombinatorialPicture((), (), ())

    d = pres.modulus
    commuting = _commuting_pairs(pres)
    priority = {name: index for index, name in enumerate(pres.generators)}
    builder = PictureBuilder()
    wires: list[_Wire] = []
    for index, (name, exp) in enumerate(letters):
        rim = f"b{index + 1:03d}"
        builder.boundary(rim)
        wires.append(_Wire(name, exp, rim, None))

    starCount = 0
    rotations: dict[str, list[str | None]] = {}

    def connect(wire: _Wire, vertexId: str) -> str:
        if wire.sign == 1:
            tailDart, headDart = builder.segment(wire.label, vertexId, wire.anchor)
            anchorDart, vertexDart = headDart, tailDart
        else:
            tailDart, headDart = builder.segment(wire.label, wire.anchor, vertexId)
            anchorDart, vertexDart = tailDart, headDart
        if wire.slot is not None:
            rotations[wire.anchor][wire.slot] = anchorDart
        return vertexDart

    def cross(index: int) -> None:
        left, right = wires[index], wires[index + 1]
        if frozenset((left.label, right.label)) not in commuting:
            raise PreconditionError(
                f"generators {left.label} and {right.label} have no commutation relation"
            )
        crossingId = builder._fresh_vertex(f"c{index + 1}")
        builder.crossing(crossingId)
        upperLeft = connect(left, crossingId)
        upperRight = connect(right, crossingId)
        rotations[crossingId] = [upperRight, None, None, upperLeft]
        left.anchor, left.slot = crossingId, 1
        right.anchor, right.slot = crossingId, 2
        wires[index], wires[index + 1] = right, left

    def cancel(index: int) -> None:
        left, right = wires[index], wires[index + 1]
        negative, positive = (left, right) if left.sign == -1 else (right, left)
        tailDart, headDart = builder.segment(left.label, negative.anchor, positive.anchor)
        if negative.slot is not None:
            rotations[negative.anchor][negative.slot] = tailDart
        if positive.slot is not None:
            rotations[positive.anchor][positive.slot] = headDart
        del wires[index : index + 2]

    def star(index: int) -> None:
        nonlocal starCount
        starCount += 1
        starId = builder._fresh_vertex(f"s{starCount}")
        builder.interior(starId, 0)
        rotations[starId] = [connect(w, starId) for w in wires[index : index + d]]
        del wires[index : index + d]

    changed = True
    while changed:
        changed = False
        for index in range(len(wires) - 1):
            if priority[wires[index].label] > priority[wires[index + 1].label]:
                cross(index)
                changed = True

    while wires:
        label = wires[0].label
        end = next(
            (i for i, w in enumerate(wires) if w.label != label), len(wires)
        )
        while True:
            pair = next(
                (i for i in range(end - 1) if wires[i].sign != wires[i + 1].sign), None
            )
            if pair is None:
                break
            cancel(pair)
            end -= 2
        if end % d != 0:
            raise PreconditionError(
                f"letter {label} leaves a power not divisible by {d}"
            )
        while end:
            star(0)
            end -= d

    for vertexId, darts in rotations.items():
        if any(dart is None for dart in darts):
            raise ValidationError(f"dangling strand at {vertexId}")
        builder.rotation(vertexId, list(darts))
    builder.finalize_labels(pres)
    return builder.build()


def build_triangle_picture(
    x: PauliElement, y: PauliElement, n: int, d: int
) -> CombinatorialPicture:
    """Picture with boundary can(x) can(yx)^-1 can(y) over the Pauli group.

    The three canonical words concatenate to a word that reduces to a power
    of J, so the wire compiler applies; the resulting picture certifies the
    phase relation between x, y and yx.
    """
    from ..pauli import pauli_mul

    if (x.n, x.d) != (n, d) or (y.n, y.d) != (n, d):
        raise PreconditionError("operands must live in the stated Pauli group")
    pres = pauli_presentation(n, d)
    yx = pauli_mul(y, x)
    letters = (
        pauli_to_word(x).letters
        + invert_letters(pauli_to_word(yx).letters)
        + pauli_to_word(y).letters
    )
    return build_word_picture(letters, pres)
