"""Combinatorial pictures: data model, validation, and gluing.

A picture is stored as a combinatorial map: half-edges (darts) paired by a
twin involution, a clockwise rotation order at every vertex, and directed
edge labels.  Faces are the orbits of "twin then next-clockwise", so
planarity is exactly the Euler relation V - E + F = 2 on each connected
component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValidationError
from ..presentations import GroupPresentation
from ..words import Letter, invert_letters, reduce_letters

ORIENTATIONS = ("outgoing", "ingoing")


def letters_to_text(letters: tuple[Letter, ...]) -> str:
    if not letters:
        return "1"
    return " ".join(name if exp == 1 else f"{name}^-1" for name, exp in letters)


@dataclass(frozen=True)
class PictureVertex:
    """A picture vertex: interior vertices carry a J-power label."""

    id: str
    kind: str
    jPower: int | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("vertex id must be nonempty")
        if self.kind not in ("interior", "boundary"):
            raise ValidationError(f"vertex {self.id}: unknown kind {self.kind!r}")
        if self.kind == "interior" and not isinstance(self.jPower, int):
            raise ValidationError(f"interior vertex {self.id} needs an integer jPower")
        if self.kind == "boundary" and self.jPower is not None:
            raise ValidationError(f"boundary vertex {self.id} must not carry a jPower")


@dataclass(frozen=True)
class PictureHalfEdge:
    """One directed side of an edge; twin pairs carry the same label."""

    id: str
    twin: str
    vertex: str
    label: str
    orientation: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("half-edge id must be nonempty")
        if self.twin == self.id:
            raise ValidationError(f"half-edge {self.id} cannot twin itself")
        if self.orientation not in ORIENTATIONS:
            raise ValidationError(
                f"half-edge {self.id}: orientation must be one of {ORIENTATIONS}"
            )
        if not self.label:
            raise ValidationError(f"half-edge {self.id}: empty label")


@dataclass(frozen=True)
class CombinatorialPicture:
    """A picture as a combinatorial map with clockwise rotations."""

    vertices: tuple[PictureVertex, ...]
    halfEdges: tuple[PictureHalfEdge, ...]
    rotation: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        vertex_ids = [v.id for v in self.vertices]
        if len(set(vertex_ids)) != len(vertex_ids):
            raise ValidationError("duplicate vertex ids")
        by_vertex = {v.id: v for v in self.vertices}

        dart_ids = [h.id for h in self.halfEdges]
        if len(set(dart_ids)) != len(dart_ids):
            raise ValidationError("duplicate half-edge ids")
        by_dart = {h.id: h for h in self.halfEdges}

        for h in self.halfEdges:
            if h.vertex not in by_vertex:
                raise ValidationError(f"half-edge {h.id} at unknown vertex {h.vertex}")
            other = by_dart.get(h.twin)
            if other is None:
                raise ValidationError(f"half-edge {h.id} has unknown twin {h.twin}")
            if other.twin != h.id:
                raise ValidationError(f"twin of {h.id} is not an involution")
            if other.label != h.label:
                raise ValidationError(f"half-edges {h.id}/{other.id} disagree on label")
            if other.orientation == h.orientation:
                raise ValidationError(
                    f"half-edges {h.id}/{other.id} must have opposite orientations"
                )

        darts_at: dict[str, list[str]] = {v.id: [] for v in self.vertices}
        for h in self.halfEdges:
            darts_at[h.vertex].append(h.id)

        listed = [vid for vid, _ in self.rotation]
        if sorted(listed) != sorted(vertex_ids):
            raise ValidationError("rotation must list every vertex exactly once")
        for vid, order in self.rotation:
            if sorted(order) != sorted(darts_at[vid]):
                raise ValidationError(
                    f"rotation at {vid} must be a permutation of its half-edges"
                )

        for v in self.vertices:
            if v.kind == "boundary" and len(darts_at[v.id]) != 1:
                raise ValidationError(
                    f"boundary vertex {v.id} must have exactly one half-edge"
                )

    def vertex(self, vid: str) -> PictureVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def half_edge(self, hid: str) -> PictureHalfEdge:
        for h in self.halfEdges:
            if h.id == hid:
                return h
        raise KeyError(hid)

    def rotation_of(self, vid: str) -> tuple[str, ...]:
        for key, order in self.rotation:
            if key == vid:
                return order
        raise KeyError(vid)

    @property
    def edge_count(self) -> int:
        return len(self.halfEdges) // 2

    def generator_usage(self) -> dict[str, int]:
        """Number of edges carrying each label."""
        counts: dict[str, int] = {}
        for h in self.halfEdges:
            counts[h.label] = counts.get(h.label, 0) + 1
        return {label: n // 2 for label, n in counts.items()}


@dataclass(frozen=True)
class VertexMatch:
    """Records which relation a vertex spells, and in which rotation."""

    vertex: str
    relationKey: str
    rotation: int
    inverted: bool
    word: tuple[Letter, ...]


@dataclass(frozen=True)
class BoundaryComponent:
    """Boundary data of one connected component of a picture."""

    canonicalStart: str | None
    rawLetters: tuple[Letter, ...]
    reducedLetters: tuple[Letter, ...]
    jPower: int
    closed: bool
    smallestVertex: str


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of validating a picture against a presentation."""

    valid: bool
    errors: tuple[str, ...]
    matches: tuple[VertexMatch, ...]
    boundaryRaw: tuple[Letter, ...]
    boundaryReduced: tuple[Letter, ...]
    jPowerTotal: int
    faceCount: int
    componentCount: int
    components: tuple[BoundaryComponent, ...] = field(default=())

    @property
    def claim(self) -> tuple[tuple[Letter, ...], int]:
        """The derived identity: boundary word = J^jPowerTotal."""
        return (self.boundaryReduced, self.jPowerTotal)


def relation_table(pres: GroupPresentation) -> tuple[tuple[str, tuple[Letter, ...], int], ...]:
    """Matchable relations: the declared ones, then the implied s^d powers.

    Each entry is (key, letters, content) where the letters equal J^content
    in the group.  Relations mentioning only J have no letters to match and
    are omitted.
    """
    table: list[tuple[str, tuple[Letter, ...], int]] = []
    for index, relation in enumerate(pres.relations):
        if relation.letters:
            content = (-relation.jPower) % pres.modulus
            table.append((f"R{index + 1}", relation.letters, content))
    for name in pres.generators:
        table.append((f"{name}^d", ((name, 1),) * pres.modulus, 0))
    return tuple(table)


def find_relation_match(
    word: tuple[Letter, ...],
    table: tuple[tuple[str, tuple[Letter, ...], int], ...],
    modulus: int,
    jPower: int | None = None,
) -> tuple[str, int, bool, int] | None:
    """First relation the word spells up to cyclic rotation, or None.

    Returns (key, rotation, inverted, requiredJPower).  A straight reading
    requires the vertex label to be the relation content, an inverted one
    its negation; pass jPower=None to search irrespective of the label.
    """
    length = len(word)
    for key, letters, content in table:
        if len(letters) != length:
            continue
        for inverted, target, required in (
            (False, letters, content % modulus),
            (True, invert_letters(letters), (-content) % modulus),
        ):
            if jPower is not None and jPower % modulus != required:
                continue
            for k in range(length):
                if word == target[k:] + target[:k]:
                    return (key, k, inverted, required)
    return None


def _vertex_word(
    order: tuple[str, ...], by_dart: dict[str, PictureHalfEdge]
) -> tuple[Letter, ...]:
    """Read a vertex clockwise: outgoing darts positive, ingoing negative."""
    return tuple(
        (by_dart[h].label, 1 if by_dart[h].orientation == "outgoing" else -1)
        for h in order
    )


def validate_picture(pic: CombinatorialPicture, pres: GroupPresentation) -> ValidityReport:
    """Check a picture against a presentation.

    A picture is valid when every interior vertex spells a relation (up to
    cyclic rotation or inversion, with the matching J-power label), every
    component is planar by Euler count, and each component's rim strands
    lie on a single face.  The report always carries the boundary word and
    the total J-power, even when invalid.
    """
    errors: list[str] = []
    d = pres.modulus
    by_dart = {h.id: h for h in pic.halfEdges}
    by_vertex = {v.id: v for v in pic.vertices}
    rot = {vid: order for vid, order in pic.rotation}
    position = {h: (vid, i) for vid, order in pic.rotation for i, h in enumerate(order)}

    declared = set(pres.generators)
    for h in pic.halfEdges:
        if h.label not in declared:
            errors.append(f"half-edge {h.id}: label {h.label} is not a generator")

    def sigma(hid: str) -> str:
        vid, i = position[hid]
        order = rot[vid]
        return order[(i + 1) % len(order)]

    def phi(hid: str) -> str:
        return sigma(by_dart[hid].twin)

    # Connected components over vertices.
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

    component_of = {v.id: find(v.id) for v in pic.vertices}

    # Faces: orbits of phi.
    orbit_of: dict[str, int] = {}
    orbit_darts: list[list[str]] = []
    for h in pic.halfEdges:
        if h.id in orbit_of:
            continue
        index = len(orbit_darts)
        orbit: list[str] = []
        cur = h.id
        while cur not in orbit_of:
            orbit_of[cur] = index
            orbit.append(cur)
            cur = phi(cur)
        orbit_darts.append(orbit)

    # Euler count per component with at least one edge.
    comp_vertices: dict[str, list[str]] = {}
    for vid, root in component_of.items():
        comp_vertices.setdefault(root, []).append(vid)
    comp_darts: dict[str, list[str]] = {root: [] for root in comp_vertices}
    for h in pic.halfEdges:
        comp_darts[component_of[h.vertex]].append(h.id)
    comp_faces: dict[str, set[int]] = {root: set() for root in comp_vertices}
    for hid, orbit in orbit_of.items():
        comp_faces[component_of[by_dart[hid].vertex]].add(orbit)

    for root, vids in sorted(comp_vertices.items(), key=lambda kv: min(kv[1])):
        n_edges = len(comp_darts[root]) // 2
        if n_edges == 0:
            continue
        n_faces = len(comp_faces[root])
        if len(vids) - n_edges + n_faces != 2:
            errors.append(
                f"embedding error: component of {min(vids)} has Euler count "
                f"{len(vids)} - {n_edges} + {n_faces} != 2"
            )

    # Rim strands of each component must share one face.
    boundary_darts: dict[str, list[str]] = {root: [] for root in comp_vertices}
    for v in pic.vertices:
        if v.kind == "boundary":
            boundary_darts[component_of[v.id]].append(rot[v.id][0])
    for root, stubs in boundary_darts.items():
        orbits = {orbit_of[h] for h in stubs}
        if len(orbits) > 1:
            errors.append(
                f"embedding error: rim strands of component of "
                f"{min(comp_vertices[root])} lie on {len(orbits)} distinct faces"
            )

    # Per-component boundary words, read clockwise from the canonical stub.
    components: list[BoundaryComponent] = []
    for root, vids in comp_vertices.items():
        smallest = min(vids)
        j_sum = sum(
            by_vertex[vid].jPower or 0
            for vid in vids
            if by_vertex[vid].kind == "interior"
        ) % d
        stub_vertices = sorted(
            vid for vid in vids if by_vertex[vid].kind == "boundary"
        )
        if not stub_vertices:
            components.append(BoundaryComponent(None, (), (), j_sum, True, smallest))
            continue
        start_vertex = stub_vertices[0]
        start = rot[start_vertex][0]
        raw: list[Letter] = []
        cur = start
        visited = 0
        limit = len(pic.halfEdges) + 1
        while True:
            h = by_dart[cur]
            if by_vertex[h.vertex].kind == "boundary":
                raw.append((h.label, 1 if h.orientation == "ingoing" else -1))
            cur = phi(cur)
            visited += 1
            if cur == start or visited > limit:
                break
        components.append(
            BoundaryComponent(
                start_vertex, tuple(raw), reduce_letters(raw), j_sum, False, smallest
            )
        )

    components.sort(key=lambda c: (c.closed, c.canonicalStart or "", c.smallestVertex))

    # Interior vertices must spell relations.
    table = relation_table(pres)
    matches: list[VertexMatch] = []
    for v in pic.vertices:
        if v.kind != "interior":
            continue
        word = _vertex_word(rot[v.id], by_dart)
        found = find_relation_match(word, table, d, v.jPower)
        if found is None:
            errors.append(
                f"unmatched vertex {v.id}: word {letters_to_text(word)} with "
                f"label {(v.jPower or 0) % d} spells no relation"
            )
        else:
            key, k, inverted, _ = found
            matches.append(VertexMatch(v.id, key, k, inverted, word))

    boundary_raw = tuple(l for c in components for l in c.rawLetters)
    boundary_reduced = tuple(l for c in components for l in c.reducedLetters)
    j_total = sum(
        v.jPower or 0 for v in pic.vertices if v.kind == "interior"
    ) % d

    return ValidityReport(
        valid=not errors,
        errors=tuple(errors),
        matches=tuple(matches),
        boundaryRaw=boundary_raw,
        boundaryReduced=boundary_reduced,
        jPowerTotal=j_total,
        faceCount=len(orbit_darts),
        componentCount=len(comp_vertices),
        components=tuple(components),
    )


def _prefixed(pic: CombinatorialPicture, prefix: str) -> tuple:
    vertices = [
        PictureVertex(prefix + v.id, v.kind, v.jPower) for v in pic.vertices
    ]
    half_edges = [
        PictureHalfEdge(prefix + h.id, prefix + h.twin, prefix + h.vertex, h.label, h.orientation)
        for h in pic.halfEdges
    ]
    rotation = [
        (prefix + vid, tuple(prefix + h for h in order)) for vid, order in pic.rotation
    ]
    return vertices, half_edges, rotation


def glue_pictures(
    first: CombinatorialPicture,
    second: CombinatorialPicture,
    pairing: tuple[tuple[str, str], ...],
) -> CombinatorialPicture:
    """Join two pictures along paired boundary vertices.

    Vertex and half-edge ids are prefixed "a:" and "b:".  Each pair must
    name boundary vertices whose strands carry the same label and meet the
    rim with opposite orientations; the paired rim vertices disappear and
    their strands splice into one edge.  An empty pairing forms the
    disjoint union.
    """
    va, ha, ra = _prefixed(first, "a:")
    vb, hb, rb = _prefixed(second, "b:")
    vertices = {v.id: v for v in va + vb}
    half_edges = {h.id: h for h in ha + hb}
    rotation = dict(ra + rb)

    used: set[str] = set()
    for left, right in pairing:
        aid, bid = "a:" + left, "b:" + right
        for vid in (aid, bid):
            if vid not in vertices:
                raise ValidationError(f"gluing names unknown vertex {vid}")
            if vertices[vid].kind != "boundary":
                raise ValidationError(f"gluing names non-boundary vertex {vid}")
            if vid in used:
                raise ValidationError(f"gluing names vertex {vid} twice")
            used.add(vid)
        stub_a = half_edges[rotation[aid][0]]
        stub_b = half_edges[rotation[bid][0]]
        if stub_a.label != stub_b.label:
            raise ValidationError(
                f"cannot glue {aid} ({stub_a.label}) to {bid} ({stub_b.label})"
            )
        if stub_a.orientation == stub_b.orientation:
            raise ValidationError(
                f"cannot glue {aid} to {bid}: strands point the same way"
            )
        ta, tb = half_edges[stub_a.twin], half_edges[stub_b.twin]
        half_edges[ta.id] = PictureHalfEdge(ta.id, tb.id, ta.vertex, ta.label, ta.orientation)
        half_edges[tb.id] = PictureHalfEdge(tb.id, ta.id, tb.vertex, tb.label, tb.orientation)
        for gone in (aid, bid):
            del vertices[gone]
            del rotation[gone]
        del half_edges[stub_a.id]
        del half_edges[stub_b.id]

    return CombinatorialPicture(
        vertices=tuple(vertices.values()),
        halfEdges=tuple(half_edges.values()),
        rotation=tuple((vid, order) for vid, order in rotation.items()),
    )


def union_pictures(
    first: CombinatorialPicture, second: CombinatorialPicture
) -> CombinatorialPicture:
    """Disjoint union of two pictures, with ids prefixed "a:" and "b:"."""
    return glue_pictures(first, second, ())
