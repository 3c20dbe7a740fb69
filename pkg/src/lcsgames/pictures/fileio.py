"""Plain-text serialisation of combinatorial pictures.

Format "lcspic 1", one record per line, ids free of whitespace:

    lcspic 1
    vertex <id> interior <jPower>
    vertex <id> boundary
    halfedge <id> twin=<id> vertex=<id> label=<name> orientation=<outgoing|ingoing>
    rotation <vertexId> <dartId> ...

Blank lines and lines starting with # are ignored.  Records keep their
order, so write followed by read is the identity on the data model.
"""

from __future__ import annotations

from pathlib import Path

from ..errors import ParseError
from .core import CombinatorialPicture, PictureHalfEdge, PictureVertex


def write_picture(pic: CombinatorialPicture, path: str | Path) -> None:
    """Write a picture to a text file in the lcspic 1 format."""
    lines = ["lcspic 1"]
    for v in pic.vertices:
        if v.kind == "interior":
            lines.append(f"vertex {v.id} interior {v.jPower}")
        else:
            lines.append(f"vertex {v.id} boundary")
    for h in pic.halfEdges:
        lines.append(
            f"halfedge {h.id} twin={h.twin} vertex={h.vertex} "
            f"label={h.label} orientation={h.orientation}"
        )
    for vid, order in pic.rotation:
        lines.append(" ".join(["rotation", vid, *order]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _field(token: str, key: str, lineno: int) -> str:
    prefix = key + "="
    if not token.startswith(prefix) or len(token) == len(prefix):
        raise ParseError(f"line {lineno}: expected {key}=<value>, got {token!r}")
    return token[len(prefix) :]


def read_picture(path: str | Path) -> CombinatorialPicture:
    """Read a picture from a text file in the lcspic 1 format.

    Raises ParseError for malformed text and ValidationError when the
    records do not assemble into a well-formed combinatorial map.
    """
    text = Path(path).read_text(encoding="utf-8")
    vertices: list[PictureVertex] = []
    half_edges: list[PictureHalfEdge] = []
    rotation: list[tuple[str, tuple[str, ...]]] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if not seen_header:
            if tokens != ["lcspic", "1"]:
                raise ParseError(f"line {lineno}: expected header 'lcspic 1'")
            seen_header = True
            continue
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) == 3 and tokens[2] == "boundary":
                vertices.append(PictureVertex(tokens[1], "boundary"))
            elif len(tokens) == 4 and tokens[2] == "interior":
                try:
                    label = int(tokens[3])
                except ValueError:
                    raise ParseError(
                        f"line {lineno}: jPower {tokens[3]!r} is not an integer"
                    ) from None
                vertices.append(PictureVertex(tokens[1], "interior", label))
            else:
                raise ParseError(f"line {lineno}: malformed vertex record")
        elif kind == "halfedge":
            if len(tokens) != 6:
                raise ParseError(f"line {lineno}: malformed halfedge record")
            half_edges.append(
                PictureHalfEdge(
                    tokens[1],
                    _field(tokens[2], "twin", lineno),
                    _field(tokens[3], "vertex", lineno),
                    _field(tokens[4], "label", lineno),
                    _field(tokens[5], "orientation", lineno),
                )
            )
        elif kind == "rotation":
            if len(tokens) < 2:
                raise ParseError(f"line {lineno}: malformed rotation record")
            rotation.append((tokens[1], tuple(tokens[2:])))
        else:
            raise ParseError(f"line {lineno}: unknown record {kind!r}")
    if not seen_header:
        raise ParseError("empty picture file: missing 'lcspic 1' header")
    return CombinatorialPicture(
        tuple(vertices), tuple(half_edges), tuple(rotation)
    )
