"""Planar diagrams over finitely presented groups with a central J.

A picture is a labeled directed planar graph in a disk.  Interior vertices
spell defining relations, boundary vertices mark where strands meet the rim,
and a valid picture certifies that its boundary word equals a power of J.
"""

from .core import (
    BoundaryComponent,
    CombinatorialPicture,
    PictureHalfEdge,
    PictureVertex,
    ValidityReport,
    VertexMatch,
    glue_pictures,
    union_pictures,
    validate_picture,
)
from .build import (
    PictureBuilder,
    anticommutation_picture,
    anticommutation_presentation,
    build_triangle_picture,
    build_word_picture,
    commutator_picture_pentagram,
    commutator_picture_pentagram_mirror,
    commutator_picture_square,
    commutator_picture_square_mirror,
    pentagram_canonical_witnesses,
    product_canonical_witnesses,
    square_canonical_witnesses,
    xz_cycle_picture,
)
from .proofs import (
    ConjugateBy,
    FreeCancel,
    MultiplyByRelation,
    ProofTrace,
    extract_proof,
    replay_steps,
)
from .complexity import ComplexityParameters, complexity_parameters, picture_usage
from .fileio import read_picture, write_picture

__all__ = [
    "BoundaryComponent",
    "CombinatorialPicture",
    "ComplexityParameters",
    "ConjugateBy",
    "FreeCancel",
    "MultiplyByRelation",
    "PictureBuilder",
    "PictureHalfEdge",
    "PictureVertex",
    "ProofTrace",
    "ValidityReport",
    "VertexMatch",
    "anticommutation_picture",
    "anticommutation_presentation",
    "build_triangle_picture",
    "build_word_picture",
    "commutator_picture_pentagram",
    "commutator_picture_pentagram_mirror",
    "commutator_picture_square",
    "commutator_picture_square_mirror",
    "complexity_parameters",
    "extract_proof",
    "glue_pictures",
    "pentagram_canonical_witnesses",
    "picture_usage",
    "product_canonical_witnesses",
    "read_picture",
    "replay_steps",
    "square_canonical_witnesses",
    "union_pictures",
    "validate_picture",
    "write_picture",
    "xz_cycle_picture",
]
