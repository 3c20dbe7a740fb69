"""Regenerate the data files shipped with the package.

Writes the picture fixtures under src/lcsgames/data/pictures from their
builders.  Everything here is deterministic, so rerunning the script
leaves committed files unchanged unless a builder changed.
"""

from __future__ import annotations

from pathlib import Path

from lcsgames.pictures.build import (
    anticommutation_picture,
    commutator_picture_pentagram,
    commutator_picture_pentagram_mirror,
    commutator_picture_square,
    commutator_picture_square_mirror,
    pentagram_canonical_witnesses,
    square_canonical_witnesses,
    xz_cycle_picture,
)
from lcsgames.pictures.fileio import write_picture

ROOT = Path(__file__).resolve().parent.parent
PICTURES = ROOT / "src" / "lcsgames" / "data" / "pictures"


def picture_fixtures() -> dict[str, object]:
    """Named pictures shipped as fixtures, all over modulus 2 except xz."""
    square = square_canonical_witnesses(2)
    pentagram = pentagram_canonical_witnesses(2)
    return {
        "k33-comm.pic": commutator_picture_square(2),
        "k33-comm-mirror.pic": commutator_picture_square_mirror(2),
        "wheel-comm.pic": commutator_picture_pentagram(2),
        "wheel-comm-mirror.pic": commutator_picture_pentagram_mirror(2),
        "xz-cycle.pic": xz_cycle_picture()[0],
        "anticommutation.pic": anticommutation_picture(),
        "square-witness-e5.pic": square["e5"],
        "square-witness-e6.pic": square["e6"],
        "pentagram-witness-e10.pic": pentagram["e10"],
    }


def main() -> None:
    PICTURES.mkdir(parents=True, exist_ok=True)
    for name, pic in picture_fixtures().items():
        write_picture(pic, PICTURES / name)
        print(f"wrote {PICTURES / name}")


if __name__ == "__main__":
    main()
