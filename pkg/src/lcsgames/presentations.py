"""Group presentations over Z_d.

The <S : R>_{Z_d} notation implies the relations s^d for every generator,
J^d, and centrality of J; those are never stored. Each stored relation is a
FreeWord r meaning J^r.jPower * (letters of r) = 1 in the group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .pauli import generator_names
from .words import FreeWord, commutator


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relations: tuple[FreeWord, ...]
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValidationError(f"modulus must be >= 2, got {self.modulus}")
        if len(set(self.generators)) != len(self.generators):
            raise ValidationError("duplicate generator names")
        declared = set(self.generators)
        for relation in self.relations:
            unknown = relation.generator_names() - declared
            if unknown:
                raise ValidationError(
                    f"relation {relation.to_string()!r} uses undeclared generators {sorted(unknown)}"
                )

    def relation_content(self, relation: FreeWord) -> int:
        """The J power the relation letters equal: letters = J^content."""
        return (-relation.jPower) % self.modulus


def pauli_presentation(n: int, d: int) -> GroupPresentation:
    """The n-qudit Pauli group: J[x_i, z_i] plus cross-qudit commutators.

    The relator J x_i z_i x_i^-1 z_i^-1 says x_i z_i x_i^-1 z_i^-1 = J^-1,
    equivalently z_i x_i = J x_i z_i.
    """
    names = generator_names(n)
    x_names, z_names = names[:n], names[n:]
    relations: list[FreeWord] = []
    for i in range(n):
        twisted = commutator(x_names[i], z_names[i])
        relations.append(FreeWord(twisted.letters, 1))
    for i in range(n):
        for j in range(i + 1, n):
            relations.append(commutator(x_names[i], x_names[j]))
            relations.append(commutator(z_names[i], z_names[j]))
    for i in range(n):
        for j in range(n):
            if i != j:
                relations.append(commutator(x_names[i], z_names[j]))
    return GroupPresentation(names, tuple(relations), d)
