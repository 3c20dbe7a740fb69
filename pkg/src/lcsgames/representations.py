"""Finite-dimensional representations of Pauli groups and their tests.

The generalized Pauli matrices are the clock/shift pair in the computational
basis: X|j> = |j+1 mod d>, Z|j> = w^j |j> with w = exp(2 pi i / d), so that
Z X = w X Z. Complex conjugation is entrywise in this basis throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionMismatchError, InvalidRepresentationError, ValidationError
from .pauli import PauliElement, enumerate_group, generator_names, pauli_inverse, pauli_to_word
from .presentations import GroupPresentation, pauli_presentation
from .words import FreeWord

MATRIX_TOL = 1e-9
CHARACTER_TOL = 1e-6


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def shift_matrix(d: int) -> np.ndarray:
    """X|j> = |j+1 mod d>."""
    out = np.zeros((d, d), dtype=complex)
    for j in range(d):
        out[(j + 1) % d, j] = 1.0
    return out


def clock_matrix(d: int) -> np.ndarray:
    """Z|j> = w^j |j>."""
    return np.diag(omega(d) ** np.arange(d)).astype(complex)


def kron_all(factors: Iterable[np.ndarray]) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for factor in factors:
        out = np.kron(out, factor)
    return out


@dataclass(frozen=True)
class Representation:
    """Unitary images for each generator plus a scalar image of J."""

    dimension: int
    generatorImages: Mapping[str, np.ndarray]
    jImage: complex

    def image(self, name: str) -> np.ndarray:
        if name not in self.generatorImages:
            raise InvalidRepresentationError(f"no image for generator {name!r}")
        return self.generatorImages[name]

    def evaluate(self, w: FreeWord | str) -> np.ndarray:
        if isinstance(w, str):
            w = FreeWord.from_string(w)
        out = (self.jImage ** w.jPower) * np.eye(self.dimension, dtype=complex)
        for name, exp in w.letters:
            matrix = self.image(name)
            out = out @ (matrix if exp == 1 else matrix.conj().T)
        return out

    def evaluate_element(self, p: PauliElement) -> np.ndarray:
        return self.evaluate(pauli_to_word(p))

    def character(self, p: PauliElement) -> complex:
        return complex(np.trace(self.evaluate_element(p)))


def pauli_rep(l: int, n: int, d: int) -> Representation:
    """tau_l: x_i -> X^l on factor i, z_i -> Z on factor i, J -> w^l."""
    if not 0 <= l <= d - 1:
        raise ValidationError(f"need 0 <= l <= d-1, got l={l}")
    names = generator_names(n)
    x_mat = np.linalg.matrix_power(shift_matrix(d), l)
    z_mat = clock_matrix(d)
    eye = np.eye(d, dtype=complex)
    images: dict[str, np.ndarray] = {}
    for i in range(n):
        images[names[i]] = kron_all(x_mat if k == i else eye for k in range(n))
        images[names[n + i]] = kron_all(z_mat if k == i else eye for k in range(n))
    return Representation(d**n, images, omega(d) ** l)


def one_dim_irreps(n: int, d: int) -> list[Representation]:
    """The d^(2n) characters: x_i -> w^(a_i), z_i -> w^(b_i), J -> 1."""
    names = generator_names(n)
    exponent_vectors: list[tuple[int, ...]] = [()]
    for _ in range(2 * n):
        exponent_vectors = [v + (k,) for v in exponent_vectors for k in range(d)]
    out: list[Representation] = []
    for vec in exponent_vectors:
        images = {
            names[k]: np.array([[omega(d) ** vec[k]]], dtype=complex)
            for k in range(2 * n)
        }
        out.append(Representation(1, images, 1.0 + 0j))
    return out


def direct_sum(rep1: Representation, rep2: Representation) -> Representation:
    if set(rep1.generatorImages) != set(rep2.generatorImages):
        raise DimensionMismatchError("direct sum requires matching generator sets")
    if rep1.jImage != rep2.jImage:
        raise InvalidRepresentationError("direct sum requires a common scalar J image")
    dim = rep1.dimension + rep2.dimension
    images = {}
    for name in rep1.generatorImages:
        block = np.zeros((dim, dim), dtype=complex)
        block[: rep1.dimension, : rep1.dimension] = rep1.image(name)
        block[rep1.dimension :, rep1.dimension :] = rep2.image(name)
        images[name] = block
    return Representation(dim, images, rep1.jImage)


def representation_relation_residual(rep: Representation, pres: GroupPresentation) -> float:
    """Max deviation of any stored or implied relation from its scalar target."""
    eye = np.eye(rep.dimension, dtype=complex)
    worst = 0.0
    for relation in pres.relations:
        target = rep.jImage ** pres.relation_content(relation)
        value = rep.evaluate(FreeWord(relation.letters, 0))
        worst = max(worst, float(np.max(np.abs(value - target * eye))))
    for name in pres.generators:
        matrix = rep.image(name)
        worst = max(worst, float(np.max(np.abs(matrix.conj().T @ matrix - eye))))
        worst = max(worst, float(np.max(np.abs(np.linalg.matrix_power(matrix, pres.modulus) - eye))))
    worst = max(worst, abs(rep.jImage**pres.modulus - 1.0))
    return worst


def is_irreducible(rep: Representation, group: Iterable[PauliElement]) -> bool:
    """Character-sum criterion: sum_g Tr(rep(g)) Tr(rep(g^-1)) == |G|."""
    elements = list(group)
    if not elements:
        raise ValidationError("empty group")
    n, d = elements[0].n, elements[0].d
    residual = representation_relation_residual(rep, pauli_presentation(n, d))
    if residual > CHARACTER_TOL:
        raise InvalidRepresentationError(
            f"not a representation: relation residual {residual:.3e}"
        )
    total = 0.0 + 0j
    for element in elements:
        total += rep.character(element) * rep.character(pauli_inverse(element))
    return abs(total - len(elements)) <= CHARACTER_TOL * len(elements)


@dataclass
class GroupTestReport:
    n: int
    d: int
    groupOrder: int
    highDimIrreducible: dict[int, bool] = field(default_factory=dict)
    charactersDifferAtJ: bool = False
    commutatorSubgroupIsJ: bool = False
    oneDimCount: int = 0
    dimensionIdentity: bool = False
    orthogonalityMaxResidual: float = float("inf")
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_group_tests(n: int, d: int, cap: int = 10**6) -> GroupTestReport:
    """Run the group-testing sub-checks for the n-qudit Pauli group mod d.

    (a) each tau_l (1 <= l <= d-1) is an irreducible d^n-dimensional
    representation, and their characters differ at J; (b) the commutator
    subgroup is exactly <J>, giving d^(2n) one-dimensional irreps; (c) the
    squared irrep dimensions sum to |G|; (d) second orthogonality:
    (1/|G|) sum_sigma n_sigma Tr sigma(x) = [x == identity] at every x.
    """
    from .pauli import pauli_mul

    elements = enumerate_group(n, d, cap=cap)
    report = GroupTestReport(n=n, d=d, groupOrder=len(elements))
    if len(elements) != d ** (2 * n + 1):
        report.failures.append("group order mismatch")

    taus = {l: pauli_rep(l, n, d) for l in range(1, d)}
    for l, tau in taus.items():
        try:
            irreducible = is_irreducible(tau, elements)
        except InvalidRepresentationError as exc:
            irreducible = False
            report.failures.append(f"tau_{l}: {exc}")
        report.highDimIrreducible[l] = irreducible
        if not irreducible:
            report.failures.append(f"tau_{l} fails the irreducibility criterion")

    j_images = [taus[l].jImage for l in sorted(taus)]
    report.charactersDifferAtJ = all(
        abs(a - b) > CHARACTER_TOL
        for i, a in enumerate(j_images)
        for b in j_images[i + 1 :]
    )
    if not report.charactersDifferAtJ:
        report.failures.append("tau characters coincide at J")

    commutators = set()
    for g in elements:
        for h in elements:
            value = pauli_mul(pauli_mul(g, h), pauli_mul(pauli_inverse(g), pauli_inverse(h)))
            commutators.add(value)
    j_subgroup = {
        PauliElement(n, d, k, (0,) * n, (0,) * n) for k in range(d)
    }
    report.commutatorSubgroupIsJ = commutators == j_subgroup
    if not report.commutatorSubgroupIsJ:
        report.failures.append("commutator subgroup is not <J>")

    one_dims = one_dim_irreps(n, d)
    report.oneDimCount = len(one_dims)
    if report.oneDimCount != d ** (2 * n):
        report.failures.append("wrong number of one-dimensional irreps")

    squares = (d - 1) * (d**n) ** 2 + report.oneDimCount
    report.dimensionIdentity = squares == len(elements)
    if not report.dimensionIdentity:
        report.failures.append("squared dimensions do not sum to |G|")

    worst = 0.0
    identity_element = PauliElement(n, d, 0, (0,) * n, (0,) * n)
    for element in elements:
        total = 0.0 + 0j
        for l, tau in taus.items():
            total += tau.dimension * tau.character(element)
        for chi in one_dims:
            total += chi.character(element)
        expected = 1.0 if element == identity_element else 0.0
        worst = max(worst, abs(total / len(elements) - expected))
    report.orthogonalityMaxResidual = worst
    if worst > 1e-9:
        report.failures.append(f"second orthogonality residual {worst:.3e}")

    return report
