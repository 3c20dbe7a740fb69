"""Phase-plus-symplectic-vector arithmetic for n-qudit Pauli operators.

An element is J^phase * prod_i x_i^xExp[i] z_i^zExp[i] with all entries mod d.
The multiplication phase rule is derived once from the defining relation
z_i x_i = J x_i z_i and frozen here; an independent word-rewriting oracle in
the test suite witnesses it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DimensionMismatchError, ParseError, ValidationError
from .words import FreeWord, Letter


def generator_names(n: int) -> tuple[str, ...]:
    """Generator names: ("x", "z") for one qudit, ("x1", ..., "zn") beyond."""
    if n == 1:
        return ("x", "z")
    return tuple(f"x{i + 1}" for i in range(n)) + tuple(f"z{i + 1}" for i in range(n))


def parse_generator_name(name: str, n: int) -> tuple[str, int]:
    """Map a generator name to (kind, qudit index); kind is "x" or "z"."""
    kind = name[0]
    if kind not in ("x", "z"):
        raise ParseError(f"unknown Pauli generator {name!r}")
    suffix = name[1:]
    if suffix == "":
        index = 1
        if n != 1:
            raise ParseError(f"bare {kind!r} is only valid for n=1, got n={n}")
    else:
        if not suffix.isdigit():
            raise ParseError(f"unknown Pauli generator {name!r}")
        index = int(suffix)
    if not 1 <= index <= n:
        raise ParseError(f"generator {name!r} out of range for n={n}")
    return kind, index


@dataclass(frozen=True)
class PauliElement:
    """Canonical form of an element of the n-qudit Pauli group mod d."""

    n: int
    d: int
    phase: int
    xExp: tuple[int, ...]
    zExp: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 2:
            raise DimensionMismatchError(f"need n >= 1 and d >= 2, got ({self.n}, {self.d})")
        if len(self.xExp) != self.n or len(self.zExp) != self.n:
            raise DimensionMismatchError("exponent vectors must have length n")
        if not 0 <= self.phase < self.d:
            raise ValidationError("phase must be reduced into [0, d)")
        for value in self.xExp + self.zExp:
            if not 0 <= value < self.d:
                raise ValidationError("exponents must be reduced into [0, d)")

    def is_identity(self) -> bool:
        return self.phase == 0 and not any(self.xExp) and not any(self.zExp)


def identity(n: int, d: int) -> PauliElement:
    return PauliElement(n, d, 0, (0,) * n, (0,) * n)


def j_element(n: int, d: int, power: int = 1) -> PauliElement:
    return PauliElement(n, d, power % d, (0,) * n, (0,) * n)


def x_element(i: int, n: int, d: int) -> PauliElement:
    """The generator x_i (1-based qudit index)."""
    if not 1 <= i <= n:
        raise ValidationError(f"qudit index {i} out of range for n={n}")
    vec = tuple(1 if k == i - 1 else 0 for k in range(n))
    return PauliElement(n, d, 0, vec, (0,) * n)


def z_element(i: int, n: int, d: int) -> PauliElement:
    """The generator z_i (1-based qudit index)."""
    if not 1 <= i <= n:
        raise ValidationError(f"qudit index {i} out of range for n={n}")
    vec = tuple(1 if k == i - 1 else 0 for k in range(n))
    return PauliElement(n, d, 0, (0,) * n, vec)


def _check_compatible(p: PauliElement, q: PauliElement) -> None:
    if (p.n, p.d) != (q.n, q.d):
        raise DimensionMismatchError(
            f"mismatched (n, d): ({p.n}, {p.d}) vs ({q.n}, {q.d})"
        )


def pauli_mul(p: PauliElement, q: PauliElement) -> PauliElement:
    """Product in canonical form; phase picks up p.zExp . q.xExp mod d."""
    _check_compatible(p, q)
    d = p.d
    cross = sum(a * b for a, b in zip(p.zExp, q.xExp)) % d
    return PauliElement(
        p.n,
        d,
        (p.phase + q.phase + cross) % d,
        tuple((a + b) % d for a, b in zip(p.xExp, q.xExp)),
        tuple((a + b) % d for a, b in zip(p.zExp, q.zExp)),
    )


def pauli_inverse(p: PauliElement) -> PauliElement:
    d = p.d
    cross = sum(a * b for a, b in zip(p.xExp, p.zExp)) % d
    return PauliElement(
        p.n,
        d,
        (-p.phase + cross) % d,
        tuple((-a) % d for a in p.xExp),
        tuple((-a) % d for a in p.zExp),
    )


def pauli_power(p: PauliElement, k: int) -> PauliElement:
    base = p if k >= 0 else pauli_inverse(p)
    out = identity(p.n, p.d)
    for _ in range(abs(k)):
        out = pauli_mul(out, base)
    return out


def canonical_form(w: FreeWord | str, n: int, d: int) -> PauliElement:
    """Evaluate a word over {x_i, z_i, J} to its canonical Pauli form."""
    if isinstance(w, str):
        w = FreeWord.from_string(w)
    out = j_element(n, d, w.jPower)
    for name, exp in w.letters:
        kind, index = parse_generator_name(name, n)
        gen = x_element(index, n, d) if kind == "x" else z_element(index, n, d)
        if exp < 0:
            gen = pauli_inverse(gen)
        out = pauli_mul(out, gen)
    return out


def pauli_to_word(p: PauliElement) -> FreeWord:
    """Canonical word J^phase x_1^a1 z_1^b1 ... x_n^an z_n^bn (exponents in [0, d))."""
    letters: list[Letter] = []
    for i in range(p.n):
        x_name = "x" if p.n == 1 else f"x{i + 1}"
        z_name = "z" if p.n == 1 else f"z{i + 1}"
        letters.extend((x_name, 1) for _ in range(p.xExp[i]))
        letters.extend((z_name, 1) for _ in range(p.zExp[i]))
    return FreeWord(tuple(letters), p.phase)


def enumerate_group(n: int, d: int, cap: int = 10**6) -> list[PauliElement]:
    """All d^(2n+1) elements of the n-qudit Pauli group, in a fixed order."""
    from .errors import SizeCapError

    size = d ** (2 * n + 1)
    if size > cap:
        raise SizeCapError(f"group of size {size} exceeds cap {cap}")
    vectors: list[tuple[int, ...]] = [()]
    for _ in range(n):
        vectors = [vec + (value,) for vec in vectors for value in range(d)]
    out: list[PauliElement] = []
    for phase in range(d):
        for x_vec in vectors:
            for z_vec in vectors:
                out.append(PauliElement(n, d, phase, x_vec, z_vec))
    return out
