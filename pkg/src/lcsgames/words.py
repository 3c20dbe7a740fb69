"""Freely reduced words over named generators with a central J factor.

A word is a sequence of (generator, exponent) letters with exponent +1 or -1,
together with an integer power of the distinguished central generator J.
The J power is kept separate so that words stay literal transcripts of group
expressions while J bookkeeping remains exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError

Letter = tuple[str, int]

_TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_.|:-]*)(?:\^(-?\d+))?$")


def reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Freely reduce a letter sequence (cancel adjacent s, s^-1 pairs)."""
    out: list[Letter] = []
    for name, exp in letters:
        if out and out[-1][0] == name and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((name, exp))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word times an explicit central J^jPower factor."""

    letters: tuple[Letter, ...] = ()
    jPower: int = 0

    def __post_init__(self) -> None:
        for letter in self.letters:
            name, exp = letter
            if exp not in (1, -1):
                raise ParseError(f"letter exponent must be +1 or -1, got {letter!r}")
            if name == "J":
                raise ParseError("J belongs in jPower, not in the letter sequence")
        if self.letters != reduce_letters(self.letters):
            raise ParseError("letters are not freely reduced")

    @staticmethod
    def make(letters: Iterable[Letter], jPower: int = 0) -> "FreeWord":
        """Build a word, freely reducing the letter sequence first."""
        return FreeWord(reduce_letters(letters), jPower)

    @staticmethod
    def from_string(text: str) -> "FreeWord":
        """Parse words like ``"x1^2 z2 x3^-1 J^-1"`` (whitespace separated)."""
        letters: list[Letter] = []
        j_power = 0
        for token in text.split():
            if token == "1":  # the empty word prints as "1"
                continue
            match = _TOKEN_RE.match(token)
            if match is None:
                raise ParseError(f"cannot parse word token {token!r}")
            name, exp_text = match.group(1), match.group(2)
            exp = 1 if exp_text is None else int(exp_text)
            if name == "J":
                j_power += exp
                continue
            sign = 1 if exp >= 0 else -1
            letters.extend((name, sign) for _ in range(abs(exp)))
        return FreeWord.make(letters, j_power)

    def to_string(self) -> str:
        parts: list[str] = []
        if self.jPower:
            parts.append("J" if self.jPower == 1 else f"J^{self.jPower}")
        index = 0
        while index < len(self.letters):
            name, exp = self.letters[index]
            run = 1
            while (
                index + run < len(self.letters)
                and self.letters[index + run] == (name, exp)
            ):
                run += 1
            total = exp * run
            parts.append(name if total == 1 else f"{name}^{total}")
            index += run
        return " ".join(parts) if parts else "1"

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord.make(self.letters + other.letters, self.jPower + other.jPower)

    def inverse(self) -> "FreeWord":
        inv = tuple((name, -exp) for name, exp in reversed(self.letters))
        return FreeWord(inv, -self.jPower)

    def power(self, k: int) -> "FreeWord":
        base = self if k >= 0 else self.inverse()
        out = FreeWord()
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugated_by(self, name: str, exp: int) -> "FreeWord":
        """Return s^exp * w * s^-exp, freely reduced."""
        pre = ((name, exp),)
        post = ((name, -exp),)
        return FreeWord.make(pre + self.letters + post, self.jPower)

    def generator_names(self) -> set[str]:
        return {name for name, _ in self.letters}

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)


def word(text: str) -> FreeWord:
    """Shorthand parser used heavily in fixtures and tests."""
    return FreeWord.from_string(text)


def commutator(a: str, b: str) -> FreeWord:
    """The commutator word a b a^-1 b^-1 with no J factor."""
    return FreeWord(((a, 1), (b, 1), (a, -1), (b, -1)))


def cyclic_rotations(letters: tuple[Letter, ...]) -> list[tuple[Letter, ...]]:
    if not letters:
        return [()]
    return [letters[k:] + letters[:k] for k in range(len(letters))]


def invert_letters(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return tuple((name, -exp) for name, exp in reversed(letters))


def cyclically_equal(a: tuple[Letter, ...], b: tuple[Letter, ...]) -> bool:
    """Letter sequences equal up to cyclic rotation."""
    if len(a) != len(b):
        return False
    return a in cyclic_rotations(b)


def cyclic_reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    """Freely reduce, then cancel matched first/last letters."""
    out = list(reduce_letters(letters))
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
        out = list(reduce_letters(out))
    return tuple(out)
