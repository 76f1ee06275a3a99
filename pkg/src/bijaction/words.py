"""Residue words over Z/mZ and the rotation action on words summing to m-1."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable


@dataclass(frozen=True, order=True)
class Word:
    """A finite word over Z/mZ. Letters are stored reduced into [0, m)."""

    modulus: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if not 0 <= a < self.modulus:
                raise ValueError(f"letter {a} not in [0, {self.modulus})")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, m: int, letters: Iterable[int]) -> "Word":
        """Build a word, reducing each letter mod m first."""
        return cls(m, tuple(int(a) % m for a in letters))

    @classmethod
    def parse(cls, text: str, m: int) -> "Word":
        """Parse a digit string (m <= 10) or comma-separated integers.

        The empty string and "." / "·" all denote the empty word.
        """
        text = text.strip()
        if text in ("", ".", "·"):
            return cls(m, ())
        if "," in text:
            return cls(m, tuple(int(t) for t in text.split(",")))
        if m > 10:
            if len(text) > 1:
                raise ValueError("words over moduli > 10 must be comma separated")
            return cls(m, (int(text),))
        return cls(m, tuple(int(ch) for ch in text))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.modulus, self.letters[i])
        return self.letters[i]

    def __add__(self, other: "Word") -> "Word":
        if other.modulus != self.modulus:
            raise ValueError("cannot concatenate words over different moduli")
        return Word(self.modulus, self.letters + other.letters)

    def __str__(self) -> str:
        return format_letters(self.letters, self.modulus)

    def total(self) -> int:
        """Letter sum reduced mod m."""
        return sum(self.letters) % self.modulus


def format_letters(letters: Iterable[int], m: int) -> str:
    letters = tuple(letters)
    if m <= 10:
        return "".join(str(a) for a in letters)
    return ",".join(str(a) for a in letters)


def rotate_left(w: Word) -> Word:
    if not w.letters:
        return w
    return Word(w.modulus, w.letters[1:] + w.letters[:1])


def shift(w: Word, i: int) -> Word:
    """Subtract ``i`` from every letter (mod m)."""
    m = w.modulus
    return Word(m, tuple((a - i) % m for a in w.letters))


def enumerate_W(m: int, k: int) -> list[Word]:
    """All words of length k+1 with letter sum congruent to m-1, lexicographically."""
    if m < 1 or k < 0:
        raise ValueError(f"need m >= 1 and k >= 0, got m={m}, k={k}")
    out = []
    for head in product(range(m), repeat=k):
        last = (m - 1 - sum(head)) % m
        out.append(Word(m, head + (last,)))
    return out


def all_words(m: int, length: int) -> list[Word]:
    """Every word of the given length over Z/mZ, lexicographically."""
    return [Word(m, t) for t in product(range(m), repeat=length)]


def orbit(w: Word, action) -> list[Word]:
    """The orbit of ``w`` under ``action``, starting at ``w``."""
    out = [w]
    cur = action(w)
    while cur != w:
        out.append(cur)
        cur = action(cur)
    return out


def rotation_orbits(m: int, k: int) -> list[list[Word]]:
    """Rotation orbits of enumerate_W(m, k).

    Each orbit starts at its lexicographically smallest word; orbits are
    sorted by that representative.
    """
    seen: set[Word] = set()
    orbits = []
    for w in enumerate_W(m, k):
        if w in seen:
            continue
        orb = orbit(w, rotate_left)
        seen.update(orb)
        orbits.append(orb)
    return orbits
