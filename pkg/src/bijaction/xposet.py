"""The poset of length-k words over Z/mZ and its cyclic action phi.

Cover relations:

* type 1: ``y a  <.  (a+1) y`` for a < m-1,
* type 2: ``y a b z  <.  y b a z`` for b < a.

phi is read off the extended word ``(x)(m-1)(x-1)(m-2)...(x-m+1)(0)`` by
rotating it so that its leftmost 0 becomes the last letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .words import Word, all_words, shift


@dataclass(frozen=True)
class ExtendedWord:
    base: Word
    letters: Word

    def blocks(self) -> list[Word]:
        """The m runs of length k+1."""
        n = len(self.base) + 1
        return [self.letters[i:i + n] for i in range(0, len(self.letters), n)]

    def __str__(self) -> str:
        return " ".join(str(b) for b in self.blocks())


def extended_word(x: Word) -> ExtendedWord:
    m = x.modulus
    out: list[int] = []
    for j in range(m):
        out.extend(shift(x, j).letters)
        out.append(m - 1 - j)
    return ExtendedWord(x, Word(m, tuple(out)))


def leftmost_zero(x: Word) -> int:
    """0-indexed position of the leftmost 0 in the extended word of x."""
    return extended_word(x).letters.letters.index(0)


@lru_cache(maxsize=None)
def _phi_letters(m: int, letters: tuple[int, ...]) -> tuple[int, ...]:
    ext = extended_word(Word(m, letters)).letters.letters
    p = ext.index(0)
    rotated = ext[p + 1:] + ext[:p + 1]
    return rotated[:len(letters)]


def phi(x: Word) -> Word:
    return Word(x.modulus, _phi_letters(x.modulus, x.letters))


def phi_power(x: Word, j: int) -> Word:
    for _ in range(j):
        x = phi(x)
    return x


def type1_cover(x: Word) -> Word | None:
    """The unique type-1 upper cover of x, if the last letter allows one."""
    m = x.modulus
    if not x.letters:
        return None
    a = x.letters[-1]
    if a >= m - 1:
        return None
    return Word(m, (a + 1,) + x.letters[:-1])


def type2_covers(x: Word) -> list[Word]:
    out = []
    xs = x.letters
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        if b < a:
            out.append(Word(x.modulus, xs[:i] + (b, a) + xs[i + 2:]))
    return out


def upper_covers(x: Word) -> set[Word]:
    out = set(type2_covers(x))
    up = type1_cover(x)
    if up is not None:
        out.add(up)
    return out


def edge_types(lower: Word, upper: Word) -> set[int]:
    """Which cover types (1, 2) relate lower to upper; empty if not a cover."""
    types = set()
    if type1_cover(lower) == upper:
        types.add(1)
    if upper in type2_covers(lower):
        types.add(2)
    return types


def x_hasse(m: int, k: int) -> set[tuple[Word, Word]]:
    """All cover pairs (lower, upper) among the m^k words."""
    return {(x, y) for x in all_words(m, k) for y in upper_covers(x)}


def undirected_edge_types(u: Word, v: Word) -> tuple[set[int], bool]:
    """Types of the Hasse edge between u and v, and whether u is the lower end."""
    t = edge_types(u, v)
    if t:
        return t, True
    return edge_types(v, u), False


def check_phi_graph_automorphism(m: int, k: int) -> bool:
    """True iff phi sends every Hasse edge to a Hasse edge (orientation ignored)."""
    edges = x_hasse(m, k)
    for lo, hi in edges:
        a, b = phi(lo), phi(hi)
        if (a, b) not in edges and (b, a) not in edges:
            return False
    return True


def reversed_edge_count(m: int, k: int) -> int:
    """Number of Hasse edges whose image under phi points downward."""
    edges = x_hasse(m, k)
    return sum(1 for lo, hi in edges if (phi(hi), phi(lo)) in edges)


def predicted_case(lower: Word, upper: Word) -> str:
    """Classify a cover by where the leftmost zero of lower's extended word sits.

    Returns one of "1a", "1b", "2a", "2b"; the image of the edge under phi is
    then of type 2, 1, 2, 1 respectively.
    """
    k = len(lower)
    n = k + 1
    p = leftmost_zero(lower)
    types, is_lower = undirected_edge_types(lower, upper)
    if not is_lower or not types:
        raise ValueError(f"{lower} <. {upper} is not a cover")
    if 1 in types:
        return "1b" if p % n == k - 1 else "1a"
    # type 2: locate the swapped pair (1-indexed positions i, i+1)
    xs, ys = lower.letters, upper.letters
    i = next(j for j in range(k) if xs[j] != ys[j]) + 1
    a, b = xs[i - 1], xs[i]
    # extended-word positions are 1-indexed here
    if p + 1 in (a * n + i, b * n + i + 1):
        return "2b"
    return "2a"


PREDICTED_IMAGE_TYPE = {"1a": 2, "1b": 1, "2a": 2, "2b": 1}


def classify_edges(m: int, k: int) -> list[tuple[Word, Word, str, set[int]]]:
    """(lower, upper, case, image edge types) for every Hasse edge."""
    out = []
    for lo, hi in sorted(x_hasse(m, k)):
        img_types, _ = undirected_edge_types(phi(lo), phi(hi))
        out.append((lo, hi, predicted_case(lo, hi), img_types))
    return out


def phi_orbits(m: int, k: int) -> list[list[Word]]:
    """phi-orbits keyed by their lexicographically smallest member."""
    seen: set[Word] = set()
    out = []
    for x in all_words(m, k):
        if x in seen:
            continue
        orb = [x]
        y = phi(x)
        while y != x:
            orb.append(y)
            y = phi(y)
        seen.update(orb)
        out.append(orb)
    return out


def to_dot(edges, name: str = "X", label=str) -> str:
    """Directed DOT, lower -> upper, lines sorted for stable output."""
    lines = [f"digraph {name} {{"]
    for lo, hi in sorted((label(a), label(b)) for a, b in edges):
        lines.append(f'  "{lo}" -> "{hi}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def edges_to_json(edges, label=str) -> list[list[str]]:
    return sorted([label(a), label(b)] for a, b in edges)
