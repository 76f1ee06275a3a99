"""The equivariant bijection between phi-orbits and rotation orbits, and its inverse.

A partitioned word cuts a word over Z/mZ into m blocks. With sigma the letter
sum mod m, the blocks carry the labels sigma+1, sigma+2, ..., sigma (mod m)
from left to right. ``p_map`` and ``q_map`` address blocks by label; the
balancing matrix and the rightmost-equitable search address them by position.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .words import Word, format_letters
from .xposet import phi

EMPTY_BLOCK = "·"


@dataclass(frozen=True)
class PartitionedWord:
    word: Word
    dividers: tuple[int, ...]

    def __post_init__(self) -> None:
        d = tuple(self.dividers)
        object.__setattr__(self, "dividers", d)
        m, n = self.word.modulus, len(self.word)
        if len(d) != m - 1:
            raise ValueError(f"need {m - 1} dividers for m={m}, got {len(d)}")
        if any(not 0 <= b <= n for b in d) or any(d[i] > d[i + 1] for i in range(len(d) - 1)):
            raise ValueError(f"dividers {d} must be weakly increasing in [0, {n}]")

    @classmethod
    def from_blocks(cls, m: int, blocks: Sequence[Sequence[int]]) -> "PartitionedWord":
        if len(blocks) != m:
            raise ValueError(f"need {m} blocks, got {len(blocks)}")
        letters: list[int] = []
        dividers = []
        for blk in blocks[:-1]:
            letters.extend(blk)
            dividers.append(len(letters))
        letters.extend(blocks[-1])
        return cls(Word(m, tuple(letters)), tuple(dividers))

    @classmethod
    def parse(cls, text: str, m: int) -> "PartitionedWord":
        """Parse ``3|2|1|0302``; an empty block is written ``·`` or ``.``."""
        parts = text.strip().split("|")
        blocks = [Word.parse(p, m).letters for p in parts]
        return cls.from_blocks(m, blocks)

    @property
    def m(self) -> int:
        return self.word.modulus

    @property
    def sigma(self) -> int:
        return self.word.total()

    @property
    def total(self) -> int:
        """Integer letter sum, not reduced."""
        return sum(self.word.letters)

    def bounds(self) -> list[tuple[int, int]]:
        cuts = (0,) + self.dividers + (len(self.word),)
        return [(cuts[i], cuts[i + 1]) for i in range(self.m)]

    def blocks(self) -> list[tuple[int, ...]]:
        """Blocks in positional order, left to right."""
        ls = self.word.letters
        return [ls[a:b] for a, b in self.bounds()]

    def label(self, position: int) -> int:
        """Label of the block at 0-indexed ``position``."""
        return (self.sigma + 1 + position) % self.m

    def position(self, label: int) -> int:
        return (label - self.sigma - 1) % self.m

    def block(self, label: int) -> tuple[int, ...]:
        return self.blocks()[self.position(label)]

    def block_of(self, i: int) -> int:
        """0-indexed position of the block holding letter i (0-indexed)."""
        for pos, (a, b) in enumerate(self.bounds()):
            if a <= i < b:
                return pos
        raise IndexError(i)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "|".join(format_letters(b, self.m) if b else EMPTY_BLOCK for b in self.blocks())


def p_map(x: Word) -> PartitionedWord:
    """Insert each difference x_i - x_{i-1} at the right end of the block labelled x_{i-1}."""
    m = x.modulus
    sigma = x.letters[-1] if x.letters else 0
    blocks: list[list[int]] = [[] for _ in range(m)]
    prev = 0
    for cur in x.letters:
        blocks[(prev - sigma - 1) % m].append((cur - prev) % m)
        prev = cur
    return PartitionedWord.from_blocks(m, blocks)


@dataclass(frozen=True)
class QStep:
    """One row of the block-walking read-off: state before removing a letter."""

    t: int
    state: PartitionedWord
    removed_position: int | None
    trace: tuple[int, ...]


def q_trace(pw: PartitionedWord) -> tuple[list[QStep], Word, PartitionedWord]:
    """Run the read-off, recording every intermediate state."""
    m = pw.m
    sigma = pw.sigma
    blocks = [list(b) for b in pw.blocks()]
    t = 0
    trace: list[int] = []
    steps = []
    while True:
        pos = (t - sigma - 1) % m
        state = PartitionedWord.from_blocks(m, blocks)
        if not blocks[pos]:
            steps.append(QStep(t, state, None, tuple(trace)))
            break
        steps.append(QStep(t, state, pos, tuple(trace)))
        v = blocks[pos].pop(0)
        t = (t + v) % m
        trace.append(t)
    return steps, Word(m, tuple(trace)), PartitionedWord.from_blocks(m, blocks)


def _read_off(blocks: list[list[int]], sigma: int, m: int) -> list[int]:
    """Consume ``blocks`` in place from label 0; returns the visited labels."""
    heads = [0] * m
    t = 0
    trace = []
    while True:
        pos = (t - sigma - 1) % m
        blk = blocks[pos]
        if heads[pos] == len(blk):
            break
        t = (t + blk[heads[pos]]) % m
        heads[pos] += 1
        trace.append(t)
    for pos in range(m):
        del blocks[pos][:heads[pos]]
    return trace


def q_map(pw: PartitionedWord) -> tuple[Word, PartitionedWord]:
    """Read letters off block by block starting at label 0.

    Returns the trace of visited labels and the unconsumed remainder. Block
    labels stay those of the input throughout, so the remainder is returned
    positionally.
    """
    m = pw.m
    blocks = [list(b) for b in pw.blocks()]
    trace = _read_off(blocks, pw.sigma, m)
    return Word(m, tuple(trace)), PartitionedWord.from_blocks(m, blocks)


def is_successful(pw: PartitionedWord) -> bool:
    x, _ = q_map(pw)
    return len(x) == len(pw)


def balancing_matrix(pw: PartitionedWord) -> list[list[int]]:
    """Row i marks w_i cyclically consecutive columns from the block position of letter i."""
    m = pw.m
    rows = []
    for pos, blk in enumerate(pw.blocks()):
        for a in blk:
            row = [0] * m
            for j in range(a):
                row[(pos + j) % m] = 1
            rows.append(row)
    return rows


def _column_sums(blocks: Sequence[Sequence[int]], m: int) -> list[int]:
    sums = [0] * m
    for pos, blk in enumerate(blocks):
        for a in blk:
            for j in range(pos, pos + a):
                sums[j % m] += 1
    return sums


def column_sums(pw: PartitionedWord) -> list[int]:
    return _column_sums(pw.blocks(), pw.m)


def _targets(total: int, m: int) -> list[int]:
    base, sigma = divmod(total, m)
    # 1-indexed column j in {m - sigma, ..., m - 1}  <=>  0-indexed j in [m-sigma-1, m-2]
    return [base + 1 if m - sigma - 1 <= j <= m - 2 else base for j in range(m)]


def equitable_targets(pw: PartitionedWord) -> list[int]:
    """Required ones per column (0-indexed); columns m-sigma..m-1 (1-indexed) get one extra."""
    return _targets(pw.total, pw.m)


def _first_unbalanced(blocks: Sequence[Sequence[int]], targets: list[int], m: int) -> int | None:
    for j, (have, want) in enumerate(zip(_column_sums(blocks, m), targets)):
        if have != want:
            return j
    return None


def first_unbalanced_column(pw: PartitionedWord) -> int | None:
    return _first_unbalanced(pw.blocks(), equitable_targets(pw), pw.m)


def is_equitable(pw: PartitionedWord) -> bool:
    return first_unbalanced_column(pw) is None


def rightmost_equitable(w: Word) -> PartitionedWord:
    """Push letters rightward from the first unbalanced column until all columns balance."""
    m = w.modulus
    blocks: list[list[int]] = [list(w.letters)] + [[] for _ in range(m - 1)]
    targets = _targets(sum(w.letters), m)
    while True:
        col = _first_unbalanced(blocks, targets, m)
        if col is None:
            return PartitionedWord.from_blocks(m, blocks)
        assert col < m - 1, f"last column unbalanced alone while balancing {w}"
        assert blocks[col], f"tried to push from an empty block while balancing {w}"
        blocks[col + 1].insert(0, blocks[col].pop())


def successful_partition_trace(w: Word) -> list[tuple[PartitionedWord, PartitionedWord]]:
    """Each row: the current partition and the remainder left by q_map on it."""
    m = w.modulus
    pw = rightmost_equitable(w)
    rows = []
    seen = {pw.dividers}
    while True:
        _, rest = q_map(pw)
        rows.append((pw, rest))
        if len(rest.word) == 0:
            return rows
        blocks = [list(b) for b in pw.blocks()]
        leftover = rest.blocks()
        for pos in range(m - 1):
            moved = list(leftover[pos])
            if moved:
                assert blocks[pos][-len(moved):] == moved, "remainder is not a block suffix"
                del blocks[pos][-len(moved):]
                blocks[pos + 1][:0] = moved
        nxt = PartitionedWord.from_blocks(m, blocks)
        # letters only move right, so every divider moves left or stays
        assert all(a <= b for a, b in zip(nxt.dividers, pw.dividers)) and nxt.dividers != pw.dividers, (
            f"no rightward progress from {pw}"
        )
        assert nxt.dividers not in seen, f"revisited {nxt}"
        seen.add(nxt.dividers)
        pw = nxt


def successful_partition(w: Word) -> PartitionedWord:
    return successful_partition_trace(w)[-1][0]


def tree_rank(m: int, r: int) -> list[PartitionedWord]:
    """Rank r of the m-ary tree of successful partitioned words.

    Children of a node prepend -i (mod m) to its block labelled i, listed by
    the prepended letter 0, 1, ..., m-1.
    """
    if r < 0:
        raise ValueError(f"rank must be >= 0, got {r}")
    rank = [PartitionedWord(Word(m, ()), (0,) * (m - 1))]
    for _ in range(r):
        nxt = []
        for node in rank:
            for v in range(m):
                label = (-v) % m
                blocks = [list(b) for b in node.blocks()]
                blocks[node.position(label)].insert(0, v)
                nxt.append(PartitionedWord.from_blocks(m, blocks))
        rank = nxt
    return rank


def w_map(x: Word) -> Word:
    """First letters along the phi-orbit of x, read k+1 times."""
    m, k = x.modulus, len(x)
    if k == 0:
        return Word(m, (m - 1,))
    letters = []
    cur = x
    for _ in range(k + 1):
        letters.append(cur.letters[0])
        cur = phi(cur)
    return Word(m, tuple(letters))


def forget(pw: PartitionedWord) -> Word:
    return pw.word


def w_inverse(u: Word) -> Word:
    m = u.modulus
    if u.total() != (m - 1) % m:
        raise ValueError(f"{u} sums to {u.total()} mod {m}, expected {m - 1}")
    x, rest = q_map(successful_partition(u))
    assert len(rest.word) == 0 and x.letters[-1] == m - 1, f"read-off of {u} ended at {x}"
    return x[:-1]


def all_partitions_of(w: Word) -> list[PartitionedWord]:
    """Every divider tuple for w (brute force)."""
    m, n = w.modulus, len(w)
    return [PartitionedWord(w, d) for d in combinations_with_replacement(range(n + 1), m - 1)]


def format_matrix(pw: PartitionedWord) -> str:
    """Rows as 'letter | cells', with a rule after each block's last letter."""
    lines = []
    mat = balancing_matrix(pw)
    i = 0
    for blk in pw.blocks():
        for a in blk:
            lines.append(f"{a} | " + " ".join("1" if v else "." for v in mat[i]))
            i += 1
        lines.append("--")
    return "\n".join(lines)
