"""(k+1)-cores, the content action, boundary words, abaci and the ideal Y_m^k."""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations_with_replacement

from .words import Word
from .xposet import phi

Partition = tuple[int, ...]


def partition(parts) -> Partition:
    """Normalize to a tuple, validating weakly decreasing positive parts."""
    p = tuple(int(a) for a in parts)
    if any(a <= 0 for a in p):
        raise ValueError(f"partition parts must be positive: {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {p}")
    return p


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("[]()")
    if not text or text in ("∅", "."):
        return ()
    return partition(int(t) for t in text.split(","))


def format_partition(p: Partition) -> str:
    return "[" + ",".join(str(a) for a in p) + "]"


def conjugate(p: Partition) -> Partition:
    return tuple(sum(1 for a in p if a > c) for c in range(p[0])) if p else ()


def hook_lengths(p: Partition) -> list[list[int]]:
    pc = conjugate(p)
    return [[(p[r] - c - 1) + (pc[c] - r - 1) + 1 for c in range(p[r])] for r in range(len(p))]


def is_core(p: Partition, n: int) -> bool:
    """True iff no cell has hook length exactly n."""
    if n < 2:
        raise ValueError(f"core parameter must be >= 2, got {n}")
    return all(h != n for row in hook_lengths(p) for h in row)


def content(r: int, c: int, n: int) -> int:
    """Residue (c - r) mod n of the cell in row r, column c (0-indexed)."""
    return (c - r) % n


def addable_cells(p: Partition) -> list[tuple[int, int]]:
    cells = [(r, p[r]) for r in range(len(p)) if r == 0 or p[r - 1] > p[r]]
    cells.append((len(p), 0))
    return cells


def removable_cells(p: Partition) -> list[tuple[int, int]]:
    return [(r, p[r] - 1) for r in range(len(p)) if r == len(p) - 1 or p[r + 1] < p[r]]


def _apply_s(p: Partition, i: int, n: int) -> Partition:
    parts = list(p)
    add = [cell for cell in addable_cells(p) if content(*cell, n) == i]
    if add:
        for r, _ in add:
            if r == len(parts):
                parts.append(1)
            else:
                parts[r] += 1
        return tuple(parts)
    remove = [cell for cell in removable_cells(p) if content(*cell, n) == i]
    for r, _ in remove:
        parts[r] -= 1
    return tuple(a for a in parts if a > 0)


def apply_s(p: Partition, i: int, n: int) -> Partition:
    """Add every addable cell of content i, else remove every removable one."""
    if not is_core(p, n):
        raise ValueError(f"{format_partition(p)} is not a {n}-core")
    return _apply_s(p, i % n, n)


def boundary_word(p: Partition, m: int, k: int) -> str:
    """Profile read from top right (0 = down, 1 = left), padded to (m-1)(k+1)."""
    bits = []
    for r, a in enumerate(p):
        nxt = p[r + 1] if r + 1 < len(p) else 0
        bits.append("0")
        bits.append("1" * (a - nxt))
    word = "".join(bits)
    budget = (m - 1) * (k + 1)
    if len(word) > budget:
        raise ValueError(f"{format_partition(p)} needs {len(word)} boundary steps, budget is {budget}")
    return word + "0" * (budget - len(word))


def partition_from_boundary(bw: str) -> Partition:
    """Inverse of boundary_word: each 0 closes a row as long as the 1s after it."""
    ones_after = bw.count("1")
    parts = []
    for ch in bw:
        if ch == "1":
            ones_after -= 1
        elif ones_after > 0:
            parts.append(ones_after)
    return tuple(parts)


def abacus(bw: str, k: int) -> list[str]:
    n = k + 1
    if len(bw) % n:
        raise ValueError(f"boundary word length {len(bw)} not divisible by {n}")
    return [bw[i:i + n] for i in range(0, len(bw), n)]


def format_abacus(rows: list[str]) -> str:
    return "\n".join(rows)


def core_to_word(p: Partition, m: int, k: int) -> Word:
    """Letter i counts the ones on runner i of the aligned abacus (runners 1..k)."""
    rows = abacus(boundary_word(p, m, k), k)
    if any(r[0] != "0" for r in rows):
        raise ValueError(f"{format_partition(p)} is not in Y_{m}^{k}: runner 0 holds a bead")
    letters = []
    for i in range(1, k + 1):
        col = "".join(r[i] for r in rows)
        if "01" in col:
            raise ValueError(f"{format_partition(p)} is not a {k + 1}-core: runner {i} not flush")
        letters.append(col.count("1"))
    return Word(m, tuple(letters))


def word_to_core(x: Word, m: int, k: int) -> Partition:
    if len(x) != k or x.modulus != m:
        raise ValueError(f"expected a length-{k} word over Z/{m}Z, got {x}")
    rows = []
    for r in range(m - 1):
        rows.append("0" + "".join("1" if x.letters[i] > r else "0" for i in range(k)))
    return partition_from_boundary("".join(rows))


def rectangle(k: int, i: int) -> Partition:
    """R_{k,i}: k-i+1 parts of size i (empty for i = 0)."""
    return (i,) * (k - i + 1) if i > 0 else ()


def rectangle_stack(k: int, indices) -> Partition:
    indices = tuple(indices)
    if any(indices[j] < indices[j + 1] for j in range(len(indices) - 1)):
        raise ValueError(f"rectangle indices must be weakly decreasing: {indices}")
    if any(not 0 <= i <= k for i in indices):
        raise ValueError(f"rectangle indices must lie in [0, {k}]: {indices}")
    shape: Partition = ()
    for i in indices:
        if i == 0:
            continue
        shape = tuple(a + i for a in shape) + rectangle(k, i)
    return shape


def contained(p: Partition, q: Partition) -> bool:
    return len(p) <= len(q) and all(a <= b for a, b in zip(p, q))


@lru_cache(maxsize=None)
def maximal_stacks(m: int, k: int) -> tuple[Partition, ...]:
    """Every stack R_{k,I}, I weakly decreasing of length m-1, minus those inside another."""
    stacks = {
        rectangle_stack(k, sorted(I, reverse=True))
        for I in combinations_with_replacement(range(k + 1), m - 1)
    }
    return tuple(sorted(s for s in stacks if not any(s != t and contained(s, t) for t in stacks)))


def in_Y(p: Partition, m: int, k: int) -> bool:
    return any(contained(p, s) for s in maximal_stacks(m, k))


def enumerate_Y(m: int, k: int) -> list[Partition]:
    """Y_m^k by upward search from the empty core, sorted by (size, parts)."""
    n = k + 1
    seen = {()}
    queue = deque([()])
    while queue:
        p = queue.popleft()
        for i in range(n):
            q = _apply_s(p, i, n)
            if sum(q) > sum(p) and q not in seen and in_Y(q, m, k):
                seen.add(q)
                queue.append(q)
    return sorted(seen, key=lambda p: (sum(p), p))


def y_hasse(m: int, k: int) -> set[tuple[Partition, Partition]]:
    """Cover pairs (mu, lambda) of Y_m^k with lambda = s_i mu larger."""
    n = k + 1
    members = set(enumerate_Y(m, k))
    edges = set()
    for p in members:
        for i in range(n):
            q = _apply_s(p, i, n)
            if sum(q) > sum(p) and q in members:
                edges.add((p, q))
    return edges


def core_phi(p: Partition, m: int, k: int) -> Partition:
    return word_to_core(phi(core_to_word(p, m, k)), m, k)


def adds_first_row(lower: Partition, upper: Partition) -> bool:
    return (upper[0] if upper else 0) > (lower[0] if lower else 0)
