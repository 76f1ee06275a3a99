"""Alcoves of the affine symmetric group, the m-Shi arrangement and parking functions.

Points live in Q^n with coordinates x_1..x_n. The hyperplanes of the affine
arrangement are x_i - x_j = integer, the fundamental alcove is
x_1 > x_2 > ... > x_n > x_1 - 1, and an affine permutation f (window
[f(1), ..., f(n)], f(i + n) = f(i) + n) acts by sending coordinate i,
shifted by the winding of f(i), to coordinate f(i) mod n. Every geometric
decision uses exact rationals.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .bijact import w_map
from .cores import Partition, _apply_s, core_to_word
from .sieve import CspReport, csp_check, w_poly
from .words import Word


@dataclass(frozen=True, order=True)
class AffinePermutation:
    n: int
    window: tuple[int, ...]

    def __post_init__(self) -> None:
        w = tuple(int(a) for a in self.window)
        object.__setattr__(self, "window", w)
        if len(w) != self.n:
            raise ValueError(f"window {w} has length {len(w)}, expected {self.n}")
        if len({a % self.n for a in w}) != self.n:
            raise ValueError(f"window {w} is not a bijection mod {self.n}")
        if sum(a - i for i, a in enumerate(w, 1)) != 0:
            raise ValueError(f"window {w} does not sum to {self.n * (self.n + 1) // 2}")

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.window) + "]"


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(1, n + 1)))


def generator(n: int, i: int) -> AffinePermutation:
    """s_i: adjacent swap for 1 <= i < n, and s_0 = [0, 2, ..., n-1, n+1]."""
    if n < 2:
        raise ValueError(f"rank parameter must be >= 2, got {n}")
    if not 0 <= i < n:
        raise ValueError(f"generator index {i} outside [0, {n})")
    w = list(range(1, n + 1))
    if i == 0:
        w[0], w[-1] = 0, n + 1
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return AffinePermutation(n, tuple(w))


def _compose_windows(u: Sequence[int], v: Sequence[int], n: int) -> tuple[int, ...]:
    out = []
    for a in v:
        q, r = divmod(a - 1, n)
        out.append(u[r] + q * n)
    return tuple(out)


def compose(u: AffinePermutation, v: AffinePermutation) -> AffinePermutation:
    """(u o v)(i) = u(v(i))."""
    if u.n != v.n:
        raise ValueError(f"rank mismatch: {u.n} vs {v.n}")
    return AffinePermutation(u.n, _compose_windows(u.window, v.window, u.n))


def invert(u: AffinePermutation) -> AffinePermutation:
    n = u.n
    w = [0] * n
    for i, a in enumerate(u.window, 1):
        q, r = divmod(a - 1, n)
        w[r] = i - q * n
    return AffinePermutation(n, tuple(w))


def length(u: AffinePermutation) -> int:
    """Number of affine hyperplanes separating the alcove of u from the fundamental one."""
    n, w = u.n, u.window
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += abs((w[j] - w[i]) // n)
    return total


@dataclass(frozen=True)
class RationalPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __add__(self, other: Iterable) -> "RationalPoint":
        return RationalPoint(tuple(a + Fraction(b) for a, b in zip(self.coords, other)))


def act(perm: AffinePermutation, pt: RationalPoint) -> RationalPoint:
    """Left action: coordinate i moves to slot f(i) mod n and gains its winding number."""
    if perm.n != len(pt):
        raise ValueError(f"rank mismatch: {perm.n} vs {len(pt)}")
    n = perm.n
    out = [Fraction(0)] * n
    for i, a in enumerate(perm.window):
        r, slot = divmod(a - 1, n)
        out[slot] = pt.coords[i] + r
    return RationalPoint(tuple(out))


def fundamental_point(n: int) -> RationalPoint:
    """((n-1)/n, ..., 1/n, 0), interior to the fundamental alcove."""
    return RationalPoint(tuple(Fraction(n - i, n) for i in range(1, n + 1)))


def alcove_sample(perm: AffinePermutation) -> RationalPoint:
    return act(perm, fundamental_point(perm.n))


def _scaled_sample(window: Sequence[int], n: int) -> list[int]:
    """n times alcove_sample, as integers."""
    out = [0] * n
    for i, a in enumerate(window, 1):
        r, slot = divmod(a - 1, n)
        out[slot] = (n - i) + r * n
    return out


def is_dominant_within(perm: AffinePermutation, d: int) -> bool:
    """Alcove lies in x_1 > ... > x_n with x_1 - x_n < d."""
    x = _scaled_sample(perm.window, perm.n)
    return all(x[i] > x[i + 1] for i in range(len(x) - 1)) and x[0] - x[-1] < d * perm.n


@dataclass(frozen=True)
class DilationAlcove:
    perm: AffinePermutation
    core: Partition
    word: Word


def enumerate_dilation(n: int, d: int, budget: int = 10**6) -> list[DilationAlcove]:
    """Alcoves of the d-fold dilated fundamental alcove, with their cores and words.

    Crossing wall i of the alcove of w leads to the alcove of w s_i; the core
    label changes by the content-i action, so the core of w is w^{-1} applied
    to the empty core.
    """
    if d < 1:
        raise ValueError(f"dilation factor must be >= 1, got {d}")
    start = identity(n)
    cores = {start: ()}
    queue = deque([start])
    steps = 0
    while queue:
        w = queue.popleft()
        lam = cores[w]
        for i in range(n):
            steps += 1
            if steps > budget:
                raise RuntimeError(f"dilation search exceeded {budget} steps")
            v = compose(w, generator(n, i))
            if not is_dominant_within(v, d):
                continue
            mu = _apply_s(lam, i, n)
            if v in cores:
                assert cores[v] == mu, f"core label of {v} depends on the path"
                continue
            cores[v] = mu
            queue.append(v)
    out = [DilationAlcove(w, c, core_to_word(c, d, n - 1)) for w, c in cores.items()]
    return sorted(out, key=lambda a: (sum(a.core), a.core))


def dilation_cover_graph(alcoves: Sequence[DilationAlcove]) -> set[tuple[DilationAlcove, DilationAlcove]]:
    """Wall-crossing pairs (smaller core, larger core) among the given alcoves."""
    by_perm = {a.perm: a for a in alcoves}
    edges = set()
    for a in alcoves:
        n = a.perm.n
        for i in range(n):
            b = by_perm.get(compose(a.perm, generator(n, i)))
            if b is not None and sum(b.core) > sum(a.core):
                edges.add((a, b))
    return edges


# --- m-Shi arrangement ----------------------------------------------------------


def shi_hyperplanes(k: int, m: int) -> list[tuple[int, int, int]]:
    """(i, j, s) for x_i - x_j = s, 1 <= i < j <= k, -m+1 <= s <= m, lexicographic."""
    return [(i, j, s) for i, j in combinations(range(1, k + 1), 2) for s in range(-m + 1, m + 1)]


Signature = tuple[int, ...]


def shi_signature(pt: RationalPoint, k: int, m: int) -> Signature:
    """Sign (+1 / -1) of x_i - x_j - s for every Shi hyperplane."""
    out = []
    for i, j, s in shi_hyperplanes(k, m):
        v = pt[i - 1] - pt[j - 1] - s
        if v == 0:
            raise ValueError(f"point lies on x_{i} - x_{j} = {s}")
        out.append(1 if v > 0 else -1)
    return tuple(out)


def format_signature(sig: Signature) -> str:
    return "".join("+" if s > 0 else "-" for s in sig)


@dataclass(frozen=True)
class ShiRegion:
    signature: Signature
    minimal_alcove: AffinePermutation
    sample: RationalPoint


def region_count(k: int, m: int) -> int:
    return (k * m + 1) ** (k - 1)


def enumerate_regions(k: int, m: int, max_length: int = 200) -> list[ShiRegion]:
    """Shi regions with their minimal alcoves, found by BFS on alcove length.

    The search stops once every region has been seen and two further full
    length layers produce nothing new.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    expected = region_count(k, m)
    start = identity(k)
    seen = {start}
    layer = [start]
    regions: dict[Signature, ShiRegion] = {}
    quiet_layers = 0
    for _ in range(max_length + 1):
        fresh: dict[Signature, list[AffinePermutation]] = {}
        for w in layer:
            sig = shi_signature(alcove_sample(w), k, m)
            if sig not in regions:
                fresh.setdefault(sig, []).append(w)
        for sig, ws in fresh.items():
            assert len(ws) == 1, f"region {format_signature(sig)} has {len(ws)} minimal alcoves"
            regions[sig] = ShiRegion(sig, ws[0], alcove_sample(ws[0]))
        if len(regions) >= expected:
            quiet_layers = quiet_layers + 1 if not fresh else 0
            if quiet_layers > 2:
                break
        nxt = []
        for w in layer:
            for i in range(k):
                v = compose(w, generator(k, i))
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        layer = nxt
    else:
        raise RuntimeError(f"found {len(regions)} of {expected} regions within length {max_length}")
    if len(regions) != expected:
        raise RuntimeError(f"found {len(regions)} regions, expected {expected}")
    return sorted(regions.values(), key=lambda r: (length(r.minimal_alcove), r.minimal_alcove))


def fundamental_signature(k: int, m: int) -> Signature:
    return shi_signature(fundamental_point(k), k, m)


def pak_stanley(region: ShiRegion, k: int, m: int) -> tuple[int, ...]:
    """Count separating hyperplanes: s <= 0 credits coordinate j, s > 0 credits i."""
    label = [0] * k
    base = fundamental_signature(k, m)
    for (i, j, s), a, b in zip(shi_hyperplanes(k, m), region.signature, base):
        if a != b:
            label[(j if s <= 0 else i) - 1] += 1
    return tuple(label)


def is_parking(a: Sequence[int], m: int) -> bool:
    """Sorted increasingly, the i-th entry (1-indexed) is at most m(i-1)."""
    return all(0 <= b <= m * i for i, b in enumerate(sorted(a)))


def parking_functions(k: int, m: int) -> list[tuple[int, ...]]:
    return [a for a in product(range(m * (k - 1) + 1), repeat=k) if is_parking(a, m)]


def coset_parking(u: Word, m: int) -> tuple[int, ...]:
    """The unique parking function in u + Z(1, ..., 1), u over Z/(km+1)Z."""
    k = len(u)
    N = k * m + 1
    if u.modulus != N:
        raise ValueError(f"expected a word over Z/{N}Z, got modulus {u.modulus}")
    if u.total() != (k * m) % N:
        raise ValueError(f"{u} does not sum to {k * m} mod {N}")
    hits = []
    for c in range(N):
        v = tuple((a - c) % N for a in u.letters)
        if is_parking(v, m):
            hits.append(v)
    assert len(hits) == 1, f"coset of {u} holds {len(hits)} parking functions"
    return hits[0]


def _rotation_power(n: int, j: int) -> tuple[int, ...]:
    """Window of tau^j, tau = [2, 3, ..., n+1], which maps the fundamental alcove to itself."""
    return tuple(i + j for i in range(1, n + 1))


def translate(perm: AffinePermutation, t: Sequence[int]) -> AffinePermutation:
    """The element of the affine symmetric group whose alcove is alcove(perm) + t.

    When sum(t) is not 0 the bare translation is not in the group; the
    rotation tau^(-sum t), which fixes the fundamental alcove, corrects it.
    """
    n = perm.n
    shift_window = tuple(i + n * ti for i, ti in enumerate(t, 1))
    g = _compose_windows(shift_window, perm.window, n)
    g = _compose_windows(g, _rotation_power(n, -sum(t)), n)
    return AffinePermutation(n, g)


def _translation_candidates(k: int, bound: int):
    """Integer vectors modulo (1, ..., 1), represented with 0 <= sum < k."""
    for t in product(range(-bound, bound + 1), repeat=k):
        if 0 <= sum(t) < k:
            yield t


@dataclass(frozen=True)
class SommersTranslation:
    k: int
    m: int
    vector: tuple[int, ...]
    pairs: tuple[tuple[DilationAlcove, AffinePermutation], ...]  # dilation alcove -> minimal alcove


def sommers_translation(k: int, m: int) -> SommersTranslation:
    """Find t with {invert(alcove + t)} equal to the minimal alcoves of the m-Shi regions."""
    N = k * m + 1
    dilation = enumerate_dilation(k, N)
    minimal = {r.minimal_alcove for r in enumerate_regions(k, m)}
    found = []
    for t in _translation_candidates(k, N):
        images = [invert(translate(a.perm, t)) for a in dilation]
        if set(images) == minimal:
            found.append((t, images))
    if not found:
        raise RuntimeError(f"no translation in [-{N}, {N}]^{k} carries the dilation onto the minimal alcoves")
    assert len(found) == 1, f"translation not unique: {[t for t, _ in found]}"
    t, images = found[0]
    return SommersTranslation(k, m, t, tuple(zip(dilation, images)))


def fundamental_alcove_inside(trans: SommersTranslation) -> bool:
    """Every vertex of the closed fundamental alcove lies strictly inside the translated simplex."""
    k, d, t = trans.k, trans.k * trans.m + 1, trans.vector
    for ones in range(k):
        v = [1] * ones + [0] * (k - ones)
        y = [a - b for a, b in zip(v, t)]
        if not (all(y[i] > y[i + 1] for i in range(k - 1)) and y[0] - y[-1] < d):
            return False
    return True


def new_labeling(k: int, m: int, trans: SommersTranslation | None = None) -> dict[Signature, tuple[int, ...]]:
    """Region signature -> parking function from the coset of the dilation word."""
    trans = trans or sommers_translation(k, m)
    regions = {r.minimal_alcove: r for r in enumerate_regions(k, m)}
    labels = {}
    for alc, minimal in trans.pairs:
        u = w_map(alc.word)
        labels[regions[minimal].signature] = coset_parking(u, m)
    return labels


def parking_csp(k: int, m: int) -> CspReport:
    pfs = parking_functions(k, m)
    return csp_check(pfs, lambda a: a[1:] + a[:1], k, w_poly(k * m + 1, k - 1))

