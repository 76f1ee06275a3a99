from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bijaction import affine_shi as A
from bijaction.bijact import w_map
from bijaction.words import Word
from bijaction.xposet import phi, x_hasse

SHI_PAIRS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]


def gens(n):
    return [A.generator(n, i) for i in range(n)]


@pytest.mark.parametrize("n", range(3, 7))
def test_coxeter_relations(n):
    e = A.identity(n)
    s = gens(n)
    for i in range(n):
        assert A.compose(s[i], s[i]) == e
        for j in range(i + 1, n):
            st_ = A.compose(s[i], s[j])
            adjacent = (j - i) % n in (1, n - 1)
            order = 3 if adjacent else 2
            p = e
            for _ in range(order):
                p = A.compose(p, st_)
            assert p == e
            if order == 3:
                assert A.compose(s[i], s[j]) != A.compose(s[j], s[i])


def test_rank_two_generators_commute_freely():
    s0, s1 = gens(2)
    assert A.compose(s0, s0) == A.identity(2)
    # s0 s1 has infinite order
    p = A.identity(2)
    for _ in range(6):
        p = A.compose(p, A.compose(s0, s1))
        assert p != A.identity(2)


def test_invalid_windows():
    with pytest.raises(ValueError):
        A.AffinePermutation(3, (1, 1, 4))
    with pytest.raises(ValueError):
        A.AffinePermutation(3, (2, 3, 4))


def window(n):
    return st.lists(st.integers(0, n - 1), min_size=8, max_size=8).map(
        lambda idx: _word(n, idx)
    )


def _word(n, idx):
    p = A.identity(n)
    for i in idx:
        p = A.compose(p, A.generator(n, i))
    return p


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(window(n), window(n), st.lists(
    st.fractions(-3, 3, max_denominator=7), min_size=n, max_size=n))))
def test_action_axiom_and_inverse(data):
    u, v, coords = data
    pt = A.RationalPoint(tuple(coords))
    assert A.act(A.compose(u, v), pt) == A.act(u, A.act(v, pt))
    assert A.act(A.invert(u), A.act(u, pt)) == pt
    assert A.compose(u, A.invert(u)) == A.identity(u.n)


@given(st.integers(2, 5).flatmap(window))
def test_length_counts_separating_walls(u):
    n = u.n
    # a reduced path cannot be shorter than length; s_i changes length by exactly one
    for s in gens(n):
        assert abs(A.length(A.compose(u, s)) - A.length(u)) == 1


def test_length_by_bfs():
    n = 3
    dist = {A.identity(n): 0}
    q = deque([A.identity(n)])
    while q:
        w = q.popleft()
        if dist[w] >= 6:
            continue
        for s in gens(n):
            v = A.compose(w, s)
            if v not in dist:
                dist[v] = dist[w] + 1
                q.append(v)
    assert all(A.length(w) == d for w, d in dist.items())


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("d", range(1, 5))
def test_dilation_matches_x_poset(n, d):
    alcoves = A.enumerate_dilation(n, d)
    assert len(alcoves) == d ** (n - 1)
    edges = {(a.word, b.word) for a, b in A.dilation_cover_graph(alcoves)}
    assert edges == x_hasse(d, n - 1)
    for a in alcoves:
        assert A.is_dominant_within(a.perm, d)


@pytest.mark.parametrize("k,m", SHI_PAIRS)
def test_region_count_and_pak_stanley(k, m):
    regions = A.enumerate_regions(k, m)
    assert len(regions) == (k * m + 1) ** (k - 1)
    labels = [A.pak_stanley(r, k, m) for r in regions]
    assert sorted(labels) == sorted(A.parking_functions(k, m))


def _adjacent(sig_a, sig_b):
    return sum(a != b for a, b in zip(sig_a, sig_b)) == 1


@pytest.mark.parametrize("k,m", SHI_PAIRS)
def test_pak_stanley_matches_incremental_labeling(k, m):
    regions = A.enumerate_regions(k, m)
    hyps = A.shi_hyperplanes(k, m)
    base = A.fundamental_signature(k, m)
    start = next(r for r in regions if r.signature == base)
    label = {start.signature: (0,) * k}
    q = deque([start])
    while q:
        r = q.popleft()
        for other in regions:
            if other.signature in label or not _adjacent(r.signature, other.signature):
                continue
            h = next(idx for idx, (a, b) in enumerate(zip(r.signature, other.signature)) if a != b)
            i, j, s = hyps[h]
            # crossing away from the base region increments i if s > 0 else j
            assert other.signature[h] != base[h]
            new = list(label[r.signature])
            new[(i if s > 0 else j) - 1] += 1
            label[other.signature] = tuple(new)
            q.append(other)
    assert len(label) == len(regions)
    for r in regions:
        assert A.pak_stanley(r, k, m) == label[r.signature]


def test_is_parking():
    assert A.is_parking((0, 0), 1)
    assert A.is_parking((1, 0), 1)
    assert not A.is_parking((1, 1), 1)
    assert A.is_parking((0, 2), 2)
    assert not A.is_parking((0, 3), 2)
    assert len(A.parking_functions(3, 1)) == 16
    assert len(A.parking_functions(3, 2)) == 49


def test_coset_parking():
    assert A.coset_parking(Word.parse("003", 4), 1) == (1, 1, 0)
    assert A.coset_parking(Word.parse("030", 4), 1) == (1, 0, 1)
    assert A.coset_parking(Word.parse("20", 3), 1) == (0, 1)


@pytest.mark.parametrize("k,m", SHI_PAIRS)
def test_sommers_translation_and_new_labeling(k, m):
    trans = A.sommers_translation(k, m)
    assert 0 <= sum(trans.vector) < k
    assert A.fundamental_alcove_inside(trans)
    labels = A.new_labeling(k, m, trans)
    assert sorted(labels.values()) == sorted(A.parking_functions(k, m))
    ps = {r.signature: A.pak_stanley(r, k, m) for r in A.enumerate_regions(k, m)}
    assert set(labels) == set(ps)
    if (k, m) != (2, 1):
        assert labels != ps


def test_sum_zero_translations_fail_in_smallest_case():
    k, m = 2, 1
    N = k * m + 1
    dilation = A.enumerate_dilation(k, N)
    minimal = {r.minimal_alcove for r in A.enumerate_regions(k, m)}
    hits = []
    for t in A._translation_candidates(k, N):
        if sum(t) != 0:
            continue
        if {A.invert(A.translate(a.perm, t)) for a in dilation} == minimal:
            hits.append(t)
    assert hits == []


@pytest.mark.parametrize("k,m", SHI_PAIRS)
def test_coset_equivariance(k, m):
    N = k * m + 1
    for a in A.enumerate_dilation(k, N):
        u = w_map(a.word)
        v = w_map(phi(a.word))
        pu, pv = A.coset_parking(u, m), A.coset_parking(v, m)
        assert pv == pu[1:] + pu[:1]


@pytest.mark.parametrize("k,m", SHI_PAIRS)
def test_parking_csp(k, m):
    assert A.parking_csp(k, m).ok


def test_signature_rejects_wall_points():
    with pytest.raises(ValueError):
        A.shi_signature(A.RationalPoint((Fraction(1), Fraction(0))), 2, 1)
