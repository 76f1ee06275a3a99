"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline, or
``python3 tests/test_acceptance.py`` for a plain summary.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

from bijaction import affine_shi as A
from bijaction.bijact import (
    PartitionedWord,
    all_partitions_of,
    is_equitable,
    is_successful,
    q_map,
    q_trace,
    rightmost_equitable,
    successful_partition,
    successful_partition_trace,
    tree_rank,
    w_inverse,
    w_map,
)
from bijaction.cli import main as cli_main
from bijaction.cores import (
    abacus,
    boundary_word,
    core_to_word,
    enumerate_Y,
    maximal_stacks,
    rectangle_stack,
    y_hasse,
)
from bijaction.sieve import csp_check, w_poly
from bijaction.words import Word, all_words, enumerate_W, rotate_left, rotation_orbits
from bijaction.xposet import PREDICTED_IMAGE_TYPE, check_phi_graph_automorphism, classify_edges, phi, x_hasse

GOLDEN = Path(__file__).parent / "golden"
DESK_PAIRS = [(m, k) for m in range(1, 7) for k in range(1, 7) if m**k <= 50000]


def _report(n: int, ok: bool, elapsed: float, limit: float | None, detail: str = "") -> None:
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:.0f} s)" if limit else ""
    line = f"criterion {n:2d}: {status}  {elapsed:7.2f} s{budget}  {detail}".rstrip()
    with _CAPSYS[0].disabled():
        print("\n" + line, flush=True)
    assert ok, detail
    assert within, f"took {elapsed:.1f} s, limit {limit} s"


_CAPSYS = [None]


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    _CAPSYS[0] = capsys
    yield


def _timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, time.perf_counter() - t0, detail


def W(s, m=4):
    return Word.parse(s, m)


# 1 -----------------------------------------------------------------------------

W_ORBITS_M4_K2 = [
    ("003", "030", "300"), ("133", "331", "313"), ("012", "120", "201"),
    ("102", "021", "210"), ("223", "232", "322"), ("111",),
]


def _orbit_table():
    orbits = rotation_orbits(4, 2)
    sizes = sorted(len(o) for o in orbits)
    want = {frozenset(W(s) for s in row) for row in W_ORBITS_M4_K2}
    have = {frozenset(o) for o in orbits}
    # image of each phi-orbit under w_map is one rotation orbit
    images = set()
    for x in all_words(4, 2):
        orb = {x}
        y = phi(x)
        while y != x:
            orb.add(y)
            y = phi(y)
        images.add(frozenset(w_map(z) for z in orb))
    ok = sizes == [1, 3, 3, 3, 3, 3] and have == want and images == want
    return ok, f"orbit sizes {sizes}"


def test_criterion_01_orbit_table():
    ok, t, d = _timed(_orbit_table)
    _report(1, ok, t, 1.0, d)


# 2 -----------------------------------------------------------------------------


def _csp():
    bad = []
    for m, k in DESK_PAIRS:
        rep = csp_check(enumerate_W(m, k), rotate_left, k + 1, w_poly(m, k))
        if not rep.ok:
            bad.append((m, k, [r.c for r in rep.mismatches]))
    return not bad, f"{len(DESK_PAIRS)} (m,k) pairs, mismatches {bad}"


def test_criterion_02_csp():
    ok, t, d = _timed(_csp)
    _report(2, ok, t, 60.0, d)


# 3 -----------------------------------------------------------------------------


def _round_trip():
    failures = 0
    count = 0
    for m, k in DESK_PAIRS:
        for x in all_words(m, k):
            count += 1
            if w_inverse(w_map(x)) != x:
                failures += 1
        for u in enumerate_W(m, k):
            count += 1
            if w_map(w_inverse(u)) != u:
                failures += 1
    return failures == 0, f"{count} checks, {failures} failures"


def test_criterion_03_round_trip():
    ok, t, d = _timed(_round_trip)
    _report(3, ok, t, 120.0, d)


# 4 -----------------------------------------------------------------------------


def _equivariance():
    failures = 0
    count = 0
    for m, k in DESK_PAIRS:
        for x in all_words(m, k):
            count += 1
            if w_map(phi(x)) != rotate_left(w_map(x)):
                failures += 1
    return failures == 0, f"{count} words, {failures} failures"


def test_criterion_04_equivariance():
    ok, t, d = _timed(_equivariance)
    _report(4, ok, t, None, d)


# 5 -----------------------------------------------------------------------------

READ_OFF_ROWS = [
    (1, 0, "3|2|1|0302", "·"), (2, 3, "·|2|1|0302", "3"), (3, 3, "·|2|1|302", "33"),
    (4, 2, "·|2|1|02", "332"), (5, 3, "·|2|·|02", "3323"), (6, 3, "·|2|·|2", "33233"),
    (7, 1, "·|2|·|·", "332331"), (8, 3, "·|·|·|·", "3323313"),
]
PARTITION_STATES = [
    ("3210|30|2|·", "210|30|2|·"), ("3|210|30|2", "·|10|30|·"),
    ("3|2|10|302", "·|·|0|·"), ("3|2|1|0302", "·|·|·|·"),
]


def _cli_output(*args):
    import io
    import contextlib

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(list(args))
    return code, buf.getvalue()


def _traces():
    steps, x, rest = q_trace(PartitionedWord.parse("3|2|1|0302", 4))
    read_rows = [(i, s.t, str(s.state), "".join(map(str, s.trace)) or "·") for i, s in enumerate(steps, 1)]
    state_rows = [(str(a), str(b)) for a, b in successful_partition_trace(W("3210302"))]
    code, out = _cli_output("invert", "--m", "4", "3210302")
    golden = (GOLDEN / "invert_m4_3210302.txt").read_text(encoding="utf-8")
    ok = (
        read_rows == READ_OFF_ROWS and str(x) == "3323313" and len(rest) == 0
        and state_rows == PARTITION_STATES and code == 0 and out == golden
    )
    return ok, f"read-off rows {len(read_rows)}, partition states {len(state_rows)}, golden {'match' if out == golden else 'DIFF'}"


def test_criterion_05_traces():
    ok, t, d = _timed(_traces)
    _report(5, ok, t, None, d)


# 6 -----------------------------------------------------------------------------


def _dendro():
    checked = []
    bad = []
    for m in range(1, 5):
        r = 0
        # m = 1 has one word per rank; stop it at a modest depth
        while m**r <= 50000 and (m > 1 or r <= 12):
            rank = tree_rank(m, r)
            words = [p.word for p in rank]
            if len(words) != m**r or len(set(words)) != len(words):
                bad.append((m, r))
            checked.append((m, r))
            r += 1
    return not bad, f"{len(checked)} (m,rank) pairs, failures {bad}"


def test_criterion_06_tree_distinct():
    ok, t, d = _timed(_dendro)
    _report(6, ok, t, None, d)


# 7 -----------------------------------------------------------------------------


def _uniqueness():
    words = 0
    bad = []
    for m in range(1, 5):
        for n in range(0, 8):
            for w in all_words(m, n):
                words += 1
                parts = all_partitions_of(w)
                succ = [p for p in parts if is_successful(p)]
                right = rightmost_equitable(w)
                dominant = all(
                    all(a >= b for a, b in zip(right.dividers, p.dividers)) for p in parts if is_equitable(p)
                )
                if len(succ) != 1 or succ[0] != successful_partition(w) or not dominant:
                    bad.append(str(w))
    return not bad, f"{words} words, failures {bad[:5]}"


def test_criterion_07_uniqueness_oracle():
    ok, t, d = _timed(_uniqueness)
    _report(7, ok, t, 300.0, d)


# 8 -----------------------------------------------------------------------------

CORE_EXAMPLES = [
    ((3, 1), "011010000", ["011", "010", "000"], "21", "3_1"),
    ((2, 1, 1), "010010000", ["010", "010", "000"], "20", "2_1_1"),
    ((4, 2, 1, 1), "011010010", ["011", "010", "010"], "31", "4_2_1_1"),
]


def _core_model():
    ok = True
    for core, bw, rows, word, tag in CORE_EXAMPLES:
        ok &= boundary_word(core, 4, 2) == bw and abacus(bw, 2) == rows
        ok &= str(core_to_word(core, 4, 2)) == word
        code, out = _cli_output("map", "--m", "4", "--k", "2", "--core", ",".join(map(str, core)))
        ok &= code == 0 and out == (GOLDEN / f"map_m4_k2_core_{tag}.txt").read_text(encoding="utf-8")
    stacks = {rectangle_stack(2, I) for I in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2)]}
    want = {(3, 3, 2, 2, 1, 1), (4, 2, 2, 1, 1), (5, 3, 1, 1), (6, 4, 2)}
    ok &= stacks == want and set(maximal_stacks(4, 2)) == want
    return ok, "three cores, four maximal stacks"


def test_criterion_08_core_model():
    ok, t, d = _timed(_core_model)
    _report(8, ok, t, None, d)


# 9 -----------------------------------------------------------------------------


def _posets():
    bad = []
    for m in range(1, 5):
        for k in range(1, 5):
            xs = x_hasse(m, k)
            ys = enumerate_Y(m, k)
            img = {(core_to_word(a, m, k), core_to_word(b, m, k)) for a, b in y_hasse(m, k)}
            alc = A.enumerate_dilation(k + 1, m)
            # the carried word labels give an explicit isomorphism onto X
            dil = {(a.word, b.word) for a, b in A.dilation_cover_graph(alc)}
            if len(ys) != m**k or img != xs or dil != xs or len({a.word for a in alc}) != m**k:
                bad.append((m, k))
    return not bad, f"16 (m,k) pairs, failures {bad}"


def test_criterion_09_poset_isomorphisms():
    ok, t, d = _timed(_posets)
    _report(9, ok, t, None, d)


# 10 ----------------------------------------------------------------------------


def _phi_symmetry():
    bad = []
    edges = 0
    for m in range(1, 6):
        for k in range(1, 6):
            if not check_phi_graph_automorphism(m, k):
                bad.append((m, k, "automorphism"))
            for lo, hi, case, img in classify_edges(m, k):
                edges += 1
                if PREDICTED_IMAGE_TYPE[case] not in img:
                    bad.append((m, k, str(lo), str(hi)))
    return not bad, f"{edges} edges classified, failures {bad[:5]}"


def test_criterion_10_phi_symmetry():
    ok, t, d = _timed(_phi_symmetry)
    _report(10, ok, t, None, d)


# 11 ----------------------------------------------------------------------------

SHI_PAIRS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]


def _shi():
    bad = []
    for k, m in SHI_PAIRS:
        regions = A.enumerate_regions(k, m)
        pfs = sorted(A.parking_functions(k, m))
        if len(regions) != (k * m + 1) ** (k - 1):
            bad.append((k, m, "count"))
        if sorted(A.pak_stanley(r, k, m) for r in regions) != pfs:
            bad.append((k, m, "pak-stanley"))
        trans = A.sommers_translation(k, m)
        if not A.fundamental_alcove_inside(trans):
            bad.append((k, m, "translation"))
        labels = A.new_labeling(k, m, trans)
        if sorted(labels.values()) != pfs or len(labels) != len(regions):
            bad.append((k, m, "new labeling"))
        for a in A.enumerate_dilation(k, k * m + 1):
            pu = A.coset_parking(w_map(a.word), m)
            if A.coset_parking(w_map(phi(a.word)), m) != pu[1:] + pu[:1]:
                bad.append((k, m, "equivariance"))
                break
        if not A.parking_csp(k, m).ok:
            bad.append((k, m, "csp"))
    return not bad, f"{len(SHI_PAIRS)} (k,m) pairs, failures {bad}"


def test_criterion_11_shi():
    ok, t, d = _timed(_shi)
    _report(11, ok, t, 300.0, d)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
