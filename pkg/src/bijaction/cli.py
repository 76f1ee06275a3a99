"""Command line front end. Every command is deterministic: equal arguments give
byte-identical output."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import affine_shi as shi
from .bijact import (
    PartitionedWord,
    q_trace,
    successful_partition_trace,
    tree_rank,
    w_inverse,
    w_map,
)
from .cores import (
    abacus,
    boundary_word,
    core_to_word,
    format_partition,
    is_core,
    parse_partition,
    word_to_core,
    y_hasse,
)
from .sieve import csp_check, w_poly
from .words import Word, enumerate_W, format_letters, rotate_left
from .xposet import edges_to_json, extended_word, phi, phi_orbits, to_dot, x_hasse

DESK_LIMIT = 50000
SHI_LIMIT = 2500

FORMATS = {
    "orbits": ("table", "json", "csv"),
    "csp": ("table", "json"),
    "map": ("table", "json"),
    "invert": ("table", "json"),
    "tree": ("table", "json"),
    "hasse": ("dot", "json"),
    "shi": ("table", "csv", "json"),
    "parking-csp": ("table", "json"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    m: int | None = None
    k: int | None = None
    format: str | None = None
    force: bool = False
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def fmt(self) -> str:
        allowed = FORMATS[self.command]
        f = self.format or allowed[0]
        if f not in allowed:
            raise UsageError(f"{self.command} supports --format {', '.join(allowed)}, not {f}")
        return f


def _need(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"{cfg.command} requires --{name}")
    if cfg.m is not None and cfg.m < 1:
        raise UsageError("--m must be >= 1")
    if cfg.k is not None and cfg.k < 0:
        raise UsageError("--k must be >= 0")


def _guard(cfg: RunConfig, size: int, limit: int, what: str) -> None:
    if size > limit and not cfg.force:
        raise UsageError(f"{what} has {size} elements (limit {limit}); pass --force to run anyway")


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# --- commands -----------------------------------------------------------------


def cmd_orbits(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m", "k")
    m, k = cfg.m, cfg.k
    if k < 1:
        raise UsageError("orbits requires --k >= 1")
    _guard(cfg, m**k, DESK_LIMIT, f"X_{m}^{k}")
    orbits = phi_orbits(m, k)
    data = []
    for orb in orbits:
        data.append({
            "x": [str(x) for x in orb],
            "extended": [str(extended_word(x)) for x in orb],
            "w": [str(w_map(x)) for x in orb],
        })
    fmt = cfg.fmt()
    if fmt == "json":
        return _json({"m": m, "k": k, "orbits": data}), 0
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["orbit", "x", "extended", "w"])
        for i, row in enumerate(data):
            for x, e, w in zip(row["x"], row["extended"], row["w"]):
                wr.writerow([i, x, e, w])
        return buf.getvalue(), 0
    sizes = sorted(len(o) for o in orbits)
    lines = [f"# m={m} k={k}: {len(orbits)} orbits, sizes {' '.join(map(str, sizes))}"]
    for row in data:
        lines.append(" | ".join(row["extended"]) + " || " + " ".join(row["w"]))
    return "\n".join(lines) + "\n", 0


def cmd_csp(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m", "k")
    m, k = cfg.m, cfg.k
    _guard(cfg, m**k, DESK_LIMIT, f"W_{m}^{k}")
    report = csp_check(enumerate_W(m, k), rotate_left, k + 1, w_poly(m, k))
    status = 0 if report.ok else 1
    if cfg.fmt() == "json":
        return report.to_json() + "\n", status
    head = f"# W_{m}^{k} under rotation, n={k + 1}, {'all rows match' if report.ok else 'MISMATCH'}\n"
    return head + report.to_table() + "\n", status


def _map_record(x: Word, m: int, k: int) -> dict:
    core = word_to_core(x, m, k)
    bw = boundary_word(core, m, k)
    rows = abacus(bw, k)
    rec = {
        "x": str(x),
        "core": format_partition(core),
        "boundary": "|".join(rows),
        "abacus": rows,
        "w": str(w_map(x)) if k >= 1 else str(Word(m, (m - 1,))),
        "phi": str(phi(x)),
    }
    alcoves = {a.core: a for a in shi.enumerate_dilation(k + 1, m)} if k >= 1 else {}
    if core in alcoves:
        rec["alcove"] = str(alcoves[core].perm)
    return rec


def cmd_map(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m", "k")
    m, k = cfg.m, cfg.k
    _guard(cfg, m**k, DESK_LIMIT, f"X_{m}^{k}")
    ex = cfg.extra
    given = [key for key in ("word", "core", "w_word", "window") if ex.get(key)]
    if len(given) != 1:
        raise UsageError("map takes exactly one of --word, --core, --w-word, --window")
    key = given[0]
    try:
        if key == "word":
            x = Word.parse(ex["word"], m)
            if len(x) != k:
                raise UsageError(f"--word must have length k={k}")
        elif key == "core":
            core = parse_partition(ex["core"])
            if not is_core(core, k + 1):
                raise UsageError(f"{format_partition(core)} is not a {k + 1}-core")
            x = core_to_word(core, m, k)
        elif key == "w_word":
            u = Word.parse(ex["w_word"], m)
            if len(u) != k + 1:
                raise UsageError(f"--w-word must have length k+1={k + 1}")
            x = w_inverse(u)
        else:
            window = tuple(int(a) for a in ex["window"].strip("[]").split(","))
            perm = shi.AffinePermutation(k + 1, window)
            hits = [a for a in shi.enumerate_dilation(k + 1, m) if a.perm == perm]
            if not hits:
                raise UsageError(f"{perm} is not an alcove of the {m}-fold dilation")
            x = hits[0].word
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rec = _map_record(x, m, k)
    if cfg.fmt() == "json":
        return _json(rec), 0
    lines = [
        f"x word:   {rec['x']}",
        f"core:     {rec['core']}",
        f"boundary: {rec['boundary']}",
        "abacus:",
        *("  " + r for r in rec["abacus"]),
        f"W word:   {rec['w']}",
        f"phi(x):   {rec['phi']}",
    ]
    if "alcove" in rec:
        lines.append(f"alcove:   {rec['alcove']}")
    return "\n".join(lines) + "\n", 0


def cmd_invert(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m")
    m = cfg.m
    try:
        w = Word.parse(cfg.extra["word"], m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    trace = successful_partition_trace(w)
    final = trace[-1][0]
    steps, x, _ = q_trace(final)
    in_W = w.total() == (m - 1) % m
    preimage = str(w_inverse(w)) if in_W and len(w) else None
    if cfg.fmt() == "json":
        return _json({
            "word": str(w),
            "successful_partition": [{"partition": str(a), "remainder": str(b)} for a, b in trace],
            "read_off": [
                {"i": i, "t": s.t, "state": str(s.state), "x": format_letters(s.trace, m) or "·"}
                for i, s in enumerate(steps, 1)
            ],
            "x": str(x),
            "preimage": preimage,
        }), 0
    out = [f"# successful partition of {w} (m={m})"]
    out.append(_table(["partition", "remainder"], [[str(a), str(b)] for a, b in trace]))
    out.append(f"# read-off of {final}")
    out.append(_table(
        ["i", "t", "(w,b)", "x"],
        [[str(i), str(s.t), str(s.state), format_letters(s.trace, m) or "·"] for i, s in enumerate(steps, 1)],
    ))
    if preimage is not None:
        out.append(f"preimage in X_{m}^{len(w) - 1}: {preimage}\n")
    return "\n".join(out), 0


def cmd_tree(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m")
    m = cfg.m
    rank = cfg.extra.get("rank")
    if rank is None:
        rank = cfg.k
    if rank is None or rank < 0:
        raise UsageError("tree requires --rank (or --k) >= 0")
    _guard(cfg, m**rank, DESK_LIMIT, f"rank {rank} of the tree")
    ranks = [[str(pw) for pw in tree_rank(m, r)] for r in range(rank + 1)]
    if cfg.fmt() == "json":
        return _json({"m": m, "ranks": ranks}), 0
    return "".join(f"{r}: {'  '.join(row)}\n" for r, row in enumerate(ranks)), 0


def cmd_hasse(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m", "k")
    m, k = cfg.m, cfg.k
    _guard(cfg, m**k, DESK_LIMIT, f"X_{m}^{k}")
    poset = cfg.extra.get("poset") or "x"
    if poset == "x":
        edges, label, name = x_hasse(m, k), str, "X"
    elif poset == "y":
        edges, label, name = y_hasse(m, k), format_partition, "Y"
    elif poset == "dilation":
        if k < 1:
            raise UsageError("dilation needs --k >= 1")
        edges = shi.dilation_cover_graph(shi.enumerate_dilation(k + 1, m))
        label, name = (lambda a: str(a.perm)), "Z"
    else:
        raise UsageError(f"unknown poset {poset!r}")
    if cfg.fmt() == "json":
        return _json({"poset": poset, "m": m, "k": k, "edges": edges_to_json(edges, label)}), 0
    return to_dot(edges, name, label), 0


def _fmt_tuple(t) -> str:
    return "".join(str(a) for a in t) if max(t, default=0) < 10 else ",".join(str(a) for a in t)


def cmd_shi(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m", "k")
    k, m = cfg.k, cfg.m
    if k < 2:
        raise UsageError("shi requires --k >= 2")
    _guard(cfg, shi.region_count(k, m), SHI_LIMIT, f"the {m}-Shi arrangement in rank {k}")
    regions = shi.enumerate_regions(k, m)
    trans = shi.sommers_translation(k, m)
    coset = shi.new_labeling(k, m, trans)
    rows = []
    for idx, r in enumerate(regions):
        rows.append({
            "region_id": idx,
            "signature": shi.format_signature(r.signature),
            "minimal_alcove": str(r.minimal_alcove),
            "pak_stanley": _fmt_tuple(shi.pak_stanley(r, k, m)),
            "coset_label": _fmt_tuple(coset[r.signature]),
        })
    fmt = cfg.fmt()
    if fmt == "json":
        return _json({"k": k, "m": m, "translation": list(trans.vector), "regions": rows}), 0
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        wr.writeheader()
        wr.writerows(rows)
        return buf.getvalue(), 0
    head = f"# {len(rows)} regions, hyperplane order (i,j,s) lexicographic, translation {list(trans.vector)}\n"
    return head + _table(list(rows[0]), [[str(v) for v in r.values()] for r in rows]), 0


def cmd_parking_csp(cfg: RunConfig) -> tuple[str, int]:
    _need(cfg, "m", "k")
    k, m = cfg.k, cfg.m
    if k < 1:
        raise UsageError("parking-csp requires --k >= 1")
    _guard(cfg, (k * m + 1) ** max(k - 1, 0), DESK_LIMIT, "the parking functions")
    report = shi.parking_csp(k, m)
    status = 0 if report.ok else 1
    if cfg.fmt() == "json":
        return report.to_json() + "\n", status
    head = f"# {m}-parking functions of length {k} under rotation, n={k}\n"
    return head + report.to_table() + "\n", status


COMMANDS: dict[str, Callable[[RunConfig], tuple[str, int]]] = {
    "orbits": cmd_orbits,
    "csp": cmd_csp,
    "map": cmd_map,
    "invert": cmd_invert,
    "tree": cmd_tree,
    "hasse": cmd_hasse,
    "shi": cmd_shi,
    "parking-csp": cmd_parking_csp,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    text, status = COMMANDS[cfg.command](cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--format")
    common.add_argument("--force", action="store_true", help="lift the desk-scale size guard")
    common.add_argument("--out", metavar="FILE")

    parser = argparse.ArgumentParser(prog="bijaction", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("orbits", parents=[common], help="phi-orbits of X with extended words and W images")
    sub.add_parser("csp", parents=[common], help="exact cyclic sieving check on W_m^k")
    p = sub.add_parser("map", parents=[common], help="convert between word, core, W word and alcove")
    p.add_argument("--word")
    p.add_argument("--core")
    p.add_argument("--w-word", dest="w_word")
    p.add_argument("--window")
    p = sub.add_parser("invert", parents=[common], help="successful partition and read-off of a word")
    p.add_argument("word")
    p = sub.add_parser("tree", parents=[common], help="ranks of the tree of successful partitioned words")
    p.add_argument("--rank", type=int)
    p = sub.add_parser("hasse", parents=[common], help="Hasse diagram of X, Y or the dilation")
    p.add_argument("--poset", choices=("x", "y", "dilation"), default="x")
    sub.add_parser("shi", parents=[common], help="m-Shi regions with both parking labelings")
    sub.add_parser("parking-csp", parents=[common], help="cyclic sieving on m-parking functions")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    extra = {k: v for k, v in vars(args).items() if k not in ("command", "m", "k", "format", "force", "out")}
    cfg = RunConfig(args.command, args.m, args.k, args.format, args.force, args.out, extra)
    try:
        return run(cfg)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
