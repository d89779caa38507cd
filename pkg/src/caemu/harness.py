"""Parallel search orchestration with a journal and a cell checkpoint.

A search job is a grid of (rule, block size) cells, each a pure function
of its inputs.  Workers stream finished cells into an append-only JSONL
journal; a small binary checkpoint records which cells are complete.
The journal line is written before the checkpoint entry, so a crash
between the two only costs a recomputation, never a record.  Final
outputs are produced by one deterministic sort-merge pass, which makes
them byte-identical across worker counts and across kill-and-resume
runs.
"""

from __future__ import annotations

import json
import os
import struct
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path

from .engine import RuleSpec
from .network import CSV_HEADER, records_from_csv
from .rulespace import SPACES, essential_rules
from .search import search_emulations

WORKERS_ENV = "CAEMU_WORKERS"
CHECKPOINT_MAGIC = b"CAEMU-CKPT\x01"


class CheckpointError(RuntimeError):
    """Checkpoint file exists but cannot be trusted."""


@dataclass(frozen=True)
class SearchJob:
    space: str
    rules: object = "all"  # "all", "essential", or an iterable of rule numbers
    k_range: tuple = (2, 3)
    workers: int = 1
    checkpoint_path: str = None
    output_path: str = None

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown rule space {self.space!r}")
        lo, hi = self.k_range
        if lo > hi or lo < 1:
            raise ValueError(f"empty or invalid block size range {self.k_range}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def rule_numbers(self) -> tuple:
        colors, template = SPACES[self.space]
        if self.rules == "all":
            return tuple(range(colors ** colors ** len(template)))
        if self.rules == "essential":
            return essential_rules(self.space)
        return tuple(sorted(set(int(r) for r in self.rules)))

    def cells(self) -> tuple:
        lo, hi = self.k_range
        return tuple(
            (rule, k) for rule in self.rule_numbers() for k in range(lo, hi + 1)
        )


@dataclass(frozen=True)
class SearchSummary:
    records: int
    cells_completed: int
    cells_skipped: int
    wall_time: float
    output_path: str = None


def resolve_workers(requested: int, config: dict = None) -> int:
    """Worker count: environment beats config beats the job field."""
    env = os.environ.get(WORKERS_ENV)
    if env is not None:
        return max(1, int(env))
    if config and "workers" in config:
        return max(1, int(config["workers"]))
    return max(1, requested)


def load_config(path) -> dict:
    """Plain key=value pairs; blank lines and # comments ignored."""
    config = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        config[key.strip()] = value.strip()
    return config


def journal_path(checkpoint_path) -> Path:
    return Path(str(checkpoint_path) + ".journal")


def read_checkpoint(path) -> set:
    """Completed (rule, k) cells; raises :class:`CheckpointError` on damage."""
    path = Path(path)
    data = path.read_bytes()
    if not data.startswith(CHECKPOINT_MAGIC):
        raise CheckpointError(f"{path}: bad magic; not a checkpoint file")
    body = data[len(CHECKPOINT_MAGIC):]
    if len(body) < 4:
        raise CheckpointError(f"{path}: truncated header")
    (count,) = struct.unpack("<I", body[:4])
    cells_blob = body[4:]
    if len(cells_blob) != 8 * count:
        raise CheckpointError(
            f"{path}: cell table length {len(cells_blob)} does not match count {count}"
        )
    cells = set()
    for i in range(count):
        rule, k = struct.unpack_from("<II", cells_blob, 8 * i)
        cells.add((rule, k))
    return cells


def write_checkpoint(path, cells) -> None:
    ordered = sorted(cells)
    blob = CHECKPOINT_MAGIC + struct.pack("<I", len(ordered))
    blob += b"".join(struct.pack("<II", rule, k) for rule, k in ordered)
    tmp = Path(str(path) + ".tmp")
    tmp.write_bytes(blob)
    os.replace(tmp, path)


def _record_row(rec) -> list:
    return [
        rec.emulator,
        rec.emulated,
        rec.block_size,
        rec.projection.code(0),
        rec.projection.code(1),
        rec.status,
    ]


def _search_cell(args) -> tuple:
    space, rule, k = args
    colors, template = SPACES[space]
    spec = RuleSpec(colors, template, rule)
    rows = [_record_row(rec) for rec in search_emulations(spec, k)]
    return rule, k, rows


def _read_journal(path) -> dict:
    """Cell -> rows; later duplicate lines for a cell win (identical anyway)."""
    cells = {}
    if not Path(path).exists():
        return cells
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            entry = json.loads(line)
            cells[(entry["rule"], entry["k"])] = entry["records"]
    return cells


def _rows_to_csv_text(rows) -> str:
    lines = [",".join(CSV_HEADER)]
    for row in rows:
        emulator, emulated, k, code0, code1, status = row
        emulated = "" if emulated is None else emulated
        lines.append(f"{emulator},{emulated},{k},{code0},{code1},{status}")
    return "\n".join(lines) + "\n"


def run_search(job: SearchJob, config: dict = None, progress=None) -> SearchSummary:
    """Run (or resume) a search grid; see the module docstring.

    ``progress`` may be a callable taking (done, total); it is invoked
    from the scheduler only.
    """
    t0 = time.monotonic()
    workers = resolve_workers(job.workers, config)
    grid = job.cells()
    completed = set()
    rows_by_cell = {}
    if job.checkpoint_path and Path(job.checkpoint_path).exists():
        completed = read_checkpoint(job.checkpoint_path)
        journal = _read_journal(journal_path(job.checkpoint_path))
        missing = completed - set(journal)
        if missing:
            raise CheckpointError(
                f"{job.checkpoint_path}: {len(missing)} completed cells missing "
                f"from the journal, e.g. {sorted(missing)[:3]}"
            )
        rows_by_cell = {cell: journal[cell] for cell in completed}
    todo = [cell for cell in grid if cell not in completed]
    done = len(grid) - len(todo)
    skipped = done
    if progress:
        progress(done, len(grid))

    def finish(rule, k, rows):
        nonlocal done
        rows_by_cell[(rule, k)] = rows
        if job.checkpoint_path:
            with open(journal_path(job.checkpoint_path), "a") as fh:
                fh.write(json.dumps({"rule": rule, "k": k, "records": rows}) + "\n")
            completed.add((rule, k))
            write_checkpoint(job.checkpoint_path, completed)
        done += 1
        if progress:
            progress(done, len(grid))

    if todo:
        args = [(job.space, rule, k) for rule, k in todo]
        if workers == 1:
            for a in args:
                finish(*_search_cell(a))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_search_cell, a) for a in args]
                for fut in as_completed(futures):
                    finish(*fut.result())

    merged = []
    for cell in sorted(rows_by_cell):
        merged.extend(rows_by_cell[cell])
    merged.sort(key=lambda r: (r[0], r[1] if r[1] is not None else -1, r[2], r[3], r[4]))
    n_records = len(merged)
    if job.output_path:
        Path(job.output_path).write_text(_rows_to_csv_text(merged))
    return SearchSummary(
        records=n_records,
        cells_completed=len(grid) - skipped,
        cells_skipped=skipped,
        wall_time=time.monotonic() - t0,
        output_path=job.output_path,
    )


def load_records(path):
    """Records back from a search output CSV."""
    return records_from_csv(Path(path).read_text())


def _hamming(a: str, b: str) -> int:
    return sum(x != y for x, y in zip(a, b))


def _compiler_code(rec) -> str:
    return rec.projection.code(0) + rec.projection.code(1)


def _bit_entropy(code: str) -> float:
    import math

    ones = code.count("1")
    n = len(code)
    if ones in (0, n):
        return 0.0
    p = ones / n
    return -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


def _code_nc(code: str) -> float:
    from .compressor import compressed_size_bits

    bits = len(code)
    packed = int(code, 2).to_bytes((bits + 7) // 8, "big") if bits else b""
    return min(1.0, compressed_size_bits(packed) / bits)


def report_ranking(records, out_dir, nontrivial: bool = False) -> list:
    from .network import build_network, ranking_csv

    out = Path(out_dir) / "ranking.csv"
    out.write_text(ranking_csv(build_network(records, nontrivial=nontrivial)))
    return [out]


def report_network(records, out_dir, profiles=None, nontrivial: bool = False) -> list:
    from .network import build_network, records_to_csv, to_dot, to_graphml

    net = build_network(records, nontrivial=nontrivial, profiles=profiles)
    out_dir = Path(out_dir)
    paths = []
    for name, text in (
        ("network.dot", to_dot(net)),
        ("network.graphml", to_graphml(net)),
        ("records.csv", records_to_csv(records)),
    ):
        path = out_dir / name
        path.write_text(text)
        paths.append(path)
    return paths


def report_degree(records, profiles, out_dir, nontrivial: bool = False) -> list:
    from .network import build_network, degree_csv

    net = build_network(records, nontrivial=nontrivial)
    out_dir = Path(out_dir)
    paths = []
    for direction in ("in", "out"):
        path = out_dir / f"degree_{direction}.csv"
        path.write_text(degree_csv(net, profiles, direction))
        paths.append(path)
    return paths


def report_frequency_curves(records, out_dir, profiles=None) -> list:
    """Data series behind the frequency figures.

    cumulative.csv: distinct emulator rules with at least one record of
    block size <= k.  collapsed.csv: per block size, all-projection
    record counts next to distinct (emulator, emulated) pair counts.
    groups.csv (with profiles): record counts per block size per the
    emulator's class label.
    """
    records = tuple(records)
    out_dir = Path(out_dir)
    ks = sorted({r.block_size for r in records})
    paths = []

    lines = ["k,emulating_rules"]
    for k in ks:
        rules = {r.emulator for r in records if r.block_size <= k}
        lines.append(f"{k},{len(rules)}")
    path = out_dir / "cumulative.csv"
    path.write_text("\n".join(lines) + "\n")
    paths.append(path)

    lines = ["k,non_collapsed,collapsed"]
    for k in ks:
        at_k = [r for r in records if r.block_size == k]
        pairs = {(r.emulator, r.emulated) for r in at_k}
        lines.append(f"{k},{len(at_k)},{len(pairs)}")
    path = out_dir / "collapsed.csv"
    path.write_text("\n".join(lines) + "\n")
    paths.append(path)

    if profiles is not None:
        counts = {}
        for r in records:
            label = profiles[r.emulator].class_label
            counts[(r.block_size, label)] = counts.get((r.block_size, label), 0) + 1
        lines = ["k,class_label,records"]
        for (k, label), n in sorted(counts.items(), key=lambda i: (i[0][0], str(i[0][1]))):
            lines.append(f"{k},{label},{n}")
        path = out_dir / "groups.csv"
        path.write_text("\n".join(lines) + "\n")
        paths.append(path)
    return paths


def report_compiler_stats(records, out_dir, profiles=None) -> list:
    """Per-compiler measurements and equal-k pairwise distance histograms.

    compilers.csv has one row per record: the Hamming distance between
    its two code blocks, plus entropy and compression of the
    concatenated code (the compiler itself viewed as data).
    distance_hist.csv aggregates pairwise Hamming distances between
    compilers of equal block size into (k, distance) counts; raw pair
    lists grow quadratically and add nothing over the histogram.
    """
    records = tuple(records)
    out_dir = Path(out_dir)
    paths = []

    lines = ["emulator,emulated,k,block_hamming,compiler_entropy,compiler_nc"]
    for r in records:
        dist = _hamming(r.projection.code(0), r.projection.code(1))
        code = _compiler_code(r)
        lines.append(
            f"{r.emulator},{r.emulated},{r.block_size},{dist},"
            f"{_bit_entropy(code):.6f},{_code_nc(code):.6f}"
        )
    path = out_dir / "compilers.csv"
    path.write_text("\n".join(lines) + "\n")
    paths.append(path)

    by_k = {}
    for r in records:
        by_k.setdefault(r.block_size, []).append(_compiler_code(r))
    lines = ["k,distance,pairs"]
    for k in sorted(by_k):
        codes = sorted(by_k[k])
        if len(codes) > 1500:  # quadratic; thin deterministically
            stride = -(-len(codes) // 1500)
            codes = codes[::stride]
        hist = {}
        for i in range(len(codes)):
            for j in range(i + 1, len(codes)):
                d = _hamming(codes[i], codes[j])
                hist[d] = hist.get(d, 0) + 1
        for d in sorted(hist):
            lines.append(f"{k},{d},{hist[d]}")
    path = out_dir / "distance_hist.csv"
    path.write_text("\n".join(lines) + "\n")
    paths.append(path)
    return paths


REPORT_KINDS = {
    "network": report_network,
    "ranking": report_ranking,
    "degree": report_degree,
    "frequency-curves": report_frequency_curves,
    "compiler-stats": report_compiler_stats,
}
