"""Behaviour statistics and coarse dynamical classification.

A rule is profiled by evolving a family of Gray-code initial conditions
and taking the worst case (maximum) of two statistics over the runs: the
normalised block entropy of the space-time diagram and the compression
index ``nc_index`` (compressed size over raw size under the in-repo
dictionary compressor).  Rules whose diagrams stay compressible are the
simple bucket, split into fixed-point and periodic behaviour; rules whose
diagrams resist compression are the complex bucket.  The thresholds were
calibrated once against the seeded classes of the elementary rules and
are frozen in ``data/complexity.cfg``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .compressor import compressed_size_bits
from .engine import CYCLIC, Configuration, RuleSpec, SpaceTime, evolve, step_batch
from .rulespace import CLASS4_SEED, representative

DEFAULT_WIDTH = 129
DEFAULT_STEPS = 200
DEFAULT_INITS = 32
DEFAULT_BLOCK_MAX = 4


def gray_initial(index: int, width: int) -> Configuration:
    """The ``index``-th reflected-binary word, centred on a zero lattice.

    Successive indices differ in exactly one cell, so the family probes
    sensitivity to single-cell changes while visiting words of growing
    density.
    """
    if index < 0:
        raise ValueError(f"negative Gray index {index}")
    code = index ^ (index >> 1)
    word = [int(c) for c in bin(code)[2:]]
    if len(word) > width:
        raise ValueError(f"Gray word {index} needs {len(word)} cells, width is {width}")
    cells = np.zeros(width, dtype=np.int64)
    start = (width - len(word)) // 2
    cells[start : start + len(word)] = word
    return Configuration(cells)


def serialize_spacetime(st: SpaceTime) -> bytes:
    """Row-major bit packing of a rectangular binary space-time."""
    grid = st.as_array()
    if grid.max(initial=0) > 1:
        raise ValueError("bit packing requires a binary space-time")
    return np.packbits(grid.astype(np.uint8), axis=None).tobytes()


def nc_index(st: SpaceTime) -> float:
    """Compressed over raw size, clamped to [0, 1]."""
    grid = st.as_array()
    compressed = compressed_size_bits(serialize_spacetime(st))
    return min(1.0, compressed / grid.size)


def block_entropy(st: SpaceTime, n: int) -> float:
    """Shannon entropy of non-overlapping n-by-n blocks, per cell.

    Remainder rows and columns that do not fill a block are discarded.
    The result is in [0, 1] for binary states.
    """
    if n < 1:
        raise ValueError(f"block size must be positive, got {n}")
    grid = st.as_array()
    rows = (grid.shape[0] // n) * n
    cols = (grid.shape[1] // n) * n
    if rows == 0 or cols == 0:
        raise ValueError(f"space-time {grid.shape} has no complete {n}x{n} block")
    trimmed = grid[:rows, :cols]
    blocks = trimmed.reshape(rows // n, n, cols // n, n).swapaxes(1, 2).reshape(-1, n * n)
    counts = Counter(map(tuple, blocks.tolist()))
    total = sum(counts.values())
    probs = np.array(list(counts.values())) / total
    entropy = float(-(probs * np.log2(probs)).sum())
    return entropy / (n * n)


def entropy_rate(st: SpaceTime, block_max: int = DEFAULT_BLOCK_MAX) -> float:
    """Maximum normalised block entropy over block sizes 1..block_max."""
    return max(block_entropy(st, n) for n in range(1, block_max + 1))


@dataclass(frozen=True)
class Thresholds:
    """Frozen decision constants; see data/complexity.cfg."""

    nc_high: float
    entropy_high: float
    nc_low: float


def load_thresholds(path=None) -> Thresholds:
    """Read key=value threshold config; default is the packaged file."""
    if path is None:
        text = resources.files("caemu").joinpath("data/complexity.cfg").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    values = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        values[key.strip()] = float(value.strip())
    missing = {"nc_high", "entropy_high", "nc_low"} - set(values)
    if missing:
        raise ValueError(f"threshold config lacks keys: {sorted(missing)}")
    return Thresholds(values["nc_high"], values["entropy_high"], values["nc_low"])


@dataclass(frozen=True)
class ComplexityProfile:
    rule: int
    entropy_rate: float
    nc_index: float
    class_label: object


def _reaches_uniform_fixed_row(rule: RuleSpec, st: SpaceTime) -> bool:
    grid = st.as_array()
    uniform = np.all(grid == grid[:, :1], axis=1)
    for t in np.nonzero(uniform)[0]:
        row = grid[t]
        if np.array_equal(step_batch(rule, row, CYCLIC), row):
            return True
    return False


def classify(
    rule: RuleSpec,
    width: int = DEFAULT_WIDTH,
    steps: int = DEFAULT_STEPS,
    n_inits: int = DEFAULT_INITS,
    block_max: int = DEFAULT_BLOCK_MAX,
    thresholds: Thresholds = None,
    space: str = None,
) -> ComplexityProfile:
    """Profile one rule over the Gray-code initial family.

    ``space`` selects the labelling scheme: elementary and two-cell rules
    get numeric labels 1..4 (4 only for the seeded list, since the
    statistics do not separate it from 3); the 16-bit space gets
    low/medium/high labels.
    """
    if thresholds is None:
        thresholds = load_thresholds()
    worst_nc = 0.0
    worst_entropy = 0.0
    all_collapse = True
    for i in range(n_inits):
        st = evolve(rule, gray_initial(i, width), steps)
        worst_nc = max(worst_nc, nc_index(st))
        worst_entropy = max(worst_entropy, entropy_rate(st, block_max))
        if all_collapse and not _reaches_uniform_fixed_row(rule, st):
            all_collapse = False
    complex_bucket = worst_nc >= thresholds.nc_high and worst_entropy >= thresholds.entropy_high
    if space == "gca":
        if complex_bucket:
            label = "high"
        elif worst_nc <= thresholds.nc_low:
            label = "low"
        else:
            label = "medium"
    else:
        if complex_bucket:
            seed = CLASS4_SEED.get(space, frozenset())
            in_seed = space is not None and representative(space, rule.number) in seed
            label = 4 if in_seed else 3
        else:
            label = 1 if all_collapse else 2
    return ComplexityProfile(rule.number, worst_entropy, worst_nc, label)


def calibrate_thresholds(profiles, truth) -> tuple:
    """Grid-search (nc_high, entropy_high) maximising bucket agreement.

    ``truth`` maps rule number to a seeded class; classes 1 and 2 form
    the simple bucket, 3 and 4 the complex one.  Used once to produce the
    frozen config; kept for reproducibility.
    """
    want = {rule: cls >= 3 for rule, cls in truth.items()}
    grid = np.round(np.linspace(0.0, 1.0, 101), 2)
    best = (0.0, 0.0)
    best_score = -1
    for nc_cut in grid:
        for h_cut in grid:
            score = sum(
                (p.nc_index >= nc_cut and p.entropy_rate >= h_cut) == want[p.rule]
                for p in profiles
                if p.rule in want
            )
            if score > best_score:
                best_score = score
                best = (float(nc_cut), float(h_cut))
    return best, best_score


def profiles_to_csv(profiles) -> str:
    lines = ["rule,entropy_rate,nc_index,class_label"]
    for p in sorted(profiles, key=lambda p: p.rule):
        lines.append(f"{p.rule},{p.entropy_rate:.6f},{p.nc_index:.6f},{p.class_label}")
    return "\n".join(lines) + "\n"


def profiles_from_csv(text: str) -> dict:
    """Profiles keyed by rule number, class labels as written."""
    lines = text.splitlines()
    if not lines or lines[0] != "rule,entropy_rate,nc_index,class_label":
        raise ValueError("unexpected profile CSV header")
    profiles = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        rule, h, nc, label = line.split(",")
        try:
            label = int(label)
        except ValueError:
            pass
        profiles[int(rule)] = ComplexityProfile(int(rule), float(h), float(nc), label)
    return profiles
