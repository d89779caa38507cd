"""Block codes between CA configurations and the emulation verifier.

Rule A emulates rule B under a projection P when decoding every k-th row
of A's evolution of an encoded configuration reproduces B's evolution,
for every initial configuration and every time.  The verifier below
establishes that property exhaustively: every neighbourhood tuple of the
emulated lattice is block-encoded, run ``k`` steps on an open lattice,
and the surviving fully-determined cells must equal the code block of the
emulated rule's output.  Induction over blocks extends a pass to all
configurations and all times, so a pass is a proof, not a sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import (
    CYCLIC,
    LIGHTCONE,
    Configuration,
    RuleSpec,
    SpaceTime,
    number_from_table,
    rule_table,
    step_batch,
)


class DecodeFailure(ValueError):
    """A k-block did not match any code block."""

    def __init__(self, block_index: int, block: tuple):
        self.block_index = block_index
        self.block = block
        super().__init__(f"block {block_index} = {''.join(map(str, block))} is not a code block")


@dataclass(frozen=True)
class Projection:
    """Per-state code blocks; ``blocks[s]`` encodes state ``s``."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(int(c) for c in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if len(blocks) < 2:
            raise ValueError("a projection needs one block per state")
        sizes = {len(b) for b in blocks}
        if sizes == {0} or len(sizes) != 1:
            raise ValueError(f"code blocks must share one positive length, got {blocks}")
        if len(set(blocks)) != len(blocks):
            raise ValueError(f"code blocks must be pairwise distinct, got {blocks}")

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @classmethod
    def from_codes(cls, *codes: str) -> "Projection":
        """Build from digit strings, e.g. ``from_codes("00", "01")``."""
        return cls(tuple(tuple(int(c) for c in code) for code in codes))

    def code(self, state: int) -> str:
        return "".join(str(c) for c in self.blocks[state])

    def __str__(self) -> str:
        return " ".join(f"{s}->{self.code(s)}" for s in range(len(self.blocks)))


def block_encode(p: Projection, config: Configuration) -> Configuration:
    """Replace every cell by its code block; width grows k-fold."""
    out = np.concatenate([np.array(p.blocks[int(s)], dtype=np.int64) for s in config.cells])
    return Configuration(out, config.boundary)


def block_decode(p: Projection, config: Configuration) -> Configuration:
    """Inverse of :func:`block_encode`; raises :class:`DecodeFailure`."""
    k = p.block_size
    if config.width % k:
        raise ValueError(f"width {config.width} is not a multiple of block size {k}")
    lookup = {b: s for s, b in enumerate(p.blocks)}
    cells = []
    for i in range(config.width // k):
        block = tuple(int(c) for c in config.cells[i * k : (i + 1) * k])
        state = lookup.get(block)
        if state is None:
            raise DecodeFailure(i, block)
        cells.append(state)
    return Configuration(np.array(cells, dtype=np.int64), config.boundary)


def coarse_grain(st: SpaceTime, p: Projection) -> SpaceTime:
    """Decode every k-th row, compressing time by the block size."""
    k = p.block_size
    rows = []
    for j in range(0, len(st.rows), k):
        rows.append(block_decode(p, Configuration(st.rows[j], st.boundary)).cells)
    return SpaceTime(tuple(rows), st.boundary)


def _neighbourhood_matrix(colors: int, arity: int) -> np.ndarray:
    """All neighbourhood tuples, one per row, in table-index order."""
    size = colors**arity
    idx = np.arange(size)
    cols = [(idx // colors**(arity - 1 - j)) % colors for j in range(arity)]
    return np.stack(cols, axis=1)


def emulated_futures(emulator: RuleSpec, p: Projection) -> np.ndarray:
    """k-step open-lattice future of every encoded neighbourhood tuple.

    Row ``i`` holds the fully-determined block after ``block_size`` steps
    of the emulator applied to the encoding of neighbourhood tuple ``i``.
    For a contiguous template the light cone shrinks to exactly the block
    standing at the emulated cell's own position.
    """
    k = p.block_size
    tuples = _neighbourhood_matrix(emulator.colors, emulator.arity)
    blocks = np.array(p.blocks, dtype=np.int64)
    batch = blocks[tuples].reshape(tuples.shape[0], -1)
    for _ in range(k):
        batch = step_batch(emulator, batch, LIGHTCONE)
    if batch.shape[1] != k:
        raise ValueError(
            f"template {emulator.template} does not focus the light cone on one block"
        )
    return batch


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    counterexample: tuple = None

    def __bool__(self) -> bool:
        return self.ok


def verify_emulation(emulator: RuleSpec, emulated: RuleSpec, p: Projection) -> VerificationResult:
    """Exhaustive light-cone check that ``emulator`` emulates ``emulated``.

    Passes only if for every neighbourhood tuple the determined central
    block equals the code block of the emulated rule's output, which
    proves the commutation property for every initial condition and every
    number of steps.
    """
    if emulator.template != emulated.template or emulator.colors != emulated.colors:
        raise ValueError("emulator and emulated rule must share alphabet and template")
    if len(p.blocks) != emulated.colors:
        raise ValueError("projection must code every state of the emulated rule")
    futures = emulated_futures(emulator, p)
    expected = np.array(p.blocks, dtype=np.int64)[rule_table(emulated)]
    mismatches = np.nonzero(np.any(futures != expected, axis=1))[0]
    if mismatches.size:
        i = int(mismatches[0])
        tuples = _neighbourhood_matrix(emulator.colors, emulator.arity)
        return VerificationResult(False, tuple(int(c) for c in tuples[i]))
    return VerificationResult(True)


def derive_emulated(emulator: RuleSpec, p: Projection):
    """Read the induced rule table off the futures, if it exists.

    Returns the emulated rule number, or ``None`` when some future is not
    a code block (no rule of the same space is emulated under ``p``).
    """
    futures = emulated_futures(emulator, p)
    lookup = {b: s for s, b in enumerate(p.blocks)}
    table = []
    for row in futures:
        state = lookup.get(tuple(int(c) for c in row))
        if state is None:
            return None
        table.append(state)
    return number_from_table(table, emulator.colors)
