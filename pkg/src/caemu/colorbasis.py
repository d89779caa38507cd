"""Lifting binary rules into richer alphabets along 2-colour bases.

A ``2**k``-colour rule space embeds every binary rule once per ordered
digit pair ``x < y``: writing the binary rule's table digits at the
table positions whose neighbourhood tuples use only the digits ``x`` and
``y`` yields the lifted rule number.  The positions are fixed by the
basis vector ``b_xy``, whose exponent list is an affine image of the
base case ``b_01`` (the base-``ell`` reinterpretation of the binary
tuples).  Supercell space-times of a block emulation live inside a
single such basis, which is what :func:`classify_lifted` detects.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .engine import CYCLIC, RuleSpec, rule_table, step_batch
from .emulation import Projection, emulated_futures

DIAGNOSTIC_SEED = 20240917
DIAGNOSTIC_RANDOM_ROWS = 64
DIAGNOSTIC_WIDTH = 32
DIAGNOSTIC_COARSE_STEPS = 16


def lambda_value(ell: int, m: int) -> int:
    """Gap ``((ell-2) * ell**m + 1) / (ell - 1)``; always an integer."""
    if ell < 2:
        raise ValueError(f"need at least two colors, got {ell}")
    if m < 0:
        raise ValueError(f"negative level {m}")
    numerator = (ell - 2) * ell**m + 1
    quotient, remainder = divmod(numerator, ell - 1)
    assert remainder == 0
    return quotient


def delta_vector(ell: int, r: int = 1) -> tuple:
    """Consecutive exponent gaps of the base basis, length 2**(2r+1)-1.

    Entry ``i`` (1-based) is ``lambda_value(ell, v)`` with ``v`` the
    2-adic valuation of ``i``: moving from binary tuple ``i-1`` to ``i``
    clears ``v`` trailing ones and sets bit ``v``, and re-reading the
    tuple in base ``ell`` turns that flip into exactly this gap.
    """
    n = 2 * r + 1
    gaps = []
    for i in range(1, 2**n):
        v = (i & -i).bit_length() - 1
        gaps.append(lambda_value(ell, v))
    return tuple(gaps)


@dataclass(frozen=True)
class BasisVector:
    """Exponent positions of the binary tuples over digits ``(x, y)``."""

    ell: int
    x: int
    y: int
    exponents: tuple

    def __post_init__(self):
        if not 0 <= self.x < self.y < self.ell:
            raise ValueError(f"digit pair ({self.x}, {self.y}) invalid for {self.ell} colors")
        if any(b <= a for a, b in zip(self.exponents, self.exponents[1:])):
            raise ValueError("basis exponents must be strictly increasing")
        n = len(self.exponents)
        # 2^(2r+1) entries, one per binary neighbourhood tuple
        if n < 2 or n & (n - 1) or (n.bit_length() - 1) % 2 == 0:
            raise ValueError(f"{n} exponents cannot index binary (2r+1)-tuples")


def basis_01(ell: int, r: int = 1) -> BasisVector:
    """Base basis: binary tuples re-read as base-``ell`` numbers."""
    n = 2 * r + 1
    exponents = [0]
    for gap in delta_vector(ell, r):
        exponents.append(exponents[-1] + gap)
    return BasisVector(ell, 0, 1, tuple(exponents))


def basis_xy(ell: int, r: int, x: int, y: int) -> BasisVector:
    """Basis over digits ``(x, y)``: exponent-wise affine image of b_01.

    A tuple over digits {x, y} has base-``ell`` value
    ``x * (ell**n - 1)/(ell - 1) + (y - x) * e`` where ``e`` is the value
    of the same tuple over {0, 1}; the worked examples pin this form.
    """
    base = basis_01(ell, r)
    ones = base.exponents[-1]
    exponents = tuple(x * ones + (y - x) * e for e in base.exponents)
    return BasisVector(ell, x, y, exponents)


def all_bases(ell: int, r: int = 1) -> list:
    """Every 2-colour basis, count ``ell * (ell - 1) / 2``."""
    return [basis_xy(ell, r, x, y) for x in range(ell) for y in range(x + 1, ell)]


def lift_rule(rule: RuleSpec, basis: BasisVector) -> int:
    """Lifted rule number: binary table digits written at the basis.

    Table digit 0 becomes ``basis.x`` and digit 1 becomes ``basis.y``;
    each lands at its tuple's exponent.  Exact integer arithmetic; the
    results overflow machine words almost immediately.
    """
    if rule.colors != 2:
        raise ValueError("only binary rules can be lifted")
    table = rule_table(rule)
    if len(table) != len(basis.exponents):
        raise ValueError(
            f"rule table size {len(table)} does not match basis of {len(basis.exponents)} tuples"
        )
    number = 0
    for bit, exponent in zip(table, basis.exponents):
        digit = basis.y if bit else basis.x
        number += digit * basis.ell**exponent
    return number


def project_lifted(number: int, basis: BasisVector) -> int:
    """Inverse of :func:`lift_rule`; rejects digits off the basis."""
    bits = []
    for exponent in basis.exponents:
        digit = (number // basis.ell**exponent) % basis.ell
        if digit == basis.x:
            bits.append(0)
        elif digit == basis.y:
            bits.append(1)
        else:
            raise ValueError(f"digit {digit} at exponent {exponent} is outside the basis")
    value = 0
    for bit in reversed(bits):
        value = value * 2 + bit
    return value


@dataclass(frozen=True)
class CausalDecomposition:
    decomposable: bool
    futures: tuple
    witness: tuple = None


def causal_decomposition_check(rule: RuleSpec, p: Projection) -> CausalDecomposition:
    """Test whether k-step futures of encoded pasts split into code blocks.

    Every neighbourhood tuple is encoded and run ``block_size`` steps on
    an open lattice; the rule decomposes causally under ``p`` when there
    are at most ``colors`` distinct determined futures and every one of
    them is a code block.
    """
    futures = emulated_futures(rule, p)
    rows = tuple(tuple(int(c) for c in row) for row in futures)
    # all-code futures imply at most |blocks| = colors distinct ones, so a
    # single leaked block is the witness for either failure mode
    code = set(p.blocks)
    for row in rows:
        if row not in code:
            return CausalDecomposition(False, rows, row)
    return CausalDecomposition(True, rows)


def color_of_block(block: tuple) -> int:
    """Supercell digit of a k-block: its binary value."""
    value = 0
    for c in block:
        value = value * 2 + int(c)
    return value


def block_of_color(color: int, k: int) -> tuple:
    """Inverse of :func:`color_of_block` for ``2**k`` colours."""
    if not 0 <= color < 2**k:
        raise ValueError(f"color {color} out of range for block size {k}")
    return tuple((color >> (k - 1 - j)) & 1 for j in range(k))


@dataclass(frozen=True)
class LiftClassification:
    in_2color_basis: bool
    pair: tuple
    source_pairs: tuple
    observed_colors: tuple


def _normalize_transformation(transformation) -> dict:
    """Digit -> block mapping from a dict, a Projection, or a block list."""
    if isinstance(transformation, Projection):
        items = enumerate(transformation.blocks)
    elif isinstance(transformation, dict):
        items = transformation.items()
    else:
        items = enumerate(transformation)
    assigned = {int(d): tuple(int(c) for c in b) for d, b in items}
    if not assigned:
        raise ValueError("empty block transformation")
    sizes = {len(b) for b in assigned.values()}
    if len(sizes) != 1 or sizes == {0}:
        raise ValueError("all blocks must share one positive size")
    k = sizes.pop()
    if any(not 0 <= d < 2**k for d in assigned):
        raise ValueError("source digit out of range for the block size")
    return assigned


def _observed_digits(rule: RuleSpec, k: int, batches, coarse_steps: int) -> set:
    """Supercell digits seen on every k-th row of the encoded evolutions."""
    observed = set()
    weights = 2 ** np.arange(k - 1, -1, -1)
    for batch in batches:
        for _ in range(coarse_steps + 1):
            cells = batch.reshape(-1, k)
            observed.update(np.unique(cells @ weights).tolist())
            if len(observed) > 2:
                return observed
            for _ in range(k):
                batch = step_batch(rule, batch, CYCLIC)
    return observed


def classify_lifted(rule: RuleSpec, transformation,
                    coarse_steps: int = DIAGNOSTIC_COARSE_STEPS) -> LiftClassification:
    """Watch the supercell view of a block transformation digit pair-wise.

    ``transformation`` assigns k-blocks to source digits (a full list of
    ``2**k`` blocks, a digit->block dict, or a two-block projection; the
    blocks may repeat).  For every assigned digit pair with distinct
    blocks, the diagnostic rows (all binary neighbourhood tuples over the
    pair plus 64 fixed-seed random rows over the pair) are encoded and
    evolved; every k-th row is re-read as supercell digits.  The
    transformation sits inside a 2-colour basis when each such pair only
    ever shows the same two digits, i.e. when its distinct blocks form a
    closed code under the rule.
    """
    assigned = _normalize_transformation(transformation)
    k = len(next(iter(assigned.values())))
    digits = sorted(assigned)
    pairs = [
        (u, v)
        for i, u in enumerate(digits)
        for v in digits[i + 1 :]
        if assigned[u] != assigned[v]
    ]
    if not pairs:
        return LiftClassification(False, None, (), ())
    rng = np.random.default_rng(DIAGNOSTIC_SEED)
    tuples = np.array(list(product(range(2), repeat=rule.arity)))
    randoms = rng.integers(0, 2, (DIAGNOSTIC_RANDOM_ROWS, DIAGNOSTIC_WIDTH))
    observed = set()
    for u, v in pairs:
        pair_blocks = np.array([assigned[u], assigned[v]], dtype=np.int64)
        batches = (
            pair_blocks[tuples].reshape(len(tuples), -1),
            pair_blocks[randoms].reshape(len(randoms), -1),
        )
        seen = _observed_digits(rule, k, batches, coarse_steps)
        observed |= seen
        if len(seen) > 2 or len(observed) > 2:
            return LiftClassification(False, None, tuple(pairs), tuple(sorted(observed)))
    colours = tuple(sorted(observed))
    if len(colours) == 2:
        return LiftClassification(True, colours, tuple(pairs), colours)
    return LiftClassification(False, None, tuple(pairs), colours)
