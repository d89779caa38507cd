"""Discovery of block emulations for a fixed emulator rule and block size.

The candidate pipeline narrows the ``2**k`` k-tuples to those that can
appear as code blocks, pairs them, screens pairs on an encoded De Bruijn
initial condition, derives the induced rule, and hands every survivor to
the exhaustive verifier.  The pipeline is a pre-filter only: the verifier
is the arbiter, and the pre-filter never rejects a pair the verifier
would accept (a verified pair keeps the De Bruijn evolution inside the
code space by construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .engine import CYCLIC, RuleSpec, step_batch
from .emulation import Projection, derive_emulated, verify_emulation

VERIFIED = "verified"
REFUTED = "refuted"
CANDIDATE = "candidate"

# Fixed screening sequences; both cover every neighbourhood tuple of
# their template cyclically.
ECA_DEBRUIJN = (0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 0, 1)
GCA_DEBRUIJN = (0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1)


@dataclass(frozen=True)
class EmulationRecord:
    """One (emulator, emulated, projection) triple with its status."""

    emulator: int
    emulated: int
    projection: Projection
    block_size: int
    time_scale: int
    status: str
    counterexample: tuple = None

    @property
    def is_self_emulation(self) -> bool:
        return self.emulator == self.emulated

    def sort_key(self) -> tuple:
        return (
            self.emulator,
            -1 if self.emulated is None else self.emulated,
            self.block_size,
            self.projection.blocks,
        )


def de_bruijn_sequence(order: int) -> tuple:
    """Binary De Bruijn sequence of the given order (length 2**order)."""
    # Standard Lyndon-word concatenation.
    sequence = []
    a = [0] * (order + 1)

    def extend(t: int, p: int) -> None:
        if t > order:
            if order % p == 0:
                sequence.extend(a[1 : p + 1])
            return
        a[t] = a[t - p]
        extend(t + 1, p)
        for j in range(a[t - p] + 1, 2):
            a[t] = j
            extend(t + 1, t)

    extend(1, 1)
    return tuple(sequence)


def screening_sequence(rule: RuleSpec, k: int) -> tuple:
    """IC used by the candidate screen for this template and block size."""
    if rule.colors == 2 and rule.arity == 3:
        return ECA_DEBRUIJN
    if rule.colors == 2 and rule.arity == 4:
        return GCA_DEBRUIJN
    order = rule.arity + max(0, (k - 1).bit_length())
    return de_bruijn_sequence(order)


def _all_tuples(k: int) -> np.ndarray:
    idx = np.arange(2**k)
    return np.stack([(idx >> (k - 1 - j)) & 1 for j in range(k)], axis=1)


def _evolve_cyclic(rule: RuleSpec, batch: np.ndarray, steps: int) -> np.ndarray:
    for _ in range(steps):
        batch = step_batch(rule, batch, CYCLIC)
    return batch


def candidate_blocks_a(rule: RuleSpec, k: int) -> set:
    """k-tuples fixed by k steps on a cyclic width-k lattice."""
    tuples = _all_tuples(k)
    out = _evolve_cyclic(rule, tuples, k)
    fixed = np.all(out == tuples, axis=1)
    return {tuple(int(c) for c in t) for t in tuples[fixed]}


def candidate_blocks_b(rule: RuleSpec, k: int, a_set: set) -> set:
    """Remaining tuples whose k-step evolution lands in ``a_set``."""
    tuples = _all_tuples(k)
    out = _evolve_cyclic(rule, tuples, k)
    result = set()
    for t, o in zip(tuples, out):
        t_t = tuple(int(c) for c in t)
        if t_t not in a_set and tuple(int(c) for c in o) in a_set:
            result.add(t_t)
    return result


def candidate_blocks_c(rule: RuleSpec, k: int, a_set: set, b_set: set) -> set:
    """Tuples outside A and B that 2k steps map back onto themselves."""
    tuples = _all_tuples(k)
    out = _evolve_cyclic(rule, tuples, 2 * k)
    result = set()
    for t, o in zip(tuples, out):
        t_t = tuple(int(c) for c in t)
        if t_t in a_set or t_t in b_set:
            continue
        if tuple(int(c) for c in o) == t_t:
            result.add(t_t)
    return result


def check_candidate(rule: RuleSpec, k: int, pair: tuple) -> bool:
    """Screen a block pair on an encoded De Bruijn initial condition.

    The sequence is encoded with ``0 -> pair[0], 1 -> pair[1]``, run k
    steps cyclically, and accepted when every k-block of the output row
    decodes under the pair again.
    """
    block0, block1 = (np.array(b, dtype=np.int64) for b in pair)
    sequence = screening_sequence(rule, k)
    row = np.concatenate([block1 if s else block0 for s in sequence])
    out = _evolve_cyclic(rule, row[None, :], k)[0]
    allowed = {tuple(int(c) for c in block0), tuple(int(c) for c in block1)}
    for i in range(0, out.size, k):
        if tuple(int(c) for c in out[i : i + k]) not in allowed:
            return False
    return True


def candidate_pairs(rule: RuleSpec, k: int) -> list:
    """Ordered block pairs fed to the screen, deterministic order.

    Fixed and period-2k tuples are paired among themselves; transient
    tuples (set B) are cross-joined with their k-step outputs both ways,
    since either side may code the quiescent state.
    """
    a_set = candidate_blocks_a(rule, k)
    b_set = candidate_blocks_b(rule, k, a_set)
    c_set = candidate_blocks_c(rule, k, a_set, b_set)
    stable = sorted(a_set | c_set)
    pairs = set(permutations(stable, 2)) if len(stable) > 1 else set()
    if b_set:
        outs = sorted(
            tuple(int(c) for c in row)
            for row in _evolve_cyclic(rule, np.array(sorted(b_set), dtype=np.int64), k)
        )
        for b in sorted(b_set):
            for o in outs:
                if b != o:
                    pairs.add((b, o))
                    pairs.add((o, b))
    return sorted(pairs)


def search_emulations(emulator: RuleSpec, k: int, keep_refuted: bool = False) -> list:
    """All verified emulations of ``emulator`` at block size ``k``.

    Every record returned with status ``verified`` passed the exhaustive
    light-cone verifier; with ``keep_refuted`` the pairs that survived
    screening but failed derivation or verification are reported too.
    """
    records = []
    for pair in candidate_pairs(emulator, k):
        if not check_candidate(emulator, k, pair):
            continue
        p = Projection(pair)
        derived = derive_emulated(emulator, p)
        if derived is None:
            if keep_refuted:
                records.append(
                    EmulationRecord(emulator.number, None, p, k, k, REFUTED)
                )
            continue
        target = RuleSpec(emulator.colors, emulator.template, derived)
        result = verify_emulation(emulator, target, p)
        if result.ok:
            records.append(EmulationRecord(emulator.number, derived, p, k, k, VERIFIED))
        elif keep_refuted:
            records.append(
                EmulationRecord(
                    emulator.number, derived, p, k, k, REFUTED, result.counterexample
                )
            )
    records.sort(key=EmulationRecord.sort_key)
    return records


def exhaustive_emulations(emulator: RuleSpec, k: int) -> list:
    """Brute-force oracle: verify every injective pair of k-blocks.

    Bypasses the candidate pipeline entirely; used to establish search
    completeness on small block sizes.
    """
    records = []
    tuples = [tuple(int(c) for c in t) for t in _all_tuples(k)]
    for pair in permutations(tuples, 2):
        p = Projection(pair)
        derived = derive_emulated(emulator, p)
        if derived is None:
            continue
        target = RuleSpec(emulator.colors, emulator.template, derived)
        if verify_emulation(emulator, target, p).ok:
            records.append(EmulationRecord(emulator.number, derived, p, k, k, VERIFIED))
    records.sort(key=EmulationRecord.sort_key)
    return records
