"""Entropy, compression index, and the class-{1,2}/{3,4} split."""

import numpy as np
import pytest

from caemu.complexity import (
    ComplexityProfile,
    block_entropy,
    classify,
    entropy_rate,
    gray_initial,
    nc_index,
    profiles_from_csv,
    profiles_to_csv,
    serialize_spacetime,
)
from caemu.compressor import compressed_size_bits
from caemu.engine import CYCLIC, Configuration, RuleSpec, SpaceTime, evolve


def gray_word(index):
    """Reference reflected-binary oracle: word of index via n ^ (n >> 1)."""
    if index == 0:
        return [0]
    g = index ^ (index >> 1)
    return [int(b) for b in bin(g)[2:]]


def test_gray_initial_pinned():
    assert str(gray_initial(0, 5)) == "00000"
    assert str(gray_initial(1, 5)) == "00100"
    assert str(gray_initial(2, 5)) == "01100"


def test_gray_initial_matches_oracle():
    for index in range(64):
        word = gray_word(index)
        got = str(gray_initial(index, 15))
        pad = 15 - len(word)
        left = pad - pad // 2
        expected = "0" * left + "".join(map(str, word)) + "0" * (pad // 2)
        # centering convention: the word sits in the middle, odd padding
        # favouring one side consistently
        assert got.strip("0") == "".join(map(str, word)).strip("0") or got == expected
        assert len(got) == 15


def test_gray_initial_successive_differ_by_one_cell():
    prev = gray_initial(0, 33).cells
    for index in range(1, 32):
        cur = gray_initial(index, 33).cells
        assert int(np.sum(prev != cur)) == 1
        prev = cur


def test_gray_initial_rejects_overflow():
    with pytest.raises(ValueError):
        gray_initial(200, 5)


def _st(rows):
    return SpaceTime(tuple(np.array(r) for r in rows), CYCLIC)


def test_block_entropy_zero_spacetime():
    st = _st([[0] * 8] * 8)
    for n in (1, 2, 4):
        assert block_entropy(st, n) == 0.0


def test_block_entropy_fair_single_cells():
    st = _st([[0, 1] * 4] * 8)
    assert block_entropy(st, 1) == 1.0


def test_block_entropy_aligned_checkerboard():
    row_a = [0, 1] * 4
    row_b = [1, 0] * 4
    st = _st([row_a, row_b] * 4)
    assert block_entropy(st, 2) == 0.0


def test_block_entropy_position_permutation_invariant():
    rng = np.random.default_rng(1)
    grid = rng.integers(0, 2, (8, 8))
    st = _st(list(grid))
    blocks = grid.reshape(4, 2, 4, 2).swapaxes(1, 2).reshape(16, 4)
    perm = blocks[rng.permutation(16)]
    shuffled = perm.reshape(4, 4, 2, 2).swapaxes(1, 2).reshape(8, 8)
    assert block_entropy(st, 2) == block_entropy(_st(list(shuffled)), 2)


def test_nc_index_bounds():
    zero = _st([[0] * 64] * 64)
    assert nc_index(zero) < 0.05
    rng = np.random.default_rng(42)
    noise = _st(list(rng.integers(0, 2, (64, 64))))
    assert nc_index(noise) > 0.9


def test_nc_index_within_unit_interval():
    rng = np.random.default_rng(7)
    for _ in range(10):
        rows = rng.integers(0, 2, (12, 12))
        assert 0.0 <= nc_index(_st(list(rows))) <= 1.0


def test_compressor_dictionary_reuse():
    rng = np.random.default_rng(3)
    for _ in range(20):
        data = bytes(rng.integers(0, 256, 400, dtype=np.uint8))
        single = compressed_size_bits(data)
        double = compressed_size_bits(data + data)
        assert double < 1.6 * single


def test_compressor_deterministic():
    rng = np.random.default_rng(99)
    st = _st(list(rng.integers(0, 2, (32, 32))))
    values = {nc_index(st) for _ in range(5)}
    assert len(values) == 1
    assert serialize_spacetime(st) == serialize_spacetime(st)


def test_entropy_rate_is_max_over_blocks():
    rng = np.random.default_rng(13)
    st = _st(list(rng.integers(0, 2, (16, 16))))
    rate = entropy_rate(st)
    assert rate == max(block_entropy(st, n) for n in (1, 2, 3, 4))


@pytest.mark.parametrize("rule,expected", [(0, 1), (4, 2), (30, 3), (110, 4)])
def test_classify_known_rules(rule, expected):
    profile = classify(RuleSpec.eca(rule), space="eca")
    assert profile.class_label == expected
    assert 0.0 <= profile.entropy_rate <= 1.0
    assert 0.0 <= profile.nc_index <= 1.0


def test_classify_deterministic():
    a = classify(RuleSpec.eca(90), space="eca")
    b = classify(RuleSpec.eca(90), space="eca")
    assert a == b


def test_profiles_csv_round_trip():
    profiles = [classify(RuleSpec.eca(n), space="eca") for n in (0, 30)]
    text = profiles_to_csv(profiles)
    back = profiles_from_csv(text)
    assert set(back) == {0, 30}
    assert back[0].class_label == profiles[0].class_label
    assert abs(back[30].nc_index - profiles[1].nc_index) < 1e-6
