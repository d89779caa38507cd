"""1-D cellular automaton engine.

Rules are given by a state count, a neighbourhood template of relative
offsets, and a Wolfram-style rule number.  The rule table is read off the
number in base ``colors`` with the all-zero neighbourhood at the least
significant digit and the first template offset as the most significant
digit of the neighbourhood index.

Two boundary conditions are supported: ``cyclic`` (periodic lattice, the
width is preserved) and ``lightcone`` (open lattice, each step keeps only
the cells whose whole neighbourhood was present, so the width shrinks by
``max(template) - min(template)`` per step).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

CYCLIC = "cyclic"
LIGHTCONE = "lightcone"

PCA_TEMPLATE = (0, 1)
ECA_TEMPLATE = (-1, 0, 1)
GCA_TEMPLATE = (-1, 0, 1, 2)


class ExhaustedLightCone(ValueError):
    """Raised when an open lattice is too narrow for one more step."""


@dataclass(frozen=True)
class RuleSpec:
    """A CA rule: state count, neighbourhood offsets and rule number."""

    colors: int
    template: tuple[int, ...]
    number: int

    def __post_init__(self):
        if self.colors < 2:
            raise ValueError(f"need at least two states, got {self.colors}")
        if not isinstance(self.template, tuple):
            object.__setattr__(self, "template", tuple(self.template))
        if len(self.template) == 0:
            raise ValueError("empty neighbourhood template")
        if any(b <= a for a, b in zip(self.template, self.template[1:])):
            raise ValueError(f"template must be strictly increasing: {self.template}")
        if not 0 <= self.number < self.colors ** self.table_size:
            raise ValueError(
                f"rule number {self.number} out of range for "
                f"{self.colors} colors and template {self.template}"
            )

    @property
    def arity(self) -> int:
        return len(self.template)

    @property
    def table_size(self) -> int:
        return self.colors**self.arity

    @property
    def span(self) -> int:
        """Cells lost per light-cone step."""
        return self.template[-1] - self.template[0]

    @classmethod
    def pca(cls, number: int) -> "RuleSpec":
        """Binary rule on the two-cell template <0,1> (16 rules)."""
        return cls(2, PCA_TEMPLATE, number)

    @classmethod
    def eca(cls, number: int) -> "RuleSpec":
        """Elementary rule on <-1,0,1> (256 rules)."""
        return cls(2, ECA_TEMPLATE, number)

    @classmethod
    def gca(cls, number: int) -> "RuleSpec":
        """Binary rule on the asymmetric template <-1,0,1,2> (65536 rules)."""
        return cls(2, GCA_TEMPLATE, number)


@lru_cache(maxsize=100_000)
def rule_table(rule: RuleSpec) -> np.ndarray:
    """Lookup table of length ``colors**arity``, indexed by neighbourhood.

    Index of a neighbourhood ``(n_1, .., n_m)`` read at the template
    offsets in order is ``sum(n_j * colors**(m - 1 - j))``; entry ``i`` is
    digit ``i`` of ``rule.number`` in base ``colors``.
    """
    digits = np.empty(rule.table_size, dtype=np.int64)
    n = rule.number
    for i in range(rule.table_size):
        n, digits[i] = divmod(n, rule.colors)
    table = digits
    table.setflags(write=False)
    return table


def number_from_table(table, colors: int) -> int:
    """Inverse of :func:`rule_table`."""
    number = 0
    for entry in reversed(list(table)):
        number = number * colors + int(entry)
    return number


@dataclass(frozen=True, eq=False)
class Configuration:
    """A single lattice row plus its boundary condition."""

    cells: np.ndarray
    boundary: str = CYCLIC

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int64)
        if cells.ndim != 1:
            raise ValueError(f"configuration must be one-dimensional, got shape {cells.shape}")
        if cells.size == 0:
            raise ValueError("empty configuration")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        if self.boundary not in (CYCLIC, LIGHTCONE):
            raise ValueError(f"unknown boundary {self.boundary!r}")

    @property
    def width(self) -> int:
        return self.cells.size

    @classmethod
    def from_string(cls, text: str, boundary: str = CYCLIC) -> "Configuration":
        return cls(np.array([int(c) for c in text], dtype=np.int64), boundary)

    def __str__(self) -> str:
        return "".join(str(int(c)) for c in self.cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.boundary == other.boundary and np.array_equal(self.cells, other.cells)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SpaceTime:
    """Evolution history; ``rows[0]`` is the initial configuration."""

    rows: tuple
    boundary: str

    @property
    def steps(self) -> int:
        return len(self.rows) - 1

    def as_array(self) -> np.ndarray:
        """Stack rows into a 2-D array (cyclic evolutions only)."""
        if self.boundary != CYCLIC:
            raise ValueError("rows of a light-cone evolution have unequal widths")
        return np.vstack(self.rows)

    def row(self, t: int) -> Configuration:
        return Configuration(self.rows[t], self.boundary)


def step_batch(rule: RuleSpec, cells: np.ndarray, boundary: str) -> np.ndarray:
    """Apply one step to each row of a 2-D batch (or to a single row)."""
    table = rule_table(rule)
    width = cells.shape[-1]
    if boundary == CYCLIC:
        index = np.zeros(cells.shape, dtype=np.int64)
        for j, offset in enumerate(rule.template):
            weight = rule.colors ** (rule.arity - 1 - j)
            index += np.roll(cells, -offset, axis=-1) * weight
        return table[index]
    if boundary == LIGHTCONE:
        out_width = width - rule.span
        if out_width < 1:
            raise ExhaustedLightCone(
                f"exhausted light cone: width {width} cannot support another step"
            )
        low = rule.template[0]
        index = np.zeros(cells.shape[:-1] + (out_width,), dtype=np.int64)
        for j, offset in enumerate(rule.template):
            weight = rule.colors ** (rule.arity - 1 - j)
            start = offset - low
            index += cells[..., start : start + out_width] * weight
        return table[index]
    raise ValueError(f"unknown boundary {boundary!r}")


def step(rule: RuleSpec, config: Configuration) -> Configuration:
    """One synchronous update of every cell."""
    if np.any(config.cells >= rule.colors):
        raise ValueError("configuration uses states outside the rule's alphabet")
    return Configuration(step_batch(rule, config.cells, config.boundary), config.boundary)


def evolve(rule: RuleSpec, config: Configuration, steps: int) -> SpaceTime:
    """Run ``steps`` updates and keep every row, the initial one included."""
    if steps < 0:
        raise ValueError(f"negative step count {steps}")
    rows = [np.asarray(config.cells)]
    current = config.cells
    for _ in range(steps):
        current = step_batch(rule, current, config.boundary)
        rows.append(current)
    return SpaceTime(tuple(rows), config.boundary)
