"""Rule-space enumeration, symmetry reduction and rule properties.

Two commuting involutions act on every binary rule space: reflection
(reverse the neighbourhood tuple; for an asymmetric template this lands in
the mirrored template, which is identified back by index relabelling) and
conjugation (complement every state on both sides of the table).  Together
with their composition they form a four-element group; a rule is
*essential* when it is the smallest number of its orbit.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .engine import (
    ECA_TEMPLATE,
    GCA_TEMPLATE,
    PCA_TEMPLATE,
    RuleSpec,
    number_from_table,
    rule_table,
)

SPACES = {
    "pca": (2, PCA_TEMPLATE),
    "eca": (2, ECA_TEMPLATE),
    "gca": (2, GCA_TEMPLATE),
}


def space_rule(space: str, number: int) -> RuleSpec:
    colors, template = SPACES[space]
    return RuleSpec(colors, template, number)


def space_size(space: str) -> int:
    colors, template = SPACES[space]
    return colors ** (colors ** len(template))


@lru_cache(maxsize=None)
def _index_digits(colors: int, arity: int) -> np.ndarray:
    """Array (colors**arity, arity): neighbourhood digits of each index."""
    size = colors**arity
    idx = np.arange(size)
    digits = np.empty((size, arity), dtype=np.int64)
    for j in range(arity):
        digits[:, arity - 1 - j] = (idx // colors**j) % colors
    return digits


@lru_cache(maxsize=None)
def _reflect_permutation(colors: int, arity: int) -> np.ndarray:
    """index -> index of the reversed neighbourhood tuple."""
    digits = _index_digits(colors, arity)[:, ::-1]
    weights = colors ** np.arange(arity - 1, -1, -1)
    return digits @ weights


@lru_cache(maxsize=None)
def _conjugate_permutation(colors: int, arity: int) -> np.ndarray:
    """index -> index of the state-complemented neighbourhood tuple."""
    digits = (colors - 1) - _index_digits(colors, arity)
    weights = colors ** np.arange(arity - 1, -1, -1)
    return digits @ weights


def reflect(rule: RuleSpec) -> int:
    """Rule number of the left-right mirrored rule."""
    perm = _reflect_permutation(rule.colors, rule.arity)
    return number_from_table(rule_table(rule)[perm], rule.colors)


def conjugate(rule: RuleSpec) -> int:
    """Rule number with all states complemented."""
    perm = _conjugate_permutation(rule.colors, rule.arity)
    return number_from_table((rule.colors - 1) - rule_table(rule)[perm], rule.colors)


@dataclass(frozen=True)
class EquivalenceClass:
    representative: int
    members: tuple

    def __contains__(self, number: int) -> bool:
        return number in self.members


def equivalence_class(rule: RuleSpec) -> EquivalenceClass:
    """Orbit of a rule under reflection, conjugation and their product."""
    r = reflect(rule)
    c = conjugate(rule)
    rc = conjugate(RuleSpec(rule.colors, rule.template, r))
    members = tuple(sorted({rule.number, r, c, rc}))
    return EquivalenceClass(members[0], members)


def _orbit_maps(space: str) -> tuple:
    """Vectorised reflect/conjugate over every rule number of a space."""
    colors, template = SPACES[space]
    arity = len(template)
    size = colors**arity
    numbers = np.arange(colors**size, dtype=np.int64)
    bits = (numbers[:, None] >> np.arange(size)) & 1
    weights = 1 << np.arange(size, dtype=np.int64)
    refl = _reflect_permutation(colors, arity)
    conj = _conjugate_permutation(colors, arity)
    reflected = bits[:, refl] @ weights
    conjugated = (1 - bits[:, conj]) @ weights
    joint_bits = (1 - bits[:, conj])[:, refl]
    joint = joint_bits @ weights
    return numbers, reflected, conjugated, joint


def essential_rules(space: str) -> list:
    """Smallest member of every symmetry orbit, ascending."""
    numbers, reflected, conjugated, joint = _orbit_maps(space)
    reps = np.minimum(np.minimum(numbers, reflected), np.minimum(conjugated, joint))
    return sorted(int(n) for n in np.unique(reps))


def all_classes(space: str) -> list:
    """Every equivalence class of a space, by ascending representative."""
    numbers, reflected, conjugated, joint = _orbit_maps(space)
    reps = np.minimum(np.minimum(numbers, reflected), np.minimum(conjugated, joint))
    classes = {}
    for n, rep in zip(numbers, reps):
        classes.setdefault(int(rep), set()).add(int(n))
    return [
        EquivalenceClass(rep, tuple(sorted(members)))
        for rep, members in sorted(classes.items())
    ]


def representative(space: str, number: int) -> int:
    return equivalence_class(space_rule(space, number)).representative


@dataclass(frozen=True)
class LinearForm:
    """``table(n) = XOR of n at the marked offsets, XOR toggle``."""

    coefficients: tuple
    toggle: int


def is_linear(rule: RuleSpec):
    """Detect additive structure of a binary rule.

    Returns a :class:`LinearForm` when every table entry is the XOR of a
    fixed subset of neighbourhood positions, optionally complemented (the
    shift-with-toggle and sum-with-toggle rules), else ``None``.
    """
    if rule.colors != 2:
        raise ValueError("additivity test only defined for binary rules")
    table = rule_table(rule)
    toggle = int(table[0])
    coeffs = []
    for j in range(rule.arity):
        unit = 2 ** (rule.arity - 1 - j)
        coeffs.append(int(table[unit]) ^ toggle)
    digits = _index_digits(2, rule.arity)
    predicted = (digits @ np.array(coeffs)) % 2 ^ toggle
    if np.array_equal(predicted, table):
        return LinearForm(tuple(coeffs), toggle)
    return None


def linear_rules(space: str) -> list:
    """All rule numbers of a space passing :func:`is_linear`, ascending."""
    colors, template = SPACES[space]
    arity = len(template)
    digits = _index_digits(2, arity)
    found = set()
    for mask in range(2**arity):
        coeffs = [(mask >> (arity - 1 - j)) & 1 for j in range(arity)]
        base = (digits @ np.array(coeffs)) % 2
        for toggle in (0, 1):
            found.add(number_from_table(base ^ toggle, 2))
    return sorted(found)


def essential_linear_rules(space: str) -> list:
    """Linear rules that are also orbit representatives."""
    essential = set(essential_rules(space))
    return [n for n in linear_rules(space) if n in essential]


# Wolfram classes of the essential rules, keyed by representative.
ECA_WOLFRAM_CLASS = {
    **{n: 1 for n in (0, 8, 32, 40, 128, 136, 160, 168)},
    **{
        n: 2
        for n in (
            1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15, 19, 23, 24, 25,
            26, 27, 28, 29, 33, 34, 35, 36, 37, 38, 42, 43, 44, 46, 50, 51,
            56, 57, 58, 62, 72, 73, 74, 76, 77, 78, 94, 104, 108, 130, 132,
            134, 138, 140, 142, 152, 154, 156, 162, 164, 170, 172, 178, 184,
            200, 204, 232,
        )
    },
    **{n: 3 for n in (18, 22, 30, 45, 60, 90, 105, 122, 126, 146, 150)},
    **{n: 4 for n in (41, 54, 106, 110)},
}

PCA_WOLFRAM_CLASS = {0: 1, 8: 1, 1: 2, 2: 2, 3: 2, 10: 2, 6: 3}

_WOLFRAM_SEEDS = {"eca": ECA_WOLFRAM_CLASS, "pca": PCA_WOLFRAM_CLASS}

# Rules the classifier may not separate from class 3 on statistics alone.
CLASS4_SEED = {"eca": frozenset((41, 54, 106, 110)), "pca": frozenset()}


def wolfram_class(space: str, number: int):
    """Seeded Wolfram class of a rule, via its orbit representative."""
    seeds = _WOLFRAM_SEEDS.get(space)
    if seeds is None:
        return None
    return seeds.get(representative(space, number))


@dataclass(frozen=True)
class RuleCatalog:
    space: str
    classes: tuple
    linear: frozenset
    wolfram: dict


def build_catalog(space: str) -> RuleCatalog:
    classes = tuple(all_classes(space))
    linear = frozenset(linear_rules(space))
    seeds = _WOLFRAM_SEEDS.get(space, {})
    return RuleCatalog(space, classes, linear, dict(seeds))


def catalog_csv(catalog: RuleCatalog) -> str:
    """CSV dump, one line per equivalence class."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["representative", "members", "is_linear", "wolfram_class"])
    for cls in catalog.classes:
        label = catalog.wolfram.get(cls.representative)
        writer.writerow(
            [
                cls.representative,
                " ".join(str(m) for m in cls.members),
                str(cls.representative in catalog.linear).lower(),
                "" if label is None else label,
            ]
        )
    return buf.getvalue()
