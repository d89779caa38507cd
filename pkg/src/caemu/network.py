"""Directed emulation graphs over verified records, plus exports.

Nodes are rule numbers; an edge runs from emulator to emulated rule and
aggregates every verified projection found for that ordered pair.  The
statistics here (degree by complexity class, emulated-count ranking) are
what the network figures plot.
"""

from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .emulation import Projection
from .engine import RuleSpec, SpaceTime
from .search import EmulationRecord


def trivial_targets(space_or_rule) -> frozenset:
    """The zero rule and its complement (the constant rules)."""
    if isinstance(space_or_rule, RuleSpec):
        size = space_or_rule.colors ** space_or_rule.table_size
    else:
        from .rulespace import SPACES

        colors, template = SPACES[space_or_rule]
        size = colors ** colors ** len(template)
    return frozenset((0, size - 1))


@dataclass(frozen=True)
class EmulationEdge:
    emulator: int
    emulated: int
    min_block_size: int
    emulation_count: int
    projections: tuple  # of (block_size, blocks) sorted by (k, code)


@dataclass(frozen=True)
class EmulationNetwork:
    nodes: tuple
    edges: tuple
    profiles: dict = field(default=None, compare=False)

    def edge(self, emulator: int, emulated: int) -> EmulationEdge:
        for e in self.edges:
            if e.emulator == emulator and e.emulated == emulated:
                return e
        raise KeyError((emulator, emulated))

    @property
    def self_emulating(self) -> tuple:
        return tuple(sorted({e.emulator for e in self.edges if e.emulator == e.emulated}))


def _code_key(item):
    k, blocks = item
    return (k, tuple(c for b in blocks for c in b))


def build_network(records, nontrivial: bool = False, profiles: dict = None,
                  space: str = None) -> EmulationNetwork:
    """Aggregate verified records into an attributed directed graph.

    ``nontrivial`` drops records whose emulated rule is a constant rule
    (the zero rule or its complement); those targets are reachable from
    almost everywhere and drown the structure of the graph.  The rule
    space is inferred from the largest rule number present; pass
    ``space`` explicitly when a small-number subset would be ambiguous.
    """
    records = tuple(records)
    for rec in records:
        if rec.status != "verified":
            raise ValueError(f"network accepts verified records only, got {rec.status}")
    dropped = frozenset()
    if nontrivial:
        if space is not None:
            dropped = trivial_targets(space)
        elif records:
            top = max(max(r.emulator, r.emulated) for r in records)
            for arity in (2, 3, 4):
                size = 2 ** 2**arity
                if top < size:
                    dropped = frozenset((0, size - 1))
                    break
            else:
                raise ValueError(f"rule number {top} outside the supported spaces")
    grouped = {}
    nodes = set()
    for rec in records:
        if rec.emulated in dropped:
            continue
        pair = (rec.emulator, rec.emulated)
        grouped.setdefault(pair, set()).add((rec.block_size, rec.projection.blocks))
        nodes.update(pair)
    edges = []
    for (a, b), codes in sorted(grouped.items()):
        ordered = tuple(sorted(codes, key=_code_key))
        edges.append(
            EmulationEdge(a, b, min(k for k, _ in ordered), len(ordered), ordered)
        )
    return EmulationNetwork(tuple(sorted(nodes)), tuple(edges), profiles)


def degree(net: EmulationNetwork, direction: str = "in") -> dict:
    """Weighted node degree: total emulation_count on incident edges."""
    if direction not in ("in", "out"):
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")
    side = (lambda e: e.emulated) if direction == "in" else (lambda e: e.emulator)
    out = {node: 0 for node in net.nodes}
    for e in net.edges:
        out[side(e)] += e.emulation_count
    return out


def degree_by_class(net: EmulationNetwork, profiles: dict, direction: str = "in") -> dict:
    """Node degrees grouped by the node's complexity class label."""
    degrees = degree(net, direction)
    grouped = {}
    for node, d in degrees.items():
        label = profiles[node].class_label if hasattr(profiles[node], "class_label") else profiles[node]
        grouped.setdefault(label, []).append(d)
    return {label: tuple(sorted(ds)) for label, ds in grouped.items()}


def emulated_ranking(net: EmulationNetwork) -> tuple:
    """(rule, times emulated) sorted by count desc, rule number asc."""
    counts = degree(net, "in")
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return tuple(ranked)


def k_bound(rec: EmulationRecord) -> str:
    """Conditional-complexity bound implied by a verified emulation."""
    if rec.status != "verified":
        raise ValueError("the complexity bound holds for verified records only")
    return f"|K({rec.emulator}) - K({rec.emulated})| < {rec.block_size}"


def to_dot(net: EmulationNetwork) -> str:
    """Graphviz digraph; edge label = min block size, weight = count."""
    lines = ["digraph emulations {"]
    for node in net.nodes:
        attrs = ""
        if net.profiles and node in net.profiles:
            label = getattr(net.profiles[node], "class_label", net.profiles[node])
            attrs = f' [class="{label}"]'
        lines.append(f'  "{node}"{attrs};')
    for e in net.edges:
        lines.append(
            f'  "{e.emulator}" -> "{e.emulated}" '
            f'[label="{e.min_block_size}", weight="{e.emulation_count}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graphml(net: EmulationNetwork) -> str:
    root = ET.Element("graphml", xmlns="http://graphml.graphdrawing.org/xmlns")
    for key_id, target, name, kind in (
        ("d0", "node", "class", "string"),
        ("d1", "edge", "min_block_size", "int"),
        ("d2", "edge", "emulation_count", "int"),
    ):
        ET.SubElement(
            root, "key", id=key_id, **{"for": target, "attr.name": name, "attr.type": kind}
        )
    graph = ET.SubElement(root, "graph", id="emulations", edgedefault="directed")
    for node in net.nodes:
        el = ET.SubElement(graph, "node", id=str(node))
        if net.profiles and node in net.profiles:
            data = ET.SubElement(el, "data", key="d0")
            data.text = str(getattr(net.profiles[node], "class_label", net.profiles[node]))
    for e in net.edges:
        el = ET.SubElement(graph, "edge", source=str(e.emulator), target=str(e.emulated))
        ET.SubElement(el, "data", key="d1").text = str(e.min_block_size)
        ET.SubElement(el, "data", key="d2").text = str(e.emulation_count)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


CSV_HEADER = ("emulator", "emulated", "k", "code_for_0", "code_for_1", "status")


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(
            (
                rec.emulator,
                rec.emulated if rec.emulated is not None else "",
                rec.block_size,
                rec.projection.code(0),
                rec.projection.code(1),
                rec.status,
            )
        )
    return buf.getvalue()


def records_from_csv(text: str) -> tuple:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected record CSV header {header}")
    records = []
    for row in reader:
        if not row:
            continue
        emulator, emulated, k, code0, code1, status = row
        p = Projection.from_codes(code0, code1)
        if p.block_size != int(k):
            raise ValueError(f"block size column {k} disagrees with codes {code0}/{code1}")
        records.append(
            EmulationRecord(
                emulator=int(emulator),
                emulated=int(emulated) if emulated else None,
                projection=p,
                block_size=int(k),
                time_scale=int(k),
                status=status,
            )
        )
    return tuple(records)


def ranking_csv(net: EmulationNetwork) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("rule", "emulated_count"))
    for rule, count in emulated_ranking(net):
        writer.writerow((rule, count))
    return buf.getvalue()


def degree_csv(net: EmulationNetwork, profiles: dict, direction: str = "in") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("class", "degrees"))
    for label, ds in sorted(degree_by_class(net, profiles, direction).items(), key=lambda i: str(i[0])):
        writer.writerow((label, " ".join(map(str, ds))))
    return buf.getvalue()


def write_pbm(st: SpaceTime) -> str:
    """Plain PBM (P1) rendering of a binary space-time, row per step."""
    rows = st.rows
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError("PBM export needs a rectangular space-time (cyclic boundary)")
    width = widths.pop()
    lines = ["P1", f"{width} {len(rows)}"]
    for row in rows:
        if any(c not in (0, 1) for c in row.tolist()):
            raise ValueError("PBM export is defined for binary states only")
        lines.append(" ".join(str(int(c)) for c in row))
    return "\n".join(lines) + "\n"
