"""Who can compute whom among the 16 two-neighbour rules.

Searches every (rule, block size) cell up to size 3, proves each find,
and assembles the directed emulation graph. Eight rules emulate
themselves through a nontrivial recoding; a handful need size-3 codes
and only to reach the constant rules.
"""

from caemu.engine import RuleSpec
from caemu.network import build_network, emulated_ranking, to_dot
from caemu.search import search_emulations

records = []
for n in range(16):
    for k in (2, 3):
        records.extend(search_emulations(RuleSpec.pca(n), k))
print(f"{len(records)} proven emulations across 16 rules, block sizes 2-3")

net = build_network(records, nontrivial=True, space="pca")
print(f"self-emulating (nontrivial targets): {net.self_emulating}")

full = build_network(records, space="pca")
worst = sorted(
    (e.emulator, e.emulated) for e in full.edges if e.min_block_size == 3
)
print(f"edges needing size-3 codes: {worst}")

print("most-emulated rules:")
for rule, count in emulated_ranking(full)[:5]:
    print(f"  rule {rule:2d}: emulated {count} ways")

with open("pca_network.dot", "w") as f:
    f.write(to_dot(full))
print("wrote pca_network.dot (render with: dot -Tsvg pca_network.dot)")
