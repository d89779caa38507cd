"""Binary rules embedded in the 4-colour rule space.

Reading each 2-cell block of a binary automaton as one 4-colour supercell
turns a width-2 code into a change of basis: every pair of 4-colour
digits (x, y) hosts a copy of the binary rules. The exponent table lists
where the binary truth-table digits land inside the 4-colour rule
number, and only 28 of the 256 possible digit assignments keep rule 54's
supercell evolution inside a single two-digit alphabet.
"""

import itertools

from caemu.colorbasis import all_bases, basis_01, classify_lifted, lift_rule, project_lifted
from caemu.engine import RuleSpec

print("digit pair -> rule-number exponents (4 colours, 3-cell neighbourhoods)")
for b in all_bases(4):
    print(f"  ({b.x},{b.y}): {b.exponents}")

b01 = basis_01(4)
lifted = lift_rule(RuleSpec.eca(50), b01)
print(f"\nrule 50 lifted along (0,1): {lifted}")
print(f"projected back: {project_lifted(lifted, b01)}")

blocks = list(itertools.product((0, 1), repeat=2))
kept = [
    assignment
    for assignment in itertools.product(blocks, repeat=4)
    if classify_lifted(RuleSpec.eca(54), assignment).in_2color_basis
]
print(f"\nrule 54: {len(kept)} of 256 digit-to-block maps stay two-coloured")

result = classify_lifted(RuleSpec.eca(38), {6: (0, 0, 1), 7: (1, 0, 1)})
print(
    f"rule 38, supercell digits 6,7 recoded as 001/101: lands in digit pair {result.pair}"
)
