"""
Checking the formulas by brute force
====================================

Twisted conjugacy classes can be counted directly: join g to
h g phi(h)^-1 for generators h inside a box of the group and count the
components that meet a small core. Growing the box only merges
components, so the count falls until it settles.
"""

from rzeta.group import AffineAut, DiagZ2Group, reidemeister_number, validate
from rzeta.oracles import oracle_windowed_classes, verify_random

fib = validate(DiagZ2Group(2, 2), AffineAut.of([[1, 1], [1, 0]]))

for m in (1, 3, 5):
    counts = [oracle_windowed_classes(fib, window=M, power=m, core=2).count for M in range(3, 10)]
    print(f"m = {m}: windows 3..9 -> {counts}   formula: {reidemeister_number(fib, m)}")

# the core has to be big enough to meet every class
print("m = 5 with core 1:", oracle_windowed_classes(fib, window=8, power=5, core=1).count)

print("\nrandom sweep:")
for rep in verify_random(20, seed=7, dim=5):
    print(rep.line())
