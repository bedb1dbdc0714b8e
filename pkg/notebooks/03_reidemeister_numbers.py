"""
Reidemeister numbers of powers
==============================

Three automorphisms: the Fibonacci matrix on the group with full holonomy
rank, the cat map on the plain torus Z^2, and their product.
"""

from rzeta.group import AffineAut, DiagZ2Group, reidemeister_numbers, validate, zeta_exists

fib = validate(DiagZ2Group(2, 2), AffineAut.of([[1, 1], [1, 0]], [0, 0]))
cat = validate(DiagZ2Group(2, 0), AffineAut.of([[2, 1], [1, 1]]))
both = validate(DiagZ2Group(4, 2), AffineAut.of([
    [1, 1, 0, 0],
    [1, 0, 0, 0],
    [0, 0, 2, 1],
    [0, 0, 1, 1],
]))

rf = reidemeister_numbers(fib, 10)
rc = reidemeister_numbers(cat, 10)
rb = reidemeister_numbers(both, 10)
print(" m   fib   cat   product")
for m in range(10):
    print(f"{m + 1:2d} {rf[m]:5d} {rc[m]:5d} {rb[m]:9d}")

# Lucas numbers plus 1, 1, 4, 1, 1, 4, ...
lucas = [1, 3, 4, 7, 11, 18, 29, 47, 76, 123]
print("\nfib minus Lucas:", [r - l for r, l in zip(rf, lucas)])
print("product rule holds:", rb == [a * b for a, b in zip(rf, rc)])

# holonomy rank one forces infinitely many classes
rank_one = validate(DiagZ2Group(3, 1), AffineAut.of([[-1, 0, 0], [0, 2, 1], [0, 1, 1]]))
print("\nk = 1:", reidemeister_numbers(rank_one, 3), "-", zeta_exists(rank_one).reason)
