"""
Solution counts as periodic sequences
=====================================

For D invertible mod 2 and a vector d, let v_k count the x with

    (I - D^k) x = (I + D + ... + D^(k-1)) d    (mod 2).

These x are exactly the points fixed by the k-th iterate of the affine map
g(x) = D x + d, so v is a sum of the basic sequences a^i (value i when
i divides k, else 0), one for each g-cycle of length i.
"""

from rzeta.f2linalg import MatF2, VecF2
from rzeta.seqdecomp import BasisCombo, combine, decompose, decompose_blocks, solution_sequence

D = MatF2.from_rows([[1, 1], [1, 0]])
for d in ([0, 0], [1, 0]):
    dvec = VecF2.from_list(d)
    tables = solution_sequence(D, dvec, 9)
    combo = decompose(D, dvec)
    print(f"d = {d}:  v = {tables.v}  ->  c = {combo.coeffs}")

# translations alone: every orbit of x -> x + (1, 0) has length two
print("identity, d = (1, 0):", decompose(MatF2.identity(2), VecF2.from_list([1, 0])).coeffs)

# the block route agrees with cycle counting on a bigger example
D6 = MatF2.from_rows([
    [1, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
])
d6 = VecF2.from_list([0, 1, 0, 0, 0, 1])
print("\ncycle count:", decompose(D6, d6).coeffs)
print("block split:", decompose_blocks(D6, d6).coeffs)

# termwise products follow a^k a^l = gcd(k, l) a^lcm(k, l)
print("\n{c1=4} x {c1=1, c3=1} =", combine(BasisCombo({1: 4}), BasisCombo({1: 1, 3: 1})).coeffs)
print("{c2=2} x {c2=2}       =", combine(BasisCombo({2: 2}), BasisCombo({2: 2})).coeffs)
