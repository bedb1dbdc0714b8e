"""
Linear algebra over the two-element field
=========================================

Matrices over GF(2) are stored one Python int per row. This walk-through
solves a small system, then splits an invertible matrix into a unipotent
block and a block without eigenvalue one.
"""

from rzeta.f2linalg import MatF2, VecF2, count_solutions, rank_and_solve, split_unipotent

# a rank one system: x0 + x1 = 1 twice
a = MatF2.from_rows([[1, 1], [1, 1]])
b = VecF2.from_list([1, 1])
out = rank_and_solve(a, b)
print("consistent:", out.consistent, " particular solution:", out.solution.to_list(),
      " nullity:", out.nullity)
print("number of solutions:", count_solutions(a, b))

# characteristic polynomial (x + 1)^2 (x^2 + x + 1), with the two parts coupled
D = MatF2.from_rows([
    [1, 0, 0, 0],
    [1, 1, 0, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 1],
])
s = split_unipotent(D)
print("\nunipotent block size:", s.size_unipotent)
print("P D P^-1 =")
for row in s.block_diagonal().to_lists():
    print("   ", row)

# the conjugation really reproduces D
assert s.p.inverse() @ s.block_diagonal() @ s.p == D
print("D1 - I is nilpotent:", ((s.d1 + MatF2.identity(s.size_unipotent)) ** s.size_unipotent).is_zero())
print("I - D2 invertible:  ", (s.d2 + MatF2.identity(s.d2.rows)).is_invertible())
