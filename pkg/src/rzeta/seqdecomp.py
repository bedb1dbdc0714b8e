"""Decomposition of mod-2 solution counts into periodic basis sequences.

For ``D`` invertible over GF(2) and a vector ``d`` put

    v_k = #{x : (I - D^k) x = (I + D + ... + D^(k-1)) d}.

The sequence ``v`` is a finite nonnegative integer combination of the
sequences ``a^i`` (``a^i_k = i`` when ``i | k``, else 0). Two independent
routes compute the coefficients:

* :func:`decompose` enumerates GF(2)^n. The equation above says exactly
  that ``x`` is fixed by the k-th iterate of the affine map
  ``g(x) = D x + d``, so ``v_k`` counts points whose g-period divides k and
  ``c_i`` is the number of g-cycles of length ``i``.
* :func:`decompose_blocks` splits ``D`` into a unipotent block and a block
  without eigenvalue one, treats each block on its own and multiplies the
  results with :func:`combine`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .f2linalg import (
    DimensionError,
    MatF2,
    SingularMatrixError,
    VecF2,
    count_solutions,
    rank_and_solve,
    split_unipotent,
)

ENUMERATION_CAP = 20


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class BasisCombo:
    """``v = sum_i coeffs[i] * a^i`` on an ambient space GF(2)^ambient_dim."""

    coeffs: dict[int, int] = field(default_factory=dict)
    ambient_dim: int = 0

    def __post_init__(self):
        clean = {}
        for i, c in self.coeffs.items():
            if int(i) < 1:
                raise ValueError("basis index must be positive")
            if c < 0:
                raise ValueError("coefficients must be nonnegative")
            if c:
                clean[int(i)] = int(c)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((tuple(self.coeffs.items()), self.ambient_dim))

    @property
    def total(self) -> int:
        """``sum_i i * c_i``; equals ``2**ambient_dim`` for a complete decomposition."""
        return sum(i * c for i, c in self.coeffs.items())

    @property
    def support(self) -> list[int]:
        return list(self.coeffs)

    def __call__(self, k: int) -> int:
        return eval_combo(self, k)


def eval_combo(combo: BasisCombo, k: int) -> int:
    """k-th term of the combination: ``sum_{i | k} i * c_i``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return sum(i * c for i, c in combo.coeffs.items() if k % i == 0)


def combine(left: BasisCombo, right: BasisCombo) -> BasisCombo:
    """Combination for the termwise product of two sequences.

    Uses ``a^k * a^l = gcd(k, l) * a^lcm(k, l)``.
    """
    out: dict[int, int] = {}
    for i, c in left.coeffs.items():
        for j, e in right.coeffs.items():
            key = _lcm(i, j)
            out[key] = out.get(key, 0) + c * e * gcd(i, j)
    return BasisCombo(out, left.ambient_dim + right.ambient_dim)


@dataclass(frozen=True)
class SeqTables:
    v: list[int]
    w: list[int]

    @property
    def horizon(self) -> int:
        return len(self.v)


def _check_input(dbar: MatF2, dvec: VecF2) -> None:
    if not dbar.is_square:
        raise DimensionError("D must be square")
    if dvec.len != dbar.rows:
        raise DimensionError("d has the wrong length")
    if not dbar.is_invertible():
        raise SingularMatrixError("D is singular over GF(2)")


def solution_sequence(dbar: MatF2, dvec: VecF2, horizon: int) -> SeqTables:
    """``v_k`` and ``w_k`` for ``k = 1 .. horizon``.

    ``v_k`` comes from Gaussian elimination at each power; ``w_k`` (the
    number of solutions at k that solve no earlier system) follows from
    ``V_k`` being the disjoint union of the ``W_j`` with ``j | k``.
    """
    _check_input(dbar, dvec)
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    n = dbar.rows
    ident = MatF2.identity(n)
    power = ident          # D^k
    rhs = VecF2.zero(n)    # (I + ... + D^(k-1)) d
    v: list[int] = []
    for _ in range(horizon):
        rhs = rhs + power @ dvec
        power = power @ dbar
        v.append(count_solutions(ident + power, rhs))
    w = [0] * (horizon + 1)
    for k in range(1, horizon + 1):
        w[k] = v[k - 1] - sum(w[j] for j in range(1, k) if k % j == 0)
    return SeqTables(v=v, w=w[1:])


def affine_image_table(dbar: MatF2, dvec: VecF2) -> np.ndarray:
    """``g(x) = D x + d`` for every ``x`` in GF(2)^n, indexed by the packed ``x``."""
    n = dbar.rows
    table = np.zeros(1 << n, dtype=np.int64)
    table[0] = dvec.bits
    for j in range(n):
        col = dbar.column(j).bits
        table[1 << j: 1 << (j + 1)] = table[: 1 << j] ^ col
    return table


def decompose(dbar: MatF2, dvec: VecF2) -> BasisCombo:
    """Coefficients ``c_i`` with ``v_k = sum_i c_i a^i_k`` for every ``k``.

    Counts the cycles of the affine permutation ``x -> D x + d`` of GF(2)^n
    by walking each orbit once; ``c_i`` is the number of cycles of length i.
    """
    _check_input(dbar, dvec)
    n = dbar.rows
    if n > ENUMERATION_CAP:
        raise ValueError(f"enumeration is capped at n = {ENUMERATION_CAP}")
    image = affine_image_table(dbar, dvec).tolist()
    seen = bytearray(1 << n)
    cycles: dict[int, int] = {}
    for start in range(1 << n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            x = image[x]
            length += 1
        # g is a bijection, so each new orbit closes on its own start
        cycles[length] = cycles.get(length, 0) + 1
    return BasisCombo(cycles, n)


def _mult_order(m: MatF2) -> int:
    ident = MatF2.identity(m.rows)
    power, k = m, 1
    while power != ident:
        power = power @ m
        k += 1
    return k


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _decompose_no_eigenvalue_one(d2: MatF2) -> BasisCombo:
    # I - D is invertible, so a shift of x removes d; count kernels of I - D^k
    l = d2.rows
    if l == 0:
        return BasisCombo({1: 1}, 0)
    order = _mult_order(d2)
    ident = MatF2.identity(l)
    w: dict[int, int] = {}
    for k in _divisors(order):
        v_k = 1 << len((ident + d2 ** k).nullspace())
        w[k] = v_k - sum(w[j] for j in w if k % j == 0)
    coeffs = {}
    for k, wk in w.items():
        if wk % k:
            raise ArithmeticError(f"w_{k} = {wk} is not divisible by {k}")
        coeffs[k] = wk // k
    return BasisCombo(coeffs, l)


def _decompose_unipotent(d1: MatF2, vec: VecF2) -> BasisCombo:
    # only powers of two carry new solutions; V_{2^r} grows until it is everything
    k = d1.rows
    if k == 0:
        return BasisCombo({1: 1}, 0)
    ident = MatF2.identity(k)
    power = d1          # D^(2^r)
    geo = ident         # I + D + ... + D^(2^r - 1)
    coeffs: dict[int, int] = {}
    prev = 0
    r = 0
    while True:
        v = count_solutions(ident + power, geo @ vec)
        w = v - prev
        if w % (1 << r):
            raise ArithmeticError(f"w_{1 << r} = {w} is not divisible by {1 << r}")
        if w:
            coeffs[1 << r] = w >> r
        prev = v
        if v == 1 << k:
            break
        geo = geo + power @ geo
        power = power @ power
        r += 1
        if r > k + 1:
            raise ArithmeticError("unipotent block failed to stabilise")
    return BasisCombo(coeffs, k)


def decompose_blocks(dbar: MatF2, dvec: VecF2) -> BasisCombo:
    """Same result as :func:`decompose`, via the unipotent / non-unipotent split."""
    _check_input(dbar, dvec)
    split = split_unipotent(dbar)
    moved = split.p @ dvec
    d1_vec, _ = moved.split(split.size_unipotent)
    first = _decompose_unipotent(split.d1, d1_vec)
    second = _decompose_no_eigenvalue_one(split.d2)
    return combine(first, second)


def shift_vector(dbar: MatF2, dvec: VecF2) -> VecF2 | None:
    """``d0`` with ``(I - D) d0 = d`` when it exists."""
    out = rank_and_solve(MatF2.identity(dbar.rows) + dbar, dvec)
    return out.solution if out.consistent else None
