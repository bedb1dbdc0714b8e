"""Crystallographic groups with diagonal holonomy Z_2 and their automorphisms.

The group is ``<Z^k, (0, -I_k)> x Z^(n-k)``: integer translations of R^n
together with the point reflection ``J = -I_k (+) I_(n-k)``. An automorphism
is given by affine data ``(d, D)``: ``D`` in GL_n(Z) commuting with ``J``
and an integer vector ``d`` whose first ``k`` coordinates matter mod 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .f2linalg import MatF2, VecF2, count_solutions
from .intlinalg import MatZ, cyclotomic, cyclotomic_divisors, det, mat_pow

INFINITE = float("inf")

NON_UNIMODULAR = "NON_UNIMODULAR"
BLOCK_MIXING = "BLOCK_MIXING"
BAD_SHAPE = "BAD_SHAPE"


class ValidationError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class DiagZ2Group:
    n: int
    holonomy_rank: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.holonomy_rank <= self.n:
            raise ValidationError(BAD_SHAPE, f"need 0 <= k <= n, got n={self.n}, k={self.holonomy_rank}")

    @property
    def k(self) -> int:
        return self.holonomy_rank

    @property
    def reflection(self) -> tuple[int, ...]:
        """Diagonal of ``J``."""
        return (-1,) * self.k + (1,) * (self.n - self.k)

    @property
    def has_r_infinity(self) -> bool:
        # Z^(n-1) quotient leaves <Z, (0, -1)>, which has the R_infinity property
        return self.k == 1


@dataclass(frozen=True)
class AffineAut:
    d: tuple[int, ...]
    D: MatZ

    @classmethod
    def of(cls, D: Sequence[Sequence[int]], d: Sequence[int] | None = None) -> AffineAut:
        D = MatZ.of(D)
        d = tuple(int(x) for x in d) if d is not None else (0,) * D.rows
        return cls(d, D)


@dataclass(frozen=True)
class Automorphism:
    """Validated automorphism, with its factors on ``Gamma_1`` and the torus."""

    group: DiagZ2Group
    aut: AffineAut
    D1: MatZ
    d1: tuple[int, ...]
    D2: MatZ

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def k(self) -> int:
        return self.group.k

    @property
    def D(self) -> MatZ:
        return self.aut.D

    @property
    def dbar1(self) -> MatF2:
        return self.D1.mod2()

    @property
    def dvec1(self) -> VecF2:
        return VecF2.from_list(x & 1 for x in self.d1)


def validate(g: DiagZ2Group, aut: AffineAut) -> Automorphism:
    n, k = g.n, g.k
    D = aut.D
    if D.rows != n or D.cols != n:
        raise ValidationError(BAD_SHAPE, f"D must be {n}x{n}, got {D.rows}x{D.cols}")
    if len(aut.d) != n:
        raise ValidationError(BAD_SHAPE, f"d must have length {n}, got {len(aut.d)}")
    if 0 < k < n:
        mixed = any(D[i, j] for i in range(k) for j in range(k, n)) or \
            any(D[i, j] for i in range(k, n) for j in range(k))
        if mixed:
            raise ValidationError(BLOCK_MIXING, "D must be block diagonal for the split Z^k x Z^(n-k)")
    dv = det(D)
    if dv not in (1, -1):
        raise ValidationError(NON_UNIMODULAR, f"det D = {dv}")
    return Automorphism(group=g, aut=aut, D1=D.block(0, k, 0, k), d1=tuple(aut.d[:k]),
                        D2=D.block(k, n, k, n))


def _det_pm(power: MatZ) -> tuple[int, int]:
    ident = MatZ.identity(power.rows)
    return det(ident - power), det(ident + power)


def first_term(D1_power: MatZ) -> int:
    """``(|det(I - M)| + |det(I + M)|) / 2``; the sum is always even."""
    minus, plus = _det_pm(D1_power)
    total = abs(minus) + abs(plus)
    if total % 2:
        raise ArithmeticError("odd determinant sum")
    return total // 2


def is_finite(auto: Automorphism, power: int = 1) -> bool:
    """``R(phi^m) < infinity``: ``det(I - A D^m) != 0`` for both holonomy elements."""
    Dm = mat_pow(auto.D, power)
    ident = MatZ.identity(auto.n)
    J = MatZ(tuple(tuple(auto.group.reflection[i] if i == j else 0 for j in range(auto.n))
                   for i in range(auto.n)))
    return det(ident - Dm) != 0 and det(ident - J @ Dm) != 0


def _gamma1_number(D1m: MatZ, dbar: MatF2, rhs: VecF2) -> int:
    ident = MatF2.identity(dbar.rows)
    return first_term(D1m) + count_solutions(ident + D1m.mod2(), rhs)


def reidemeister_numbers(auto: Automorphism, count: int) -> list[int | float]:
    """``R(phi^m)`` for ``m = 1 .. count``; ``INFINITE`` where not finite."""
    k, n = auto.k, auto.n
    out: list[int | float] = []
    D1, D2 = auto.D1, auto.D2
    dbar, dvec = auto.dbar1, auto.dvec1
    P1 = MatZ.identity(k)
    P2 = MatZ.identity(n - k)
    Pbar = MatF2.identity(k)
    rhs = VecF2.zero(k)
    I2 = MatZ.identity(n - k)
    for _ in range(count):
        rhs = rhs + Pbar @ dvec
        Pbar = Pbar @ dbar
        P1 = P1 @ D1
        P2 = P2 @ D2
        torus = abs(det(I2 - P2))
        if k:
            minus, plus = _det_pm(P1)
            finite = minus != 0 and plus != 0 and torus != 0
        else:
            finite = torus != 0
        if not finite:
            out.append(INFINITE)
            continue
        value = torus
        if k:
            value *= _gamma1_number(P1, dbar, rhs)
        out.append(value)
    return out


def reidemeister_number(auto: Automorphism, power: int = 1) -> int | float:
    """``R(phi^m)``.

    For ``k > 0`` this is ``T_m * |det(I - D2^m)|`` with

        T_m = (|det(I - D1^m)| + |det(I + D1^m)|) / 2 + O_m,

    where ``O_m`` counts the mod-2 solutions of
    ``(I - D1^m) x = (I + D1 + ... + D1^(m-1)) d1``. Returns ``INFINITE``
    when some ``det(I - A D^m)`` vanishes (always the case for ``k = 1``).
    """
    if power < 1:
        raise ValueError("power must be at least 1")
    if not is_finite(auto, power):
        return INFINITE
    k, n = auto.k, auto.n
    torus = abs(det(MatZ.identity(n - k) - mat_pow(auto.D2, power)))
    if k == 0:
        return torus
    dbar = auto.dbar1
    geo = MatF2.zero(k)
    p = MatF2.identity(k)
    for _ in range(power):
        geo = geo + p
        p = p @ dbar
    return torus * _gamma1_number(mat_pow(auto.D1, power), dbar, geo @ auto.dvec1)


@dataclass(frozen=True)
class Existence:
    exists: bool
    reason: str | None = None
    cyclotomic_index: int | None = None


def zeta_exists(auto: Automorphism) -> Existence:
    """Whether every ``R(phi^m)`` is finite, so that the zeta function is defined.

    Fails for ``k = 1`` and whenever ``D`` has an eigenvalue that is a root of
    unity (some power then has eigenvalue one or minus one).
    """
    if auto.group.has_r_infinity:
        return Existence(False, "R_infinity: k = 1, quotient <Z, (0,-1)> has the R_infinity property")
    if auto.n == 0:
        return Existence(True)
    found = cyclotomic_divisors(auto.D)
    if found:
        m = found[0]
        poly = cyclotomic(m)
        return Existence(False, f"Phi_{m} = {list(poly.coeffs)} divides the characteristic polynomial of D", m)
    return Existence(True)
