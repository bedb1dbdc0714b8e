"""Exact integer matrices and polynomials.

Everything here works on Python integers, so nothing overflows. Matrices
are small (dimension up to ten or so) but their entries can get large when
raised to high powers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


class NonSquareError(ValueError):
    pass


@dataclass(frozen=True)
class MatZ:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> MatZ:
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> MatZ:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> MatZ:
        cols = rows if cols is None else cols
        return cls(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def block_diag(cls, a: MatZ, b: MatZ) -> MatZ:
        top = tuple(r + (0,) * b.cols for r in a.entries)
        bot = tuple((0,) * a.cols + r for r in b.entries)
        return cls(top + bot)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> MatZ:
        return MatZ(tuple(r[c0:c1] for r in self.entries[r0:r1]))

    def transpose(self) -> MatZ:
        return MatZ(tuple(zip(*self.entries))) if self.entries else self

    def __add__(self, other: MatZ) -> MatZ:
        return MatZ(tuple(tuple(x + y for x, y in zip(r, s))
                          for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: MatZ) -> MatZ:
        return MatZ(tuple(tuple(x - y for x, y in zip(r, s))
                          for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> MatZ:
        return MatZ(tuple(tuple(-x for x in r) for r in self.entries))

    def scale(self, c: int) -> MatZ:
        return MatZ(tuple(tuple(c * x for x in r) for r in self.entries))

    def __matmul__(self, other):
        if isinstance(other, MatZ):
            if self.cols != other.rows:
                raise ValueError("shapes do not match")
            cols = list(zip(*other.entries))
            return MatZ(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                              for r in self.entries))
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("shapes do not match")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.entries)

    def mod2(self) -> "MatF2":
        from .f2linalg import MatF2
        return MatF2.from_rows([[x & 1 for x in r] for r in self.entries], self.cols)

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.rows))


def _square(a: MatZ) -> None:
    if not a.is_square:
        raise NonSquareError(f"expected a square matrix, got {a.rows}x{a.cols}")


# polynomials: ascending coefficient tuples with no trailing zeros

@dataclass(frozen=True)
class PolyZ:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def of(cls, *coeffs: int) -> PolyZ:
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: PolyZ) -> PolyZ:
        return PolyZ(tuple(poly_mul(self.coeffs, other.coeffs)))

    def __add__(self, other: PolyZ) -> PolyZ:
        return PolyZ(tuple(poly_add(self.coeffs, other.coeffs)))

    def __sub__(self, other: PolyZ) -> PolyZ:
        return PolyZ(tuple(poly_add(self.coeffs, [-c for c in other.coeffs])))

    def __pow__(self, k: int) -> PolyZ:
        out = PolyZ((1,))
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: PolyZ) -> tuple[PolyZ, PolyZ]:
        """Division by a monic (or unit-leading) polynomial, exact over the integers."""
        q, r = poly_divmod(self.coeffs, other.coeffs)
        for c in q + r:
            if Fraction(c).denominator != 1:
                raise ArithmeticError("division is not exact over the integers")
        return PolyZ(tuple(int(c) for c in q)), PolyZ(tuple(int(c) for c in r))

    def __repr__(self):
        return f"PolyZ({list(self.coeffs)})"


def poly_trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Long division over the rationals; integer inputs stay integral when q is monic."""
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = poly_trim(p)
    lead = q[-1]
    if len(r) < len(q):
        return [], r
    quot = [0] * (len(r) - len(q) + 1)
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        top = r[-1]
        if isinstance(top, int) and isinstance(lead, int):
            c = top // lead if top % lead == 0 else Fraction(top, lead)
        else:
            c = top / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = poly_trim(r)
    return poly_trim(quot), r


# determinants

def det(a: MatZ) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    _square(a)
    n = a.rows
    if n == 0:
        return 1
    m = [list(r) for r in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            rik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def det_rational(a: MatZ) -> int:
    """Determinant by Gaussian elimination over the rationals, pivoting on columns.

    Independent of :func:`det` (different elimination order and arithmetic);
    used to cross-check it.
    """
    _square(a)
    n = a.rows
    m = [[Fraction(x) for x in col] for col in zip(*a.entries)] if n else []
    result = Fraction(1)
    for k in range(n - 1, -1, -1):
        piv = next((i for i in range(k, -1, -1) if m[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            result = -result
        pk = m[k][k]
        result *= pk
        for i in range(k):
            f = m[i][k] / pk
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    assert result.denominator == 1
    return int(result)


def mat_pow(a: MatZ, k: int) -> MatZ:
    """``a ** k`` by repeated squaring; ``a ** 0`` is the identity."""
    _square(a)
    if k < 0:
        raise ValueError("negative exponent")
    result = MatZ.identity(a.rows)
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def geometric_sum(a: MatZ, k: int) -> MatZ:
    """``I + a + ... + a**(k-1)``, computed by doubling."""
    _square(a)
    if k < 1:
        raise ValueError("k must be at least 1")
    ident = MatZ.identity(a.rows)
    # invariant: total = sum_{i<m} a^i, power = a^m
    total, power, m = ident, a, 1
    for bit in bin(k)[3:]:
        total = total + power @ total
        power = power @ power
        m *= 2
        if bit == "1":
            total = ident + a @ total
            power = power @ a
            m += 1
    assert m == k
    return total


def charpoly(a: MatZ) -> PolyZ:
    """Characteristic polynomial ``det(x I - a)`` via Faddeev-LeVerrier.

    The divisions in the recurrence are exact over the integers.
    """
    _square(a)
    n = a.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = MatZ.zero(n)
    ident = MatZ.identity(n)
    for k in range(1, n + 1):
        m = a @ m + ident.scale(coeffs[n - k + 1])
        t = (a @ m).trace()
        if t % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = -t // k
    return PolyZ(tuple(coeffs))


def power_sums(p: PolyZ, count: int) -> list[int]:
    """Power sums ``s_1 .. s_count`` of the roots of monic ``p`` (Newton's identities)."""
    n = p.degree
    c = p.coeffs
    # e-style coefficients: p = x^n + a1 x^(n-1) + ... + an
    a = [c[n - i] for i in range(n + 1)]
    s = [0] * (count + 1)
    for k in range(1, count + 1):
        total = -k * a[k] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            total -= a[i] * s[k - i]
        s[k] = total
    return s[1:]


def poly_from_power_sums(sums: Sequence[int], n: int) -> PolyZ:
    """Monic degree ``n`` polynomial whose roots have the given first ``n`` power sums."""
    a = [1] + [0] * n
    for k in range(1, n + 1):
        total = sums[k - 1]
        for i in range(1, k):
            total += a[i] * sums[k - i - 1]
        if total % k:
            raise ArithmeticError("power sums are not those of an integer polynomial")
        a[k] = -total // k
    return PolyZ(tuple(reversed(a)))


def det_one_minus_power(a: MatZ, k: int) -> int:
    """``det(I - a**k)`` from the characteristic polynomial alone.

    The power sums of the eigenvalues of ``a**k`` are every k-th power sum
    of ``a``; rebuilding the characteristic polynomial of ``a**k`` from those
    and evaluating at one gives the determinant without forming ``a**k``.
    """
    _square(a)
    n = a.rows
    if n == 0:
        return 1
    s = power_sums(charpoly(a), n * k)
    return poly_from_power_sums([s[j * k - 1] for j in range(1, n + 1)], n)(1)


def smith_normal_form(a: MatZ) -> list[int]:
    """Diagonal of the Smith normal form: nonnegative, each dividing the next."""
    _square(a)
    n = a.rows
    m = [list(r) for r in a.entries]
    for t in range(n):
        while True:
            nz = [(abs(m[i][j]), i, j) for i in range(t, n) for j in range(t, n) if m[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            m[t], m[pi] = m[pi], m[t]
            for row in m:
                row[t], row[pj] = row[pj], row[t]
            p = m[t][t]
            done = True
            for i in range(t + 1, n):
                q = m[i][t] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                if m[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: fold a row holding an entry p does not divide into row t
            bad = next((i for i in range(t + 1, n) for j in range(t + 1, n)
                        if m[i][j] % p), None)
            if bad is None:
                break
            m[t] = [x + y for x, y in zip(m[t], m[bad])]
    diag = [abs(m[i][i]) for i in range(n)]
    # zeros (singular case) go last
    nonzero = [d for d in diag if d]
    return nonzero + [0] * (n - len(nonzero))


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> PolyZ:
    """The m-th cyclotomic polynomial, ``(x^m - 1) / prod_{d | m, d < m} Phi_d``."""
    if m < 1:
        raise ValueError("m must be positive")
    num = PolyZ((-1,) + (0,) * (m - 1) + (1,))
    for d in range(1, m):
        if m % d == 0:
            num, rem = num.divmod(cyclotomic(d))
            if not rem.is_zero():
                raise ArithmeticError("cyclotomic recursion left a remainder")
    return num


def euler_phi(m: int) -> int:
    return sum(1 for j in range(1, m + 1) if gcd(j, m) == 1)


def cyclotomic_divisors(a: MatZ, n: int | None = None) -> list[int]:
    """All ``m`` such that Phi_m divides the characteristic polynomial of ``a``.

    Scans ``m <= 2 n^2 + 2``, which covers every m with ``euler_phi(m) <= n``.
    """
    _square(a)
    n = a.rows if n is None else n
    cp = charpoly(a)
    found = []
    for m in range(1, 2 * n * n + 3):
        phi = cyclotomic(m)
        if phi.degree > n:
            continue
        _, rem = cp.divmod(phi)
        if rem.is_zero():
            found.append(m)
    return found


def has_root_of_unity_eigenvalue(a: MatZ, n: int | None = None) -> bool:
    """True iff some eigenvalue of the (nonsingular) matrix is a root of unity."""
    _square(a)
    if det(a) == 0:
        raise ValueError("matrix is singular")
    return bool(cyclotomic_divisors(a, n))
