"""Linear algebra over the two-element field.

Rows and vectors are packed into Python integers: bit ``j`` of a row holds
the entry in column ``j``. Elimination is word-wide XOR on those integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operand shapes do not fit together."""


class SingularMatrixError(ValueError):
    """An invertible matrix was required."""


def _mask(width: int) -> int:
    return (1 << width) - 1


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class VecF2:
    len: int
    bits: int = 0

    def __post_init__(self):
        if self.len < 0:
            raise DimensionError("negative length")
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError("bits outside the vector length")

    @classmethod
    def from_list(cls, entries: Iterable[int]) -> VecF2:
        entries = list(entries)
        bits = 0
        for j, e in enumerate(entries):
            if e % 2:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def zero(cls, n: int) -> VecF2:
        return cls(n, 0)

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.len)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.len:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __add__(self, other: VecF2) -> VecF2:
        if self.len != other.len:
            raise DimensionError("vector lengths differ")
        return VecF2(self.len, self.bits ^ other.bits)

    __sub__ = __add__

    def is_zero(self) -> bool:
        return self.bits == 0

    def split(self, at: int) -> tuple[VecF2, VecF2]:
        """Return the first ``at`` coordinates and the rest."""
        head = VecF2(at, self.bits & _mask(at))
        tail = VecF2(self.len - at, self.bits >> at)
        return head, tail

    def __repr__(self):
        return f"VecF2({self.to_list()})"


@dataclass(frozen=True)
class MatF2:
    rows: int
    cols: int
    row_bits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimension")
        if len(self.row_bits) != self.rows:
            raise DimensionError("row count does not match row data")
        limit = 1 << self.cols
        for r in self.row_bits:
            if r < 0 or r >= limit:
                raise ValueError("row bits outside the column range")

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> MatF2:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
            bits = 0
            for j, e in enumerate(r):
                if e % 2:
                    bits |= 1 << j
            packed.append(bits)
        return cls(len(rows), cols, tuple(packed))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> MatF2:
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> MatF2:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[VecF2]) -> MatF2:
        if not columns:
            raise DimensionError("need at least one column")
        n = columns[0].len
        rows = [0] * n
        for j, c in enumerate(columns):
            if c.len != n:
                raise DimensionError("columns of different length")
            for i in range(n):
                if (c.bits >> i) & 1:
                    rows[i] |= 1 << j
        return cls(n, len(columns), tuple(rows))

    # access

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.row_bits[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.row_bits]

    def column(self, j: int) -> VecF2:
        bits = 0
        for i, r in enumerate(self.row_bits):
            if (r >> j) & 1:
                bits |= 1 << i
        return VecF2(self.rows, bits)

    def row(self, i: int) -> VecF2:
        return VecF2(self.cols, self.row_bits[i])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __repr__(self):
        return f"MatF2({self.to_lists()})"

    # arithmetic

    def __add__(self, other: MatF2) -> MatF2:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shapes differ")
        return MatF2(self.rows, self.cols,
                     tuple(a ^ b for a, b in zip(self.row_bits, other.row_bits)))

    __sub__ = __add__

    def transpose(self) -> MatF2:
        out = [0] * self.cols
        for i, r in enumerate(self.row_bits):
            j = 0
            while r:
                if r & 1:
                    out[j] |= 1 << i
                r >>= 1
                j += 1
        return MatF2(self.cols, self.rows, tuple(out))

    def _row_times(self, row: int) -> int:
        # row vector (packed over self.rows) times self
        acc = 0
        i = 0
        while row:
            if row & 1:
                acc ^= self.row_bits[i]
            row >>= 1
            i += 1
        return acc

    def __matmul__(self, other):
        if isinstance(other, VecF2):
            if other.len != self.cols:
                raise DimensionError(f"{self.rows}x{self.cols} times vector of length {other.len}")
            bits = 0
            for i, r in enumerate(self.row_bits):
                if _parity(r & other.bits):
                    bits |= 1 << i
            return VecF2(self.rows, bits)
        if isinstance(other, MatF2):
            if self.cols != other.rows:
                raise DimensionError(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
            return MatF2(self.rows, other.cols,
                         tuple(other._row_times(r) for r in self.row_bits))
        return NotImplemented

    def vec_times(self, v: VecF2) -> VecF2:
        """Row vector ``v`` times this matrix."""
        if v.len != self.rows:
            raise DimensionError("row vector length does not match")
        return VecF2(self.cols, self._row_times(v.bits))

    def __pow__(self, k: int) -> MatF2:
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = MatF2.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.row_bits)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> MatF2:
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        m = _mask(c1 - c0)
        return MatF2(r1 - r0, c1 - c0, tuple((r >> c0) & m for r in self.row_bits[r0:r1]))

    @staticmethod
    def block_diag(a: MatF2, b: MatF2) -> MatF2:
        rows = tuple(a.row_bits) + tuple(r << a.cols for r in b.row_bits)
        return MatF2(a.rows + b.rows, a.cols + b.cols, rows)

    @staticmethod
    def from_blocks(a: MatF2, b: MatF2, c: MatF2, d: MatF2) -> MatF2:
        """Assemble ``[[a, b], [c, d]]``."""
        if a.rows != b.rows or c.rows != d.rows or a.cols != c.cols or b.cols != d.cols:
            raise DimensionError("blocks do not fit")
        top = tuple(x | (y << a.cols) for x, y in zip(a.row_bits, b.row_bits))
        bot = tuple(x | (y << c.cols) for x, y in zip(c.row_bits, d.row_bits))
        return MatF2(a.rows + c.rows, a.cols + b.cols, top + bot)

    # elimination based helpers

    def rank(self) -> int:
        return _echelon(list(self.row_bits), self.cols)[1]

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def inverse(self) -> MatF2:
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = [r | (1 << (n + i)) for i, r in enumerate(self.row_bits)]
        aug, rank, pivots = _echelon(aug, n, reduced=True)
        if rank < n:
            raise SingularMatrixError("matrix is singular over GF(2)")
        inv = [0] * n
        for row, col in zip(aug, pivots):
            inv[col] = row >> n
        return MatF2(n, n, tuple(inv))

    def nullspace(self) -> list[VecF2]:
        """Basis of ``{x : self @ x = 0}``."""
        rows, rank, pivots = _echelon(list(self.row_bits), self.cols, reduced=True)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            bits = 1 << free
            for row, col in zip(rows, pivots):
                if (row >> free) & 1:
                    bits |= 1 << col
            basis.append(VecF2(self.cols, bits))
        return basis


def _echelon(rows: list[int], width: int, reduced: bool = False):
    """Row echelon form over GF(2) restricted to the low ``width`` columns.

    Pivots are chosen as the first row holding a one in the current column,
    scanning columns left to right, so the result is deterministic. Returns
    ``(rows, rank, pivot_columns)`` with the pivot rows first.
    """
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    for col in range(width):
        bit = 1 << col
        piv = None
        for i in range(r, len(rows)):
            if rows[i] & bit:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        start = 0 if reduced else r + 1
        for i in range(start, len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, r, pivots


@dataclass(frozen=True)
class SolveOutcome:
    consistent: bool
    solution: VecF2 | None
    nullity: int


def rank_and_solve(a: MatF2, b: VecF2) -> SolveOutcome:
    """Gaussian elimination on ``[a | b]``.

    Returns whether ``a x = b`` is consistent, one particular solution (free
    variables set to zero) and ``a.cols - rank(a)``.
    """
    if a.rows != b.len:
        raise DimensionError(f"matrix has {a.rows} rows, right-hand side has length {b.len}")
    n = a.cols
    aug = [r | (((b.bits >> i) & 1) << n) for i, r in enumerate(a.row_bits)]
    aug, rank, pivots = _echelon(aug, n, reduced=True)
    nullity = n - rank
    for row in aug[rank:]:
        if row:  # only the augmented bit can survive
            return SolveOutcome(False, None, nullity)
    x = 0
    for row, col in zip(aug, pivots):
        if (row >> n) & 1:
            x |= 1 << col
    return SolveOutcome(True, VecF2(n, x), nullity)


def count_solutions(a: MatF2, b: VecF2) -> int:
    """Number of ``x`` over GF(2) with ``a x = b``: zero or ``2**nullity``."""
    out = rank_and_solve(a, b)
    return 1 << out.nullity if out.consistent else 0


def _is_strictly_upper(m: MatF2) -> bool:
    return all(r & _mask(i + 1) == 0 for i, r in enumerate(m.row_bits))


def sylvester_solve(n: MatF2, d: MatF2, b: MatF2) -> MatF2:
    """Solve ``n x + x d = b`` for ``x``.

    ``n`` must be strictly upper triangular and ``d`` invertible; the solution
    is then unique. Rows of ``x`` are filled from the bottom up: the last row
    satisfies ``x_k d = b_k`` and every earlier row only involves rows below it.
    """
    k, l = b.rows, b.cols
    if not n.is_square or n.rows != k:
        raise DimensionError("n must be square with as many rows as b")
    if not d.is_square or d.rows != l:
        raise DimensionError("d must be square with as many columns as b")
    if not _is_strictly_upper(n):
        raise ValueError("n must be strictly upper triangular")
    d_inv = d.inverse()
    x = [0] * k
    for i in range(k - 1, -1, -1):
        rhs = b.row_bits[i]
        coupling = n.row_bits[i]
        j = i + 1
        coupling >>= j
        while coupling:
            if coupling & 1:
                rhs ^= x[j]
            coupling >>= 1
            j += 1
        x[i] = d_inv._row_times(rhs)
    sol = MatF2(k, l, tuple(x))
    if not (n @ sol + sol @ d) == b:
        raise ArithmeticError("Sylvester residual is nonzero")
    return sol


@dataclass(frozen=True)
class SplitResult:
    p: MatF2
    size_unipotent: int
    d1: MatF2
    d2: MatF2

    def block_diagonal(self) -> MatF2:
        return MatF2.block_diag(self.d1, self.d2)


def split_unipotent(d: MatF2) -> SplitResult:
    """Find ``p`` with ``p d p^-1 = diag(d1, d2)``.

    ``d1`` is unipotent upper triangular and ``d2`` has no eigenvalue one.
    Eigenvectors for eigenvalue one are peeled off one at a time, which
    leaves a block upper triangular matrix; the off-diagonal block is then
    removed with :func:`sylvester_solve`.
    """
    if not d.is_square:
        raise DimensionError("split of a non-square matrix")
    n = d.rows
    if not d.is_invertible():
        raise SingularMatrixError("matrix is singular over GF(2)")

    t = d      # current conjugate s^-1 d s
    s = MatF2.identity(n)
    j = 0
    while j < n:
        tail = t.block(j, n, j, n)
        kernel = (tail + MatF2.identity(n - j)).nullspace()
        if not kernel:
            break
        v = kernel[0]
        pivot = (v.bits & -v.bits).bit_length() - 1
        cols = [v] + [VecF2(n - j, 1 << c) for c in range(n - j) if c != pivot]
        r = MatF2.block_diag(MatF2.identity(j), MatF2.from_columns(cols))
        t = r.inverse() @ t @ r
        s = s @ r
        j += 1

    d1 = t.block(0, j, 0, j)
    d2 = t.block(j, n, j, n)
    upper = t.block(0, j, j, n)
    if j and n - j:
        x = sylvester_solve(d1 + MatF2.identity(j), d2 + MatF2.identity(n - j), upper)
    else:
        x = MatF2.zero(j, n - j)
    e = MatF2.from_blocks(MatF2.identity(j), x, MatF2.zero(n - j, j), MatF2.identity(n - j))
    p = e @ s.inverse()
    return SplitResult(p=p, size_unipotent=j, d1=d1, d2=d2)
