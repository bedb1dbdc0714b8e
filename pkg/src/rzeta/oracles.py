"""Brute-force checks for every quantity the library computes.

The oracles here are deliberately naive: exhaustive enumeration over
GF(2)^n, cokernel orders from the Smith normal form, and a union-find over
twisted conjugation inside a finite window of the group.
``verify_instances`` and ``verify_random`` drive them against the fast code paths and returns one report per check.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import f2linalg, group, intlinalg, seqdecomp, zeta
from .f2linalg import MatF2, VecF2
from .group import INFINITE, AffineAut, Automorphism, DiagZ2Group
from .intlinalg import MatZ

ENUMERATION_CAP = 22
SEQUENCE_CAP = 16


class OracleLimitError(ValueError):
    """Instance exceeds what the brute-force oracle is willing to enumerate."""


def _image_table(a: MatF2) -> np.ndarray:
    # a @ x for every packed x, built one column at a time
    table = np.zeros(1 << a.cols, dtype=np.int64)
    for j in range(a.cols):
        table[1 << j: 1 << (j + 1)] = table[: 1 << j] ^ a.column(j).bits
    return table


def oracle_count_solutions(a: MatF2, b: VecF2) -> int:
    """Count solutions of ``a x = b`` by trying every ``x``."""
    if a.cols > ENUMERATION_CAP:
        raise OracleLimitError(f"{a.cols} unknowns exceeds the cap of {ENUMERATION_CAP}")
    if a.rows != b.len:
        raise f2linalg.DimensionError("right-hand side has the wrong length")
    return int(np.count_nonzero(_image_table(a) == b.bits))


def oracle_torus_rnumber(D2: MatZ, m: int) -> int:
    """``|Z^l / (I - D2^m) Z^l|`` from the Smith normal form."""
    M = MatZ.identity(D2.rows) - intlinalg.mat_pow(D2, m)
    diag = intlinalg.smith_normal_form(M)
    if any(x == 0 for x in diag):
        raise ValueError("I - D2^m is singular; the torus factor is infinite")
    out = 1
    for x in diag:
        out *= x
    return out


def oracle_sequence(dbar: MatF2, dvec: VecF2, horizon: int) -> list[int]:
    """``v_k`` for ``k = 1 .. horizon`` by testing the defining equation on every ``x``."""
    n = dbar.rows
    if n > SEQUENCE_CAP:
        raise OracleLimitError(f"n = {n} exceeds the cap of {SEQUENCE_CAP}")
    ident = MatF2.identity(n)
    out = []
    power = ident
    geo = MatF2.zero(n)
    for _ in range(horizon):
        geo = geo + power
        power = power @ dbar
        lhs = _image_table(ident + power)
        out.append(int(np.count_nonzero(lhs == (geo @ dvec).bits)))
    return out


def oracle_series_match(f: zeta.RationalFn, rnumbers: Sequence[int]) -> bool:
    """Expand ``f`` by long division and compare its log-derivative with ``rnumbers``."""
    num, den = list(f.numerator), list(f.denominator)
    count = len(rnumbers)
    # long division, kept separate from RationalFn.series on purpose
    e = []
    for m in range(count + 1):
        acc = num[m] if m < len(num) else 0
        for j in range(1, min(m, len(den) - 1) + 1):
            acc -= den[j] * e[m - j]
        if den[0] != 1:
            return False
        e.append(acc)
    if e[0] != 1:
        return False
    back: list[int] = []
    for k in range(1, count + 1):
        back.append(k * e[k] - sum(back[j - 1] * e[k - j] for j in range(1, k)))
    return back == list(rnumbers)


def series_radius_estimate(f: zeta.RationalFn, terms: int = 3000) -> float:
    """Cauchy-Hadamard style estimate of the radius from the exact Taylor tail.

    Compares the largest coefficients over two consecutive windows; the
    growth rate between them approximates ``1 / radius``.
    """
    e = f.series(terms)
    third = terms // 3

    def peak(lo, hi):
        best = max(abs(c) for c in e[lo:hi])
        return math.log(best) if best else float("-inf")

    a, b = peak(third, 2 * third), peak(2 * third, terms)
    if a == float("-inf") or b == float("-inf"):
        return float("inf")
    return math.exp(-(b - a) / third)


# twisted conjugacy in a window

def _affine_power(auto: Automorphism, m: int):
    Dm = intlinalg.mat_pow(auto.D, m)
    shift = (tuple(auto.d1) + (0,) * (auto.n - auto.k))
    c = [0] * auto.n
    p = MatZ.identity(auto.n)
    for _ in range(m):
        step = p @ shift
        c = [x + y for x, y in zip(c, step)]
        p = p @ auto.D
    return Dm, tuple(c)


@dataclass(frozen=True)
class WindowedCount:
    count: int
    previous: int
    window: int
    stable: bool


def oracle_windowed_classes(auto: Automorphism, window: int, power: int = 1,
                            core: int = 1, max_elements: int = 200_000) -> WindowedCount:
    """Twisted conjugacy classes seen from a finite window of the group.

    Elements are pairs ``(t, s)``: translation ``t`` in Z^n, ``s = 1`` for the
    reflection coset. Two elements are joined when ``h g psi(h)^-1`` maps one
    to the other for a generator ``h`` (or its inverse) and both lie in
    ``[-window, window]^n``. The count is the number of resulting components
    that meet the core ``[-core, core]^n``. Enlarging the window can only
    merge components, so the count never increases with ``window``; it is
    bounded below by the number of genuine classes meeting the core.
    ``stable`` records agreement between windows ``window - 1`` and ``window``.
    """
    n = auto.n
    if window < 1:
        raise ValueError("window must be at least 1")
    if 2 * (2 * window + 1) ** n > max_elements:
        raise OracleLimitError("window too large for the element cap")
    Dm, c = _affine_power(auto, power)
    refl = auto.group.reflection

    def mul(a, b):
        (t1, s1), (t2, s2) = a, b
        if s1:
            t2 = tuple(r * x for r, x in zip(refl, t2))
        return tuple(x + y for x, y in zip(t1, t2)), s1 ^ s2

    def inv(a):
        t, s = a
        if s:
            t = tuple(r * x for r, x in zip(refl, t))
        return tuple(-x for x in t), s

    def psi(a):
        t, s = a
        img = Dm @ t
        if s:
            img = tuple(x + y for x, y in zip(img, c))
        return tuple(img), s

    zero = (0,) * n
    # with k = 0 the reflection is trivial and the group is just Z^n
    cosets = (0, 1) if auto.k else (0,)
    gens = [(zero, 1)] if auto.k else []
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        gens.append((e, 0))
        gens.append((tuple(-x for x in e), 0))
    moves = [(h, inv(psi(h))) for h in gens]

    def count_for(M: int) -> int:
        parent: dict = {}

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        box = list(itertools.product(range(-M, M + 1), repeat=n))
        for t in box:
            for s in cosets:
                parent[(t, s)] = (t, s)
        for t in box:
            for s in cosets:
                g = (t, s)
                for h, psi_h_inv in moves:
                    other = mul(mul(h, g), psi_h_inv)
                    if other in parent:
                        ra, rb = find(g), find(other)
                        if ra != rb:
                            parent[ra] = rb
        core_box = itertools.product(range(-core, core + 1), repeat=n)
        return len({find((t, s)) for t in core_box for s in cosets})

    if core > window - 1:
        raise ValueError("core must fit inside the smaller window")
    prev = count_for(window - 1)
    cur = count_for(window)
    return WindowedCount(count=cur, previous=prev, window=window, stable=cur == prev)


# random instances

def random_unimodular(n: int, rng: random.Random, steps: int | None = None,
                      bound: int = 1) -> MatZ:
    """Product of random elementary matrices and sign flips; determinant +-1."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    steps = 3 * n if steps is None else steps
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([x for x in range(-bound, bound + 1) if x])
        for col in range(n):
            m[i][col] += c * m[j][col]
    for i in range(n):
        if rng.random() < 0.5:
            m[i] = [-x for x in m[i]]
    return MatZ.of(m)


def random_hyperbolic(n: int, rng: random.Random, attempts: int = 1000, **kw) -> MatZ:
    """Random unimodular matrix without root-of-unity eigenvalues."""
    if n == 1:
        raise ValueError("GL_1(Z) = {1, -1} has no hyperbolic elements")
    for _ in range(attempts):
        D = random_unimodular(n, rng, **kw)
        if not intlinalg.cyclotomic_divisors(D):
            return D
    raise RuntimeError("no hyperbolic matrix found")


def random_invertible_f2(n: int, rng: random.Random) -> MatF2:
    while True:
        m = MatF2(n, n, tuple(rng.getrandbits(n) if n else 0 for _ in range(n)))
        if m.is_invertible():
            return m


def random_vec_f2(n: int, rng: random.Random) -> VecF2:
    return VecF2(n, rng.getrandbits(n) if n else 0)


def random_automorphism(rng: random.Random, n: int, k: int, d_bound: int = 3,
                        hyperbolic: bool = True) -> Automorphism:
    g = DiagZ2Group(n, k)
    make = random_hyperbolic if hyperbolic else random_unimodular
    if 0 < k < n:
        D = MatZ.block_diag(make(k, rng), make(n - k, rng))
    else:
        D = make(n, rng)
    d = [rng.randint(-d_bound, d_bound) for _ in range(k)] + [0] * (n - k)
    return group.validate(g, AffineAut(tuple(d), D))


# verification driver

@dataclass
class VerifyReport:
    check: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.check}: {self.instances} instances, {len(self.failures)} failures, {self.wall_time:.3f}s"
        for f in self.failures[:5]:
            text += f"\n  - {f}"
        return text


class _Recorder:
    def __init__(self):
        self.reports: dict[str, VerifyReport] = {}

    def run(self, name: str, label: str, fn: Callable[[], str | None]) -> None:
        rep = self.reports.setdefault(name, VerifyReport(name))
        t0 = time.perf_counter()
        try:
            problem = fn()
        except OracleLimitError:
            problem = None
            rep.instances -= 1
        except Exception as exc:  # a crash is a failed check, not a crashed driver
            problem = f"{type(exc).__name__}: {exc}"
        rep.instances += 1
        rep.wall_time += time.perf_counter() - t0
        if problem:
            rep.failures.append(f"{label}: {problem}")


def _instance_checks(rec: _Recorder, label: str, auto: Automorphism,
                     expected: dict | None = None, windowed: bool = False,
                     max_zeta_dim: int = 4, powers: int = 6) -> None:
    k, n = auto.k, auto.n

    def counts():
        dbar, dvec = auto.dbar1, auto.dvec1
        ident = MatF2.identity(k)
        p, geo = ident, MatF2.zero(k)
        for m in range(1, powers + 1):
            geo = geo + p
            p = p @ dbar
            a, b = ident + p, geo @ dvec
            fast, slow = f2linalg.count_solutions(a, b), oracle_count_solutions(a, b)
            if fast != slow:
                return f"m={m}: count_solutions {fast} != enumeration {slow}"
        return None

    def sequence():
        dbar, dvec = auto.dbar1, auto.dvec1
        combo = seqdecomp.decompose(dbar, dvec)
        blocks = seqdecomp.decompose_blocks(dbar, dvec)
        if combo != blocks:
            return f"enumeration {combo.coeffs} != block split {blocks.coeffs}"
        if combo.total != 2 ** k:
            return f"sum i c_i = {combo.total}, expected {2 ** k}"
        horizon = 2 ** k + 8
        brute = oracle_sequence(dbar, dvec, horizon)
        tables = seqdecomp.solution_sequence(dbar, dvec, horizon)
        if tables.v != brute:
            return "solution_sequence disagrees with enumeration"
        if [combo(j) for j in range(1, horizon + 1)] != brute:
            return "decomposition does not reproduce v_k"
        return None

    def torus():
        finite = [m for m in range(1, powers + 1) if group.is_finite(auto, m)]
        for m in finite:
            fast = abs(intlinalg.det(MatZ.identity(n - k) - intlinalg.mat_pow(auto.D2, m)))
            slow = oracle_torus_rnumber(auto.D2, m)
            if fast != slow:
                return f"m={m}: |det| {fast} != cokernel order {slow}"
        return None

    def multiplicative():
        full = group.reidemeister_numbers(auto, powers)
        for m, r in enumerate(full, start=1):
            single = group.reidemeister_number(auto, m)
            if r != single:
                return f"m={m}: batched {r} != single {single}"
        return None

    def classes():
        for m in (1, 2):
            r = group.reidemeister_number(auto, m)
            if r == INFINITE:
                continue
            w = oracle_windowed_classes(auto, window=6, power=m, core=2)
            if not w.stable:
                return f"m={m}: window count not stable ({w.previous} -> {w.count})"
            if w.count != r:
                return f"m={m}: window count {w.count} != formula {r}"
        return None

    def zeta_check():
        res = zeta.full_pipeline(auto)
        if not oracle_series_match(res.function, res.rnumbers):
            return "log-derivative of the closed form does not return R(phi^k)"
        if not res.diagnostics["within_bound"]:
            return "degree bound exceeded"
        return None

    def expected_values():
        if "rnum" in expected:
            got = group.reidemeister_numbers(auto, len(expected["rnum"]))
            want = [INFINITE if x in ("inf", None) else x for x in expected["rnum"]]
            if got != want:
                return f"R(phi^k) {got} != expected {want}"
        if "numerator" in expected or "denominator" in expected:
            res = zeta.full_pipeline(auto)
            if list(res.function.numerator) != expected.get("numerator", list(res.function.numerator)):
                return f"numerator {list(res.function.numerator)} != expected"
            if list(res.function.denominator) != expected.get("denominator", list(res.function.denominator)):
                return f"denominator {list(res.function.denominator)} != expected"
        return None

    if k:
        rec.run("count_solutions", label, counts)
        if k <= SEQUENCE_CAP:
            rec.run("sequence_decomposition", label, sequence)
    if n - k:
        rec.run("torus_snf", label, torus)
    rec.run("rnumber_batch", label, multiplicative)
    if windowed and n <= 3:
        rec.run("windowed_classes", label, classes)
    if zeta.zeta_exists(auto).exists and n <= max_zeta_dim:
        rec.run("zeta_certification", label, zeta_check)
    if expected:
        rec.run("expected_values", label, expected_values)


def verify_instances(instances: Iterable[tuple[str, Automorphism, dict | None]],
                     windowed: bool = True) -> list[VerifyReport]:
    rec = _Recorder()
    for label, auto, expected in instances:
        _instance_checks(rec, label, auto, expected, windowed=windowed)
    return list(rec.reports.values())


def verify_random(count: int, seed: int = 0, dim: int = 6) -> list[VerifyReport]:
    """Randomised sweep: F2 counting, block split, sequence decomposition, torus, zeta."""
    rng = random.Random(seed)
    rec = _Recorder()
    for idx in range(count):
        n = rng.randint(1, dim)
        a = MatF2(n, n, tuple(rng.getrandbits(n) for _ in range(n)))
        b = random_vec_f2(n, rng)
        rec.run("count_solutions", f"#{idx}",
                lambda: None if f2linalg.count_solutions(a, b) == oracle_count_solutions(a, b)
                else "count mismatch")

        dbar = random_invertible_f2(n, rng)
        dvec = random_vec_f2(n, rng)

        def split_check():
            s = f2linalg.split_unipotent(dbar)
            if s.p @ dbar @ s.p.inverse() != s.block_diagonal():
                return "P D P^-1 is not block diagonal"
            if s.size_unipotent and not ((s.d1 + MatF2.identity(s.size_unipotent)) ** s.size_unipotent).is_zero():
                return "D1 is not unipotent"
            if s.d2.rows and not (s.d2 + MatF2.identity(s.d2.rows)).is_invertible():
                return "I - D2 is singular"
            return None

        rec.run("block_split", f"#{idx}", split_check)

        def seq_check():
            combo = seqdecomp.decompose(dbar, dvec)
            if combo != seqdecomp.decompose_blocks(dbar, dvec):
                return "enumeration and block split disagree"
            brute = oracle_sequence(dbar, dvec, 2 ** n + 8)
            if [combo(j) for j in range(1, 2 ** n + 9)] != brute:
                return "decomposition does not reproduce v_k"
            return None

        rec.run("sequence_decomposition", f"#{idx}", seq_check)

        n_aut = rng.randint(2, min(dim, 4))
        k = rng.choice([k for k in range(0, n_aut + 1) if k != 1 and n_aut - k != 1])
        auto = random_automorphism(rng, n_aut, k)
        _instance_checks(rec, f"#{idx} n={n_aut} k={k}", auto, powers=4)
    return list(rec.reports.values())
