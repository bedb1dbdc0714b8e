import pytest

from rzeta.f2linalg import MatF2, VecF2, count_solutions
from rzeta.group import AffineAut, DiagZ2Group, validate
from rzeta.intlinalg import MatZ
from rzeta.oracles import (
    OracleLimitError,
    oracle_count_solutions,
    oracle_sequence,
    oracle_series_match,
    oracle_torus_rnumber,
    oracle_windowed_classes,
    random_automorphism,
    random_hyperbolic,
    random_invertible_f2,
    verify_instances,
    verify_random,
)
from rzeta.seqdecomp import solution_sequence
from rzeta.zeta import RationalFn

from conftest import CAT, FIB, brute_count, curated_instances, mat, vec


def lucas(count):
    out, a, b = [], 2, 1
    for _ in range(count):
        a, b = b, a + b
        out.append(a)
    return out


def test_oracle_count_examples():
    assert oracle_count_solutions(MatF2.zero(2), vec([0, 0])) == 4
    assert oracle_count_solutions(MatF2.identity(3), vec([1, 0, 1])) == 1


def test_oracle_count_random_6x6(rng):
    for _ in range(100):
        a = MatF2(6, 6, tuple(rng.getrandbits(6) for _ in range(6)))
        b = VecF2(6, rng.getrandbits(6))
        assert oracle_count_solutions(a, b) == count_solutions(a, b) == brute_count(a.to_lists(), b.to_list())


def test_oracle_count_cap():
    with pytest.raises(OracleLimitError):
        oracle_count_solutions(MatF2.zero(1, 23), VecF2.zero(1))


def test_oracle_torus_examples():
    assert oracle_torus_rnumber(MatZ.of(CAT), 1) == 1
    assert oracle_torus_rnumber(MatZ.of(CAT), 2) == 5
    # I - D2 = diag(2, 3)
    assert oracle_torus_rnumber(MatZ.of([[-1, 0], [0, -2]]), 1) == 6
    with pytest.raises(ValueError):
        oracle_torus_rnumber(MatZ.identity(2), 1)


@pytest.mark.parametrize("dbar,dvec,v", [
    ([[1, 0], [0, 1]], [0, 0], [4, 4, 4, 4]),
    ([[1, 0], [0, 1]], [1, 0], [0, 4, 0, 4]),
    ([[1, 1], [1, 0]], [0, 0], [1, 1, 4, 1]),
])
def test_oracle_sequence_examples(dbar, dvec, v):
    assert oracle_sequence(mat(dbar), vec(dvec), 4) == v
    assert solution_sequence(mat(dbar), vec(dvec), 4).v == v


def test_series_match_controls():
    assert oracle_series_match(RationalFn((1,), (1, -1)), [1] * 20)
    assert oracle_series_match(RationalFn((1,), (1, -1, -1)), lucas(20))
    assert not oracle_series_match(RationalFn((1,), (1, -1, -2)), lucas(20))
    assert not oracle_series_match(RationalFn((1,), (1, -1, -1)), lucas(19) + [0])


# windowed twisted conjugacy

def _auto(n, k, D, d=None):
    return validate(DiagZ2Group(n, k), AffineAut.of(D, d))


def test_windowed_fibonacci_stabilizes_at_two():
    w = oracle_windowed_classes(_auto(2, 2, FIB, [0, 0]), window=6, power=1, core=2)
    assert w.stable and w.count == 2


def test_windowed_torus_single_class():
    w = oracle_windowed_classes(_auto(2, 0, CAT), window=6, power=1, core=2)
    assert w.stable and w.count == 1


def test_windowed_fibonacci_cube():
    w = oracle_windowed_classes(_auto(2, 2, FIB), window=6, power=3, core=2)
    assert w.stable and w.count == 8


def test_windowed_is_monotone_in_window():
    auto = _auto(2, 2, FIB)
    counts = [oracle_windowed_classes(auto, window=M, power=5, core=2).count for M in range(3, 10)]
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert counts == [26, 22, 18, 15, 12, 12, 12]
    # a core too small to meet every class undercounts: 10 of the 12 classes reach [-1, 1]^2
    assert oracle_windowed_classes(auto, window=8, power=5, core=1).count == 10


def test_windowed_limits():
    auto = _auto(2, 2, FIB)
    with pytest.raises(OracleLimitError):
        oracle_windowed_classes(auto, window=400)
    with pytest.raises(ValueError):
        oracle_windowed_classes(auto, window=2, core=2)


# generators

def test_generators_produce_valid_data(rng):
    for _ in range(30):
        n = rng.randint(2, 5)
        h = random_hyperbolic(n, rng)
        assert h.rows == n
        assert random_invertible_f2(n, rng).is_invertible()
    with pytest.raises(ValueError):
        random_hyperbolic(1, rng)
    auto = random_automorphism(rng, 4, 2)
    assert auto.D1.rows == 2 and auto.D2.rows == 2


# driver

def test_verify_curated_instances_pass():
    jobs = []
    for path, doc in curated_instances():
        auto = _auto(doc["n"], doc["holonomy_rank"], doc["D"], doc.get("d"))
        jobs.append((doc.get("name", path.stem), auto, doc.get("expected")))
    reports = verify_instances(jobs, windowed=True)
    assert {r.check for r in reports} >= {"count_solutions", "sequence_decomposition",
                                          "torus_snf", "windowed_classes", "zeta_certification",
                                          "expected_values"}
    assert all(r.ok for r in reports), [r.line() for r in reports if not r.ok]


def test_verify_flags_wrong_expectation():
    jobs = [("bad", _auto(2, 2, FIB), {"rnum": [2, 4, 8, 8, 14, 24]})]
    reports = {r.check: r for r in verify_instances(jobs, windowed=False)}
    assert not reports["expected_values"].ok
    assert "FAIL expected_values" in reports["expected_values"].line()


def test_verify_random_small():
    reports = verify_random(25, seed=3, dim=5)
    assert reports and all(r.ok for r in reports)
    split = {r.check: r for r in verify_random(10, seed=1, dim=4)}["block_split"]
    assert split.instances == 10


def test_verify_random_deterministic():
    a = [(r.check, r.instances) for r in verify_random(10, seed=9, dim=4)]
    b = [(r.check, r.instances) for r in verify_random(10, seed=9, dim=4)]
    assert a == b
