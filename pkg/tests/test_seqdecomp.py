import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rzeta.f2linalg import MatF2, SingularMatrixError, VecF2, split_unipotent
from rzeta.oracles import oracle_sequence, random_invertible_f2
from rzeta.seqdecomp import (
    BasisCombo,
    combine,
    decompose,
    decompose_blocks,
    eval_combo,
    shift_vector,
    solution_sequence,
)

from conftest import all_vectors, mat, vec

I2 = MatF2.identity(2)
F = mat([[1, 1], [1, 0]])


def enumerate_v(dbar_rows, d, horizon):
    """v_k straight from the definition, with plain integer lists."""
    n = len(dbar_rows)

    def apply(m, x):
        return [sum(m[i][j] * x[j] for j in range(n)) % 2 for i in range(n)]

    def matmul(a, b):
        return [[sum(a[i][t] * b[t][j] for t in range(n)) % 2 for j in range(n)] for i in range(n)]

    power = [[int(i == j) for j in range(n)] for i in range(n)]
    geo = [[0] * n for _ in range(n)]
    out = []
    for _ in range(horizon):
        geo = [[(geo[i][j] + power[i][j]) % 2 for j in range(n)] for i in range(n)]
        power = matmul(power, dbar_rows)
        rhs = apply(geo, d)
        hits = 0
        for x in all_vectors(n):
            lhs = [(a + b) % 2 for a, b in zip(x, apply(power, x))]
            hits += lhs == rhs
        out.append(hits)
    return out


# solution_sequence

def test_sequence_identity_zero():
    t = solution_sequence(I2, vec([0, 0]), 6)
    assert t.v == [4] * 6 == enumerate_v([[1, 0], [0, 1]], [0, 0], 6)
    assert t.w[0] == 4


def test_sequence_identity_shift():
    t = solution_sequence(I2, vec([1, 0]), 6)
    assert t.v == [0, 4, 0, 4, 0, 4] == enumerate_v([[1, 0], [0, 1]], [1, 0], 6)
    assert t.w[1] == 4


def test_sequence_order_three():
    t = solution_sequence(F, vec([0, 0]), 6)
    assert t.v == [1, 1, 4, 1, 1, 4] == enumerate_v([[1, 1], [1, 0]], [0, 0], 6)
    assert t.w[0] == 1 and t.w[2] == 3


def test_sequence_rejects_singular():
    with pytest.raises(SingularMatrixError):
        solution_sequence(mat([[1, 1], [1, 1]]), vec([0, 0]), 3)


def test_sequence_w_divisible_by_index(rng):
    for _ in range(60):
        n = rng.randint(1, 6)
        d = random_invertible_f2(n, rng)
        dv = VecF2(n, rng.getrandbits(n))
        t = solution_sequence(d, dv, 40)
        for k, w in enumerate(t.w, start=1):
            assert w >= 0 and w % k == 0
        assert t.v == oracle_sequence(d, dv, 40)


# decompose

@pytest.mark.parametrize("dbar,dvec,coeffs", [
    (I2, [0, 0], {1: 4}),
    (F, [0, 0], {1: 1, 3: 1}),
    (I2, [1, 0], {2: 2}),
])
def test_decompose_examples(dbar, dvec, coeffs):
    assert decompose(dbar, vec(dvec)).coeffs == coeffs
    assert decompose_blocks(dbar, vec(dvec)).coeffs == coeffs


def test_decompose_against_enumeration(rng):
    for _ in range(80):
        n = rng.randint(1, 6)
        d = random_invertible_f2(n, rng)
        dv = VecF2(n, rng.getrandbits(n))
        combo = decompose(d, dv)
        assert combo.total == 2 ** n
        horizon = 2 ** n + 8
        expected = enumerate_v(d.to_lists(), dv.to_list(), horizon) if n <= 4 else oracle_sequence(d, dv, horizon)
        assert [combo(k) for k in range(1, horizon + 1)] == expected


def test_two_routes_agree(rng):
    for _ in range(150):
        n = rng.randint(1, 9)
        d = random_invertible_f2(n, rng)
        dv = VecF2(n, rng.getrandbits(n))
        assert decompose(d, dv) == decompose_blocks(d, dv)


def _order(m):
    k, p = 1, m
    while p != MatF2.identity(m.rows):
        p = p @ m
        k += 1
    return k


def test_support_bound(rng):
    # each basis index is lcm(a, b): a a power of two from the affine map on the
    # unipotent block, at most 2^(ceil(log2 k1) + 1), and b dividing ord(D2)
    for _ in range(150):
        n = rng.randint(1, 8)
        d = random_invertible_f2(n, rng)
        dv = VecF2(n, rng.getrandbits(n))
        split = split_unipotent(d)
        k1 = split.size_unipotent
        two_part = 2 ** (max(k1 - 1, 0).bit_length() + 1) if k1 else 1
        d2_order = _order(split.d2) if split.d2.rows else 1
        for i in decompose(d, dv).support:
            assert any(i == math.lcm(a, b)
                       for a in (2 ** r for r in range(two_part.bit_length())) if two_part % a == 0
                       for b in range(1, d2_order + 1) if d2_order % b == 0)
        # and the whole affine map has order dividing 2 ord(D)
        for i in decompose(d, dv).support:
            assert (2 * _order(d)) % i == 0


def test_shift_invariance(rng):
    # d in the image of I - D behaves like d = 0
    for _ in range(60):
        n = rng.randint(1, 6)
        d = random_invertible_f2(n, rng)
        x = VecF2(n, rng.getrandbits(n))
        dv = (MatF2.identity(n) + d) @ x
        assert decompose(d, dv) == decompose(d, VecF2.zero(n))
        s = shift_vector(d, dv)
        assert s is not None and (MatF2.identity(n) + d) @ s == dv


def test_conjugation_invariance(rng):
    for _ in range(60):
        n = rng.randint(1, 6)
        d = random_invertible_f2(n, rng)
        dv = VecF2(n, rng.getrandbits(n))
        p = random_invertible_f2(n, rng)
        assert decompose(p @ d @ p.inverse(), p @ dv) == decompose(d, dv)


# combine and eval

def test_combine_examples():
    assert combine(BasisCombo({1: 4}), BasisCombo({1: 1, 3: 1})).coeffs == {1: 4, 3: 4}
    assert combine(BasisCombo({2: 2}), BasisCombo({2: 2})).coeffs == {2: 8}
    x = BasisCombo({2: 3, 5: 1})
    assert combine(x, BasisCombo({1: 1})).coeffs == x.coeffs


def test_eval_examples():
    c = BasisCombo({1: 1, 3: 1})
    assert eval_combo(c, 3) == 4
    assert eval_combo(c, 2) == 1
    assert all(eval_combo(BasisCombo({}), k) == 0 for k in range(1, 10))


combos = st.dictionaries(st.integers(1, 12), st.integers(0, 5), max_size=4).map(BasisCombo)


@settings(max_examples=200, deadline=None)
@given(combos, combos, combos)
def test_combine_algebra(a, b, c):
    assert combine(a, b).coeffs == combine(b, a).coeffs
    assert combine(combine(a, b), c).coeffs == combine(a, combine(b, c)).coeffs
    for k in range(1, 40):
        assert eval_combo(combine(a, b), k) == eval_combo(a, k) * eval_combo(b, k)
    assert combine(a, b).total == a.total * b.total


def test_combine_matches_product_of_blocks(rng):
    for _ in range(40):
        n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
        d1, d2 = random_invertible_f2(n1, rng), random_invertible_f2(n2, rng)
        v1, v2 = VecF2(n1, rng.getrandbits(n1)), VecF2(n2, rng.getrandbits(n2))
        whole = decompose(MatF2.block_diag(d1, d2), VecF2(n1 + n2, v1.bits | v2.bits << n1))
        assert whole == combine(decompose(d1, v1), decompose(d2, v2))


def test_basis_combo_validation():
    with pytest.raises(ValueError):
        BasisCombo({0: 1})
    with pytest.raises(ValueError):
        BasisCombo({2: -1})
    assert BasisCombo({3: 0, 1: 2}).coeffs == {1: 2}
    with pytest.raises(ValueError):
        eval_combo(BasisCombo({1: 1}), 0)
    assert math.gcd(*BasisCombo({2: 2, 4: 1}).support) == 2
