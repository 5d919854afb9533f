"""Tests for linear and cyclic codes: RREF normalization, duals, exact
minimum distance under both strategies, and cyclic subcodes selected by
factor index sets."""

from __future__ import annotations

import pytest

from qclrc.algebra import Poly, factor_unity, make_field
from qclrc.codes import (
    CyclicCode,
    LinearCode,
    cyclic_code,
    cyclic_dual,
    min_distance,
    min_weight_codeword,
    rref,
    subcode_distance,
    subcode_from_bz,
)
from qclrc.errors import ResourceLimitError

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(4)
F5 = make_field(5)


def random_code(rng, field, n, max_rows):
    rows = [[rng.randrange(field.order) for _ in range(n)]
            for _ in range(rng.randint(1, max_rows))]
    return LinearCode.from_rows(field, n, rows)


# ---------------------------------------------------------------------------
# rref


def test_rref_identity_fixed_point():
    rows = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    ech, rank, piv = rref(rows, F2)
    assert ech == rows
    assert rank == 3
    assert piv == (0, 1, 2)


def test_rref_known_matrix():
    # over F_3: [[2,1,0],[1,2,0]] reduces to [[1,2,0],[0,0,0]]
    ech, rank, piv = rref([[2, 1, 0], [1, 2, 0]], F3)
    assert rank == 1
    assert piv == (0,)
    assert ech[0] == (1, 2, 0)
    assert ech[1] == (0, 0, 0)


def test_rref_leading_ones_and_cleared_pivot_columns(rng):
    for _ in range(50):
        field = rng.choice([F2, F3, F4, F5])
        n = rng.randint(1, 6)
        rows = [[rng.randrange(field.order) for _ in range(n)]
                for _ in range(rng.randint(1, 5))]
        ech, rank, piv = rref(rows, field)
        assert len(piv) == rank
        for r, p in enumerate(piv):
            assert ech[r][p] == 1
            assert all(ech[i][p] == 0 for i in range(len(ech)) if i != r)
            assert all(v == 0 for v in ech[r][:p])


def test_rref_empty():
    assert rref([], F2) == ((), 0, ())


# ---------------------------------------------------------------------------
# LinearCode basics


def test_from_rows_normalizes_to_rref():
    a = LinearCode.from_rows(F2, 4, [[1, 1, 0, 0], [0, 1, 1, 0]])
    b = LinearCode.from_rows(F2, 4, [[1, 0, 1, 0], [1, 1, 0, 0]])
    assert a == b
    assert a.k == 2


def test_from_rows_rejects_bad_shape_and_entries():
    with pytest.raises(ValueError, match="row length"):
        LinearCode.from_rows(F2, 3, [[1, 0]])
    with pytest.raises(ValueError, match="outside field"):
        LinearCode.from_rows(F2, 2, [[1, 2]])


def test_zero_and_full_codes():
    z = LinearCode.zero(F3, 4)
    assert z.k == 0 and z.is_zero()
    assert z.contains([0, 0, 0, 0])
    assert not z.contains([1, 0, 0, 0])
    f = LinearCode.full(F3, 4)
    assert f.k == 4
    assert f.contains([2, 1, 0, 2])


def test_contains_membership(rng):
    code = LinearCode.from_rows(F5, 5, [[1, 2, 3, 4, 0], [0, 1, 1, 1, 1]])
    for word in code.codewords():
        assert code.contains(word)
    assert not code.contains([1, 0, 0, 0, 0])
    assert not code.contains([0, 0, 0, 0])


def test_codeword_count(rng):
    for _ in range(10):
        field = rng.choice([F2, F3])
        code = random_code(rng, field, rng.randint(2, 5), 3)
        words = set(code.codewords())
        assert len(words) == field.order ** code.k


# ---------------------------------------------------------------------------
# duals


def test_dual_dimension_and_orthogonality(rng):
    for _ in range(30):
        field = rng.choice([F2, F3, F4, F5])
        n = rng.randint(2, 7)
        code = random_code(rng, field, n, n)
        dual = code.dual()
        assert code.k + dual.k == n
        for row in code.rows:
            for drow in dual.rows:
                acc = 0
                for a, b in zip(row, drow):
                    acc = field.add(acc, field.mul(a, b))
                assert acc == 0


def test_double_dual_is_identity(rng):
    for _ in range(30):
        field = rng.choice([F2, F3, F4, F5])
        code = random_code(rng, field, rng.randint(2, 7), 5)
        assert code.dual().dual() == code


def test_dual_of_zero_and_full():
    assert LinearCode.zero(F2, 5).dual() == LinearCode.full(F2, 5)
    assert LinearCode.full(F2, 5).dual() == LinearCode.zero(F2, 5)


# ---------------------------------------------------------------------------
# minimum distance


def test_min_distance_rejects_zero_code():
    with pytest.raises(ValueError, match="zero code"):
        min_distance(LinearCode.zero(F2, 4))


def test_min_distance_full_space_is_one():
    assert min_distance(LinearCode.full(F5, 6)) == 1


def test_min_distance_repetition_code():
    code = LinearCode.from_rows(F3, 7, [[1] * 7])
    assert min_distance(code) == 7
    assert min_distance(code, strategy="enumeration") == 7


def test_min_distance_hamming_7_4():
    rows = [
        [1, 0, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 1],
    ]
    code = LinearCode.from_rows(F2, 7, rows)
    assert min_distance(code, strategy="enumeration") == 3
    assert min_distance(code, strategy="parity") == 3


def test_min_distance_strategies_agree(rng):
    for _ in range(60):
        field = rng.choice([F2, F3, F4, F5])
        n = rng.randint(2, 8)
        code = random_code(rng, field, n, n - 1)
        if code.k == 0 or code.k == n:
            continue
        d_enum = min_distance(code, strategy="enumeration")
        d_par = min_distance(code, strategy="parity")
        assert d_enum == d_par
        assert d_par <= n - code.k + 1


def test_min_distance_enumeration_budget():
    code = LinearCode.from_rows(F2, 6, [[1, 0, 0, 0, 1, 1],
                                        [0, 1, 0, 0, 1, 0],
                                        [0, 0, 1, 0, 0, 1]])
    with pytest.raises(ResourceLimitError, match="enumeration budget"):
        min_distance(code, strategy="enumeration", enum_budget=4)


def test_min_distance_parity_budget():
    code = LinearCode.from_rows(F2, 8, [[1, 1, 1, 1, 1, 1, 1, 1]])
    with pytest.raises(ResourceLimitError, match="instance too large"):
        min_distance(code, strategy="parity", rank_budget=3)


def test_min_distance_auto_falls_back_to_parity():
    # k = 5 with a tiny enumeration budget forces the parity search
    rows = [[1 if j == i else 0 for j in range(7)] + [1] for i in range(5)]
    for r in rows:
        r.extend([0])
    code = LinearCode.from_rows(F2, 9, [r[:9] for r in rows])
    d_auto = min_distance(code, enum_budget=8)
    d_enum = min_distance(code, strategy="enumeration")
    assert d_auto == d_enum


def test_min_distance_unknown_strategy():
    code = LinearCode.full(F2, 2)
    with pytest.raises(ValueError, match="unknown strategy"):
        min_distance(code, strategy="brute")


def test_min_weight_codeword_matches_distance(rng):
    for _ in range(20):
        field = rng.choice([F2, F3])
        n = rng.randint(2, 7)
        code = random_code(rng, field, n, n - 1)
        if code.k == 0 or code.k == n:
            continue
        w, word = min_weight_codeword(code)
        assert w == min_distance(code)
        assert code.contains(word)
        assert sum(1 for v in word if v) == w


# ---------------------------------------------------------------------------
# cyclic codes


def cyclic_shift(word):
    return (word[-1],) + tuple(word[:-1])


def test_cyclic_code_rejects_nondivisor():
    with pytest.raises(ValueError, match="does not divide"):
        cyclic_code(Poly(F2, [1, 1, 1]), 7)


def test_cyclic_code_full_and_zero():
    full = cyclic_code(Poly.one(F2), 7)
    assert full.k == 7
    xm1 = Poly.x_pow(F2, 7).sub(Poly.one(F2))
    zero = cyclic_code(xm1, 7)
    assert zero.k == 0
    assert zero.dual().k == 7
    assert full.dual().k == 0


def test_cyclic_linear_code_shift_invariant(rng):
    fact = factor_unity(7, 2)
    for info in fact.factors:
        code = cyclic_code(info.poly, 7).linear_code()
        for row in code.rows:
            assert code.contains(cyclic_shift(row))


def test_cyclic_code_distance_7_2():
    # weight-4 generator whose code has minimum distance 4
    g = Poly(F2, [1, 1, 1, 0, 1])
    code = cyclic_code(g, 7)
    assert code.k == 3
    assert min_distance(code.linear_code()) == 4


def test_cyclic_code_distance_11_5():
    g = Poly(F5, [4, 1])
    code = cyclic_code(g, 11)
    assert code.k == 10
    assert min_distance(code.linear_code()) == 2


def test_repetition_cyclic_code():
    xm1 = Poly.x_pow(F2, 7).sub(Poly.one(F2))
    g, rem = xm1.divmod(Poly(F2, [1, 1]))
    assert rem.is_zero()
    code = cyclic_code(g, 7)
    assert code.k == 1
    assert min_distance(code.linear_code()) == 7


def test_cyclic_dual_even_weight_code():
    even = cyclic_code(Poly(F2, [1, 1]), 7)
    dual = cyclic_dual(even)
    assert dual.gpoly == Poly(F2, [1, 1, 1, 1, 1, 1, 1])
    assert dual.k == 1
    assert min_distance(dual.linear_code()) == 7


def test_cyclic_dual_matches_linear_dual(rng):
    for m, q in [(7, 2), (4, 3), (5, 4), (11, 5)]:
        fact = factor_unity(m, q)
        for info in fact.factors:
            code = cyclic_code(info.poly, m)
            assert code.dual().linear_code() == code.linear_code().dual()


def test_cyclic_dual_reciprocal_value():
    # (x^7 - 1) / (x^3 + x^2 + 1) reversed gives x^4 + x^2 + x + 1
    g = Poly(F2, [1, 0, 1, 1])
    dual = cyclic_code(g, 7).dual()
    assert dual.gpoly == Poly(F2, [1, 1, 1, 0, 1])


# ---------------------------------------------------------------------------
# subcodes selected by factor indices


def test_subcode_rejects_empty_and_out_of_range():
    fact = factor_unity(7, 2)
    with pytest.raises(ValueError, match="empty index set"):
        subcode_from_bz([], fact)
    with pytest.raises(ValueError, match="out of range"):
        subcode_from_bz([4], fact)


def test_subcode_frozen_7_2():
    fact = factor_unity(7, 2)
    d1 = subcode_from_bz([1], fact)
    assert d1.gpoly == Poly(F2, [1, 1, 1, 0, 1])
    d2 = subcode_from_bz([2], fact)
    assert d2.gpoly == Poly(F2, [1, 0, 1, 1, 1])
    d12 = subcode_from_bz([1, 2], fact)
    assert d12.gpoly == Poly(F2, [1, 1])
    assert min_distance(d1.linear_code()) == 4
    assert min_distance(d2.linear_code()) == 4
    assert min_distance(d12.linear_code()) == 2


def test_subcode_frozen_11_5():
    fact = factor_unity(11, 5)
    full = subcode_from_bz([1, 2, 3], fact)
    assert full.gpoly == Poly.one(F5)
    assert full.k == 11
    assert min_distance(full.linear_code()) == 1


def test_subcode_nesting():
    # adding indices divides out more factors, so the dual grows
    fact = factor_unity(7, 2)
    small = subcode_from_bz([1], fact).linear_code()
    big = subcode_from_bz([1, 2], fact).linear_code()
    for row in small.rows:
        assert big.contains(row)


def test_subcode_duplicate_indices():
    fact = factor_unity(7, 2)
    assert subcode_from_bz([1, 1, 2], fact) == subcode_from_bz([1, 2], fact)


def test_subcode_distance_cached():
    fact = factor_unity(7, 2)
    assert subcode_distance(fact, [1]) == 4
    assert subcode_distance(fact, (1,)) == 4
    assert frozenset([1]) in fact._subcode_cache
    assert subcode_distance(fact, [1, 2]) == 2
