import random

import numpy as np
import pytest

from oracles import naive_rank, naive_rref
from stabent.f2 import F2Matrix, kernel, rank, replay_row_ops, rref, solve


def random_matrix(rng: random.Random, rows: int, cols: int) -> F2Matrix:
    return F2Matrix.from_ints([rng.getrandbits(cols) for _ in range(rows)], cols)


def test_rank_identity():
    assert rank(F2Matrix.identity(3)) == 3


def test_rank_circulant_band_is_deficient():
    # 1s on the diagonal, subdiagonal and top-right corner: rank k-1.
    omega = F2Matrix.from_rows([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert rank(omega) == 2


def test_rank_zero_matrix():
    assert rank(F2Matrix.zeros(4, 7)) == 0


def test_rref_identity_fixed():
    res = rref(F2Matrix.identity(4))
    assert res.matrix.to_lists() == F2Matrix.identity(4).to_lists()
    assert res.row_ops == ()
    assert res.pivot_cols == (0, 1, 2, 3)


def test_rref_rank_one():
    res = rref(F2Matrix.from_rows([[1, 1], [1, 1]]))
    assert res.matrix.to_lists() == [[1, 1], [0, 0]]
    assert res.pivot_cols == (0,)


def test_rref_toric_x_tail_rank():
    from stabent.codes import toric
    from stabent.pauli import standard_form

    d = standard_form(toric(2)).x_tail
    echelon, pivots = naive_rref(d.to_array())
    assert len(pivots) == 3
    assert rank(d) == 3


def test_rref_replay_and_idempotence():
    rng = random.Random(11)
    for _ in range(200):
        m = random_matrix(rng, rng.randint(0, 8), rng.randint(1, 10))
        res = rref(m)
        assert replay_row_ops(m, res.row_ops).to_lists() == res.matrix.to_lists()
        again = rref(res.matrix)
        assert again.matrix.to_lists() == res.matrix.to_lists()
        assert list(res.pivot_cols) == sorted(res.pivot_cols)


def test_kernel_full_rank_is_empty(steane_spec):
    from stabent.pauli import standard_form
    from stabent.codes import css

    d = standard_form(css(steane_spec)).x_tail
    assert rank(d) == d.rows
    assert kernel(d).rows == 0


def test_kernel_zero_matrix_standard_basis():
    basis = kernel(F2Matrix.zeros(3, 5))
    assert basis.rows == 3
    assert sorted(basis.data) == [1, 2, 4]


def test_kernel_rank_one():
    basis = kernel(F2Matrix.from_rows([[1, 1], [1, 1]]))
    assert basis.to_lists() == [[1, 1]]


def test_solve_identity():
    assert solve(F2Matrix.identity(3), [1, 0, 1]) == 0b101


def test_solve_inconsistent_none():
    assert solve(F2Matrix.zeros(2, 3), [1, 0, 0], side="left") is None


def test_solve_planted_solutions():
    rng = random.Random(5)
    for _ in range(100):
        m = random_matrix(rng, 6, 10)
        x = rng.getrandbits(6)
        rhs = 0
        for i in range(6):
            if (x >> i) & 1:
                rhs ^= m.data[i]
        got = solve(m, rhs, side="left")
        assert got is not None
        check = 0
        for i in range(6):
            if (got >> i) & 1:
                check ^= m.data[i]
        assert check == rhs


def test_solve_right_orientation():
    m = F2Matrix.from_rows([[1, 1, 0], [0, 1, 1]])
    x = solve(m, [1, 0], side="right")
    assert x is not None
    for i in range(2):
        assert ((m.data[i] & x).bit_count() & 1) == [1, 0][i]


def test_rank_transpose_agrees():
    rng = random.Random(23)
    for _ in range(120):
        m = random_matrix(rng, rng.randint(1, 64), rng.randint(1, 64))
        assert rank(m) == rank(m.transpose())


def test_kernel_dimension_plus_rank():
    rng = random.Random(31)
    for _ in range(200):
        m = random_matrix(rng, rng.randint(0, 12), rng.randint(1, 14))
        basis = kernel(m)
        assert basis.rows + rank(m) == m.rows
        for v in basis.data:
            acc = 0
            for i in range(m.rows):
                if (v >> i) & 1:
                    acc ^= m.data[i]
            assert acc == 0
        if basis.rows:
            assert rank(basis) == basis.rows


def test_bitpacked_agrees_with_naive_oracle():
    rng = random.Random(97)
    for _ in range(1000):
        rows, cols = rng.randint(1, 10), rng.randint(1, 12)
        m = random_matrix(rng, rows, cols)
        arr = m.to_array()
        assert rank(m) == naive_rank(arr)
        res = rref(m)
        naive_mat, naive_pivots = naive_rref(arr)
        assert res.matrix.to_array().tolist() == naive_mat.tolist()
        assert list(res.pivot_cols) == naive_pivots


def test_empty_shapes_are_legal():
    empty_rows = F2Matrix.zeros(0, 4)
    assert rank(empty_rows) == 0
    assert kernel(empty_rows).rows == 0
    empty_cols = F2Matrix.zeros(3, 0)
    assert rank(empty_cols) == 0
    assert kernel(empty_cols).rows == 3
    res = rref(empty_cols)
    assert res.pivot_cols == ()


def test_matmul_and_transpose():
    rng = random.Random(3)
    for _ in range(50):
        a = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        b = random_matrix(rng, a.cols, rng.randint(1, 6))
        prod = (a @ b).to_array()
        expect = (a.to_array().astype(int) @ b.to_array().astype(int)) % 2
        assert prod.tolist() == expect.tolist()


def test_permute_columns_roundtrip():
    rng = random.Random(13)
    m = random_matrix(rng, 4, 6)
    perm = [3, 1, 5, 0, 2, 4]
    inv = [perm.index(i) for i in range(6)]
    assert m.permute_columns(perm).permute_columns(inv).to_lists() == m.to_lists()
