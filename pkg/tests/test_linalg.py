import numpy as np
import pytest
from hypothesis import given, strategies as st

from mrlrc.gf import ExtField, PrimeField
from mrlrc.linalg import (Matrix, SingularBlock, SingularMatrix, coords_matrix, full_column_rank_batch,
                          hstack, invert, moore, rank, row_reduce, schur_complement, solve, vandermonde,
                          vstack)
from oracles import column_eliminate, minor_rank

F11 = PrimeField(11)
F121 = ExtField(11, 2)
F9 = ExtField(3, 2)


def random_matrix(field, rows, cols, rng, rank_cap=None):
    M = Matrix(field, field.random(rng, (rows, cols)))
    if rank_cap is not None and rank_cap < min(rows, cols):
        L = Matrix(field, field.random(rng, (rows, rank_cap)))
        R = Matrix(field, field.random(rng, (rank_cap, cols)))
        M = L @ R
    return M


@pytest.mark.parametrize("field", [PrimeField(3), PrimeField(11), F9], ids=repr)
def test_rank_matches_minor_oracle(field):
    rng = np.random.default_rng(11)
    for _ in range(60):
        R, C = rng.integers(1, 6, size=2)
        cap = int(rng.integers(0, min(R, C) + 1))
        M = random_matrix(field, int(R), int(C), rng, cap)
        assert rank(M) == minor_rank(field, M)


def test_rank_vandermonde_example():
    V = vandermonde(F11, [1, 2, 3, 4], 0, 4)
    assert rank(V) == 4
    assert rank(vandermonde(F11, [1, 2, 2, 4], 0, 4)) == 3
    assert rank(Matrix.zeros(F11, 3, 4)) == 0
    assert rank(Matrix.zeros(F11, 0, 4)) == 0


def test_vandermonde_entries():
    V = vandermonde(F11, [2, 3], 1, 3)
    assert V.data[..., 0].tolist() == [[2, 3], [4, 9], [8, 5]]
    with pytest.raises(ValueError):
        vandermonde(F11, [1], 0, -1)


def test_invert_example():
    M = Matrix.from_rows(F11, [[2, 0], [0, 3]])
    assert invert(M) == Matrix.from_rows(F11, [[6, 0], [0, 4]])


def test_invert_singular():
    with pytest.raises(SingularMatrix):
        invert(Matrix.from_rows(F11, [[1, 2], [2, 4]]))
    with pytest.raises(ValueError):
        invert(Matrix.zeros(F11, 2, 3))


@pytest.mark.parametrize("field", [F11, F121], ids=repr)
def test_invert_and_solve_random(field):
    rng = np.random.default_rng(5)
    done = 0
    while done < 30:
        M = random_matrix(field, 4, 4, rng)
        if rank(M) < 4:
            continue
        Mi = invert(M)
        assert M @ Mi == Matrix.identity(field, 4)
        B = random_matrix(field, 4, 3, rng)
        assert M @ solve(M, B) == B
        done += 1


def test_row_reduce_pivots():
    M = Matrix.from_rows(F11, [[0, 1, 2], [0, 2, 4], [1, 0, 0]])
    red, piv = row_reduce(M)
    assert piv == [0, 1]
    assert red.data[:2, :2, 0].tolist() == [[1, 0], [0, 1]]


def test_schur_example_5x5():
    rng = np.random.default_rng(0)
    while True:
        M = random_matrix(F11, 5, 5, rng)
        if rank(Matrix(F11, M.data[:2, :2])) == 2:
            break
    T, S = schur_complement(M, 2)
    _, oracle_S = column_eliminate(F11, M, 2)
    assert [[S[i, j] for j in range(3)] for i in range(3)] == oracle_S
    assert not T.data[:2, 2:].any()
    assert np.array_equal(T.data[:, :2], M.data[:, :2])


def test_schur_identity_and_zero_c():
    B = Matrix.from_rows(F11, [[1, 2], [3, 4]])
    D = Matrix.from_rows(F11, [[5, 6], [7, 8]])
    C = Matrix.from_rows(F11, [[1, 1], [0, 2]])
    I = Matrix.identity(F11, 2)
    _, S = schur_complement(vstack([hstack([I, B]), hstack([C, D])]), 2)
    assert S == D - C @ B
    _, S0 = schur_complement(vstack([hstack([I, B]), hstack([Matrix.zeros(F11, 2, 2), D])]), (2, 2))
    assert S0 == D


def test_schur_singular_block():
    M = Matrix.from_rows(F11, [[1, 2, 3], [2, 4, 5], [1, 1, 1]])
    with pytest.raises(SingularBlock):
        schur_complement(M, 2)
    with pytest.raises(ValueError):
        schur_complement(M, (1, 2))


@pytest.mark.parametrize("field", [F11, F121], ids=repr)
def test_block_rank_additivity(field):
    # rank([A, 0; C, S]) = rank(A) + rank(S) for invertible A.
    rng = np.random.default_rng(9)
    for _ in range(40):
        s = int(rng.integers(1, 4))
        R, Cc = s + int(rng.integers(0, 4)), s + int(rng.integers(0, 4))
        M = random_matrix(field, R, Cc, rng)
        if rank(Matrix(field, M.data[:s, :s])) < s:
            continue
        T, S = schur_complement(M, s)
        assert rank(T) == s + rank(S) == rank(M)


def test_moore_example_f9():
    y = F9.element([0, 1])
    one = F9.element(1)
    Mo = moore(F9, [one, y], 2)
    assert Mo[0, 1] == y and Mo[1, 1] == F9.element([0, 2]) and Mo[1, 0] == one
    assert rank(Mo) == 2
    assert rank(moore(F9, [y, y * 2], 2)) == 1


@given(st.lists(st.lists(st.integers(0, 10), min_size=3, max_size=3), min_size=1, max_size=3))
def test_moore_rank_iff_coordinate_independence(vecs):
    F = ExtField(11, 3)
    betas = [F.element(v) for v in vecs]
    coord_rank = rank(Matrix(F.base, F.base.embed(np.array(vecs, dtype=np.int64).T)))
    assert (rank(moore(F, betas, 3)) == len(betas)) == (coord_rank == len(betas))
    assert rank(moore(F, betas, 3)) == coord_rank


def test_coords_matrix():
    F = ExtField(11, 2)
    row = Matrix.from_rows(F, [[[1, 2], [3, 4], [5, 6]]])
    cm = coords_matrix(row)
    assert cm.field == F.base
    assert cm.data[..., 0].tolist() == [[1, 3, 5], [2, 4, 6]]


def test_full_column_rank_batch_matches_rank():
    rng = np.random.default_rng(2)
    for field in (F11, F121):
        mats = field.random(rng, (50, 4, 3))
        mats[::3, :, 2] = mats[::3, :, 0]                # force some dependent columns
        got = full_column_rank_batch(field, mats)
        want = [rank(Matrix(field, m)) == 3 for m in mats]
        assert got.tolist() == want


def test_matrix_ops_and_shapes():
    A = Matrix.from_rows(F11, [[1, 2], [3, 4]])
    assert (A + A) == Matrix.from_rows(F11, [[2, 4], [6, 8]])
    assert (A - A).is_zero()
    assert A.T == Matrix.from_rows(F11, [[1, 3], [2, 4]])
    assert A.lift(F121).field == F121 and A.lift(F121).in_base_field()
    with pytest.raises(ValueError):
        A @ Matrix.zeros(F11, 3, 1)
    with pytest.raises(ValueError):
        Matrix.from_rows(F11, [[1, 2], [3]])
