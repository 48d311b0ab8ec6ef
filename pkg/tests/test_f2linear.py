from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pillowcase.f2linear import F2Matrix, NotAComplexError, homology_rank, kernel_dim, rank


def dense_matrices(max_rows=9, max_cols=9):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def naive_matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % 2 for j in range(len(b[0]))] for i in range(len(a))]


def test_small_ranks():
    assert rank(F2Matrix.identity(5)) == 5
    assert rank(F2Matrix.zeros(4, 3)) == 0
    assert rank(F2Matrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2  # rows sum to zero mod 2


def test_from_entries_toggles_repeats():
    m = F2Matrix.from_entries(2, 2, [(0, 1), (0, 1), (1, 0)])
    assert m.to_dense() == [[0, 0], [1, 0]]


def test_square_zero_single_arrow():
    d = F2Matrix.from_dense([[0, 0], [1, 0]])
    assert homology_rank(d) == 0


def test_homology_rejects_non_complex():
    d = F2Matrix.from_dense([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    with pytest.raises(NotAComplexError):
        homology_rank(d)


def test_homology_rejects_non_square():
    with pytest.raises(ValueError):
        homology_rank(F2Matrix.zeros(2, 3))


@given(dense_matrices())
def test_rank_nullity_against_kernel_basis(rows):
    m = F2Matrix.from_dense(rows)
    assert rank(m) + kernel_dim(m) == m.ncols


@given(dense_matrices())
def test_rank_of_transpose(rows):
    m = F2Matrix.from_dense(rows)
    assert rank(m) == rank(m.transpose())


@given(dense_matrices(6, 6), st.data())
def test_matmul_matches_naive(rows, data):
    a = F2Matrix.from_dense(rows)
    cols = data.draw(st.integers(1, 6))
    b_rows = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=a.ncols, max_size=a.ncols))
    b = F2Matrix.from_dense(b_rows)
    assert (a @ b).to_dense() == naive_matmul(rows, b_rows)


def _block_complex(block, n0):
    """d maps the last columns onto the first ``n0`` rows through ``block``; d^2 = 0."""
    n1 = len(block[0])
    n = n0 + n1
    entries = [(i, n0 + j) for i in range(n0) for j in range(n1) if block[i][j]]
    return F2Matrix.from_entries(n, n, entries)


@settings(max_examples=60)
@given(dense_matrices(7, 7), st.randoms(use_true_random=False))
def test_homology_of_conjugated_block_complex(block, rnd):
    n0 = len(block)
    d = _block_complex(block, n0)
    expected = d.nrows - 2 * rank(F2Matrix.from_dense(block))
    assert homology_rank(d) == expected
    # relabel the basis: P d P^-1 is still a complex with the same homology
    perm = list(range(d.nrows))
    rnd.shuffle(perm)
    pd = F2Matrix.from_entries(d.nrows, d.ncols, [(perm[i], perm[j]) for i, j in d.nonzero()])
    assert homology_rank(pd) == expected


def test_homology_under_change_of_basis():
    # conjugate by an invertible unipotent matrix (not just a permutation)
    rnd = random.Random(7)
    block = [[rnd.randint(0, 1) for _ in range(5)] for _ in range(6)]
    d = _block_complex(block, 6)
    n = d.nrows
    upper = [(i, j) for i in range(n) for j in range(i, n) if i == j or rnd.random() < 0.3]
    u = F2Matrix.from_entries(n, n, upper)
    # inverse of a unit upper triangular matrix over F2 by back substitution
    dense_u = u.to_dense()
    inv = [[0] * n for _ in range(n)]
    for col in range(n):
        e = [int(r == col) for r in range(n)]
        x = [0] * n
        for r in reversed(range(n)):
            x[r] = (e[r] + sum(dense_u[r][k] * x[k] for k in range(r + 1, n))) % 2
        for r in range(n):
            inv[r][col] = x[r]
    u_inv = F2Matrix.from_dense(inv)
    assert (u @ u_inv).to_dense() == F2Matrix.identity(n).to_dense()
    conj = u @ d @ u_inv
    assert homology_rank(conj) == homology_rank(d)
