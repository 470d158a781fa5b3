import random

import pytest
from hypothesis import given, strategies as st

from graphkh.gf2 import (
    BitMatrix,
    ShapeError,
    corank,
    in_row_space,
    principal_submatrix,
    rank,
    rref,
)


def M(rows):
    return BitMatrix.from_lists(rows)


def matrices(max_rows=8, max_cols=8):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r).map(
                lambda rows: BitMatrix(r, c, tuple(rows))
            )
        )
    )


def brute_rank(m: BitMatrix) -> int:
    span = {0}
    for r in m.rows:
        span |= {r ^ s for s in span}
    return len(span).bit_length() - 1


@pytest.mark.parametrize("rows, expected", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
    ([[1, 1], [1, 1]], 1),
    ([[0, 0], [0, 0]], 0),
])
def test_rank_examples(rows, expected):
    assert rank(M(rows)) == expected


@pytest.mark.parametrize("rows, expected", [
    ([[0]], 1),
    ([[0, 1], [1, 0]], 0),
    ([[1, 1], [1, 1]], 1),
])
def test_corank_examples(rows, expected):
    assert corank(M(rows)) == expected


def test_corank_rejects_non_square():
    with pytest.raises(ShapeError):
        corank(M([[1, 0, 1]]))


def test_rref_examples():
    r = rref(M([[1, 1], [1, 1]]))
    assert r.matrix.to_lists() == [[1, 1], [0, 0]]
    assert r.pivot_cols == (0,)

    ident = BitMatrix.identity(4)
    r = rref(ident)
    assert r.matrix == ident and r.pivot_cols == (0, 1, 2, 3)

    r = rref(M([[0, 1], [1, 1]]))
    assert r.matrix.to_lists() == [[1, 0], [0, 1]]
    assert r.pivot_cols == (0, 1)


def test_in_row_space_examples():
    assert in_row_space(M([[1, 0], [0, 1]]), [1, 1])
    assert not in_row_space(M([[1, 1]]), [1, 0])
    assert in_row_space(BitMatrix.zeros(2, 2), [0, 0])
    with pytest.raises(ShapeError):
        in_row_space(M([[1, 1]]), [1, 0, 0])


def test_principal_submatrix_examples():
    a = M([[0, 1, 1], [1, 1, 0], [1, 0, 0]])
    assert principal_submatrix(a, range(3)) == a
    empty = principal_submatrix(a, [])
    assert (empty.nrows, empty.ncols) == (0, 0)
    assert rank(empty) == 0 and corank(empty) == 0
    assert principal_submatrix(M([[0, 1], [1, 0]]), {0}).to_lists() == [[0]]
    assert principal_submatrix(a, {0, 2}).to_lists() == [[0, 1], [1, 0]]
    with pytest.raises(IndexError):
        principal_submatrix(a, {3})


@given(matrices())
def test_rank_matches_span_enumeration(m):
    assert rank(m) == brute_rank(m)


@given(matrices())
def test_rank_invariant_under_transpose(m):
    assert rank(m) == rank(m.transpose())
    assert 0 <= rank(m) <= min(m.nrows, m.ncols)


@given(matrices())
def test_rref_properties(m):
    r = rref(m)
    assert rref(r.matrix) == r
    assert rank(r.matrix) == rank(m) == len(r.pivot_cols)
    assert list(r.pivot_cols) == sorted(set(r.pivot_cols))
    for k, c in enumerate(r.pivot_cols):
        column = [(row >> c) & 1 for row in r.matrix.rows]
        assert column == [int(i == k) for i in range(m.nrows)]
    # same row space
    assert all(in_row_space(m, row) for row in r.matrix.rows)
    assert all(in_row_space(r.matrix, row) for row in m.rows)


@given(matrices(), st.data())
def test_in_row_space_matches_rank(m, data):
    v = data.draw(st.integers(0, (1 << m.ncols) - 1))
    assert in_row_space(m, v) == (rank(m.append_row(v)) == rank(m))


def symmetric(rng, n):
    rows = [0] * n
    for i in range(n):
        if rng.random() < 0.5:
            rows[i] |= 1 << i
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return BitMatrix(n, n, tuple(rows))


def bordered(a: BitMatrix, border: int, corner: int) -> BitMatrix:
    n = a.nrows
    rows = [r | (((border >> i) & 1) << n) for i, r in enumerate(a.rows)]
    rows.append(border | (corner << n))
    return BitMatrix(n + 1, n + 1, tuple(rows))


def test_bordered_rank_implication_sampled():
    rng = random.Random(11)
    hits = 0
    for _ in range(2000):
        n = rng.randint(0, 10)
        a = symmetric(rng, n)
        border = rng.getrandbits(n) if n else 0
        big = bordered(a, border, rng.randint(0, 1))
        assert big.is_symmetric()
        if rank(big) == rank(a) + 1:
            hits += 1
            assert rank(a.append_row(border)) == rank(a)
    assert hits > 100
