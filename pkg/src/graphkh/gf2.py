"""Dense linear algebra over GF(2).

Rows are stored as Python integers with bit ``j`` holding column ``j``, so a
row XOR is a single machine-word-parallel operation regardless of width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class ShapeError(ValueError):
    """Raised when matrix or vector dimensions do not fit the operation."""


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ShapeError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ShapeError(f"row {r:#b} does not fit in {self.ncols} columns")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ShapeError("ragged matrix")
            rows.append(pack(row))
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= j < self.ncols):
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [unpack(r, self.ncols) for r in self.rows]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def transpose(self) -> BitMatrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("shape mismatch in addition")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def append_row(self, v: int) -> BitMatrix:
        return BitMatrix(self.nrows + 1, self.ncols, self.rows + (v,))

    def is_zero(self) -> bool:
        return not any(self.rows)


@dataclass(frozen=True)
class Rref:
    matrix: BitMatrix
    pivot_cols: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)


def pack(bits: Iterable[int]) -> int:
    """Pack a 0/1 sequence into an integer, element ``j`` at bit ``j``."""
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def unpack(v: int, n: int) -> list[int]:
    return [(v >> j) & 1 for j in range(n)]


def iter_bits(v: int) -> Iterable[int]:
    """Yield the indices of set bits of ``v`` in ascending order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def _as_int(v, n: int) -> int:
    if isinstance(v, int):
        if v < 0 or v >> n:
            raise ShapeError(f"vector {v:#b} does not fit in {n} columns")
        return v
    if len(v) != n:
        raise ShapeError(f"vector of length {len(v)} against {n} columns")
    return pack(v)


def eliminate(rows: Iterable[int]) -> dict[int, int]:
    """Echelon basis of the span of ``rows`` keyed by lowest set bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            low = (r & -r).bit_length() - 1
            p = basis.get(low)
            if p is None:
                basis[low] = r
                break
            r ^= p
    return basis


def reduce_against(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` by an :func:`eliminate` basis; zero iff ``v`` is in the span."""
    for low in sorted(basis):
        if (v >> low) & 1:
            v ^= basis[low]
    return v


def rank_of_rows(rows: Iterable[int]) -> int:
    return len(eliminate(rows))


def rank(m: BitMatrix) -> int:
    return rank_of_rows(m.rows)


def corank(m: BitMatrix) -> int:
    if not m.is_square:
        raise ShapeError(f"corank needs a square matrix, got {m.nrows}x{m.ncols}")
    return m.ncols - rank(m)


def rref_rows(rows: Iterable[int], column_order: Sequence[int] | None = None) -> tuple[list[int], list[int]]:
    """Gauss-Jordan elimination on integer rows.

    Pivots are chosen by scanning columns in ``column_order`` (ascending
    column index by default) and taking the topmost remaining row. Returns
    the nonzero reduced rows and their pivot columns in the order found.
    """
    work = [r for r in rows]
    if column_order is None:
        width = max((r.bit_length() for r in work), default=0)
        column_order = range(width)
    out: list[int] = []
    pivots: list[int] = []
    for c in column_order:
        bit = 1 << c
        hit = next((k for k, r in enumerate(work) if r & bit), None)
        if hit is None:
            continue
        prow = work.pop(hit)
        work = [r ^ prow if r & bit else r for r in work]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(c)
    return out, pivots


def rref(m: BitMatrix) -> Rref:
    rows, pivots = rref_rows(m.rows, range(m.ncols))
    rows += [0] * (m.nrows - len(rows))
    return Rref(BitMatrix(m.nrows, m.ncols, tuple(rows)), tuple(pivots))


def in_row_space(m: BitMatrix, v) -> bool:
    v = _as_int(v, m.ncols)
    return reduce_against(eliminate(m.rows), v) == 0


def principal_submatrix(a: BitMatrix, s: Iterable[int]) -> BitMatrix:
    """Rows and columns of ``a`` indexed by ``s``, in ascending order."""
    if not a.is_square:
        raise ShapeError("principal submatrix of a non-square matrix")
    idx = sorted(set(s))
    for i in idx:
        if not (0 <= i < a.nrows):
            raise IndexError(f"index {i} out of range for {a.nrows}x{a.ncols}")
    rows = []
    for i in idx:
        r = a.rows[i]
        rows.append(pack((r >> j) & 1 for j in idx))
    return BitMatrix(len(idx), len(idx), tuple(rows))
