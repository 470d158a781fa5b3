"""The quotient spaces V(s) attached to states of a labeled graph.

A state is a vertex subset encoded as a bitmask.  ``V(s)`` is spanned by
generators ``x_0 .. x_{n-1}`` modulo one relation per vertex: for ``i`` outside
``s`` the relation expresses ``x_i`` through the generators in ``s``; for ``i``
in ``s`` it is row ``i`` of ``A(s)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix, Rref, iter_bits, rref_rows
from .graph import LabeledGraph


def members(s: int) -> list[int]:
    return list(iter_bits(s))


def toggle(s: int, i: int) -> int:
    return s ^ (1 << i)


def relations(g: LabeledGraph, s: int) -> BitMatrix:
    n = g.n
    rows = []
    for i in range(n):
        row = (g.nbrs[i] | (g.framing[i] << i)) & s
        if not (s >> i) & 1:
            row |= 1 << i
        rows.append(row)
    return BitMatrix(n, n, tuple(rows))


@dataclass(frozen=True)
class QuotientSpace:
    """``V(s)`` with the canonical basis given by the non-pivot columns.

    Pivots are searched first over generators outside the state, then over the
    state in ascending order, so every generator outside ``s`` is eliminated
    and the basis is a subset of ``s``.
    """

    n: int
    state: int
    relation_rref: Rref
    basis_cols: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis_cols)

    def reduce_mask(self, v: int) -> int:
        """Normal form of ``v`` as a mask over generator indices (support in ``basis_cols``)."""
        for c, r in zip(self.relation_rref.pivot_cols, self.relation_rref.matrix.rows):
            if (v >> c) & 1:
                v ^= r
        return v

    def coords(self, v: int) -> int:
        """Coordinates of the class of ``v`` as a bitmask over basis positions."""
        w = self.reduce_mask(v)
        out = 0
        for k, b in enumerate(self.basis_cols):
            if (w >> b) & 1:
                out |= 1 << k
        return out

    def lift(self, k: int) -> int:
        """Representative in GF(2)^n of basis element ``k``."""
        return 1 << self.basis_cols[k]


def quotient_space(g: LabeledGraph, s: int) -> QuotientSpace:
    n = g.n
    rel = relations(g, s)
    outside = [i for i in range(n) if not (s >> i) & 1]
    inside = [i for i in range(n) if (s >> i) & 1]
    rows, pivots = rref_rows(rel.rows, outside + inside)
    rows += [0] * (n - len(rows))
    piv = set(pivots)
    basis = tuple(i for i in inside if i not in piv)
    return QuotientSpace(n, s, Rref(BitMatrix(n, n, tuple(rows)), tuple(pivots)), basis)


def reduce(sp: QuotientSpace, v) -> list[int]:
    """Coordinates of the class of ``v`` over ``sp.basis_cols`` as a 0/1 list."""
    if not isinstance(v, int):
        if len(v) != sp.n:
            raise ValueError(f"vector of length {len(v)} in a space with {sp.n} generators")
        v = sum(1 << j for j, b in enumerate(v) if b)
    elif v < 0 or v >> sp.n:
        raise ValueError(f"vector {v:#b} has more than {sp.n} entries")
    c = sp.coords(v)
    return [(c >> k) & 1 for k in range(sp.dim)]


def generator_is_zero(sp: QuotientSpace, i: int) -> bool:
    return sp.reduce_mask(1 << i) == 0
