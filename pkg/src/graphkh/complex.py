"""The Khovanov chain complex of a labeled graph over GF(2).

The chain space at a state ``s`` is the exterior algebra on ``V(s)``.  Its
basis monomials are bitmasks over the basis positions of ``V(s)``.  Chain
elements are bucketed by the bigrading ``(M0, Q0)`` and the differential is
stored per bucket as a :class:`BitMatrix` whose row ``r`` is the image of
source element ``r`` over the elements of bucket ``(M0 + 1, Q0)``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .gf2 import BitMatrix, iter_bits
from .graph import LabeledGraph
from .states import QuotientSpace, generator_is_zero, quotient_space

DEFAULT_MAX_VERTICES = 20


class CapacityError(RuntimeError):
    pass


class InvariantError(AssertionError):
    """An identity that must hold for every labeled graph was violated."""


class EdgeType(str, Enum):
    EVEN_UP = "even-up"
    EVEN_DOWN = "even-down"
    ODD = "odd"


def grading_m0(g: LabeledGraph, s: int) -> int:
    neg = sum(1 << i for i in range(g.n) if g.sign[i] < 0)
    full = (1 << g.n) - 1
    return bin(s & neg).count("1") + bin(~s & full & ~neg).count("1")


def is_source(g: LabeledGraph, s: int, i: int) -> bool:
    """Whether ``s`` is the tail of the hypercube edge ``{s, s ^ (1 << i)}``."""
    inside = bool((s >> i) & 1)
    return inside if g.sign[i] > 0 else not inside


def edge_orientation(g: LabeledGraph, s: int, i: int) -> str:
    return "source" if is_source(g, s, i) else "target"


def q_grading(sp: QuotientSpace | int, r: int, m0: int) -> int:
    dim = sp if isinstance(sp, int) else sp.dim
    if r > dim:
        raise ValueError(f"monomial degree {r} exceeds dimension {dim}")
    return dim - 2 * r + m0


def _classify(src: QuotientSpace, dst: QuotientSpace, i: int) -> EdgeType:
    zero_src = generator_is_zero(src, i)
    zero_dst = generator_is_zero(dst, i)
    if not zero_src and not zero_dst:
        raise InvariantError(
            f"x_{i} is nonzero in both V({src.state:#b}) and V({dst.state:#b})"
        )
    if zero_src and zero_dst:
        return EdgeType.ODD
    return EdgeType.EVEN_UP if zero_src else EdgeType.EVEN_DOWN


def classify_edge(g: LabeledGraph, s: int, i: int) -> EdgeType:
    if not is_source(g, s, i):
        raise ValueError(f"state {s:#b} is not the source of the edge along vertex {i}")
    return _classify(quotient_space(g, s), quotient_space(g, s ^ (1 << i)), i)


# ------------------------------------------------------- exterior algebra


@dataclass(frozen=True)
class ExteriorElement:
    """A GF(2) combination of monomials in the exterior algebra on ``space``."""

    space: QuotientSpace
    monomials: frozenset[int]

    def __add__(self, other: ExteriorElement) -> ExteriorElement:
        return ExteriorElement(self.space, self.monomials ^ other.monomials)


def wedge_monomials(monos, vec: int) -> set[int]:
    """``vec ^ u`` for ``u`` the sum of ``monos``; no signs in characteristic 2."""
    out: set[int] = set()
    for m in monos:
        for b in iter_bits(vec & ~m):
            out ^= {m | (1 << b)}
    return out


def wedge_by_vector(e: ExteriorElement, coords) -> ExteriorElement:
    if not isinstance(coords, int):
        coords = sum(1 << k for k, c in enumerate(coords) if c)
    return ExteriorElement(e.space, frozenset(wedge_monomials(e.monomials, coords)))


def _edge_images(src: QuotientSpace, dst: QuotientSpace, i: int) -> list[set[int]] | None:
    """Images of all source monomials, indexed by monomial mask; ``None`` on odd edges."""
    kind = _classify(src, dst, i)
    if kind is EdgeType.ODD:
        return None
    cols = [dst.coords(src.lift(k)) for k in range(src.dim)]
    start = wedge_monomials({0}, dst.coords(1 << i)) if kind is EdgeType.EVEN_UP else {0}
    images: list[set[int]] = [start]
    for mono in range(1, 1 << src.dim):
        top = mono.bit_length() - 1
        images.append(wedge_monomials(images[mono ^ (1 << top)], cols[top]))
    return images


def edge_map(g: LabeledGraph, s: int, i: int) -> BitMatrix:
    """Matrix of the edge map from the monomial basis at ``s`` to that at ``s ^ (1 << i)``.

    Row ``mu`` is the image of the monomial with mask ``mu``.
    """
    if not is_source(g, s, i):
        raise ValueError(f"state {s:#b} is not the source of the edge along vertex {i}")
    src = quotient_space(g, s)
    dst = quotient_space(g, s ^ (1 << i))
    images = _edge_images(src, dst, i)
    ncols = 1 << dst.dim
    if images is None:
        return BitMatrix.zeros(1 << src.dim, ncols)
    return BitMatrix(1 << src.dim, ncols, tuple(sum(1 << t for t in img) for img in images))


# ---------------------------------------------------------------- complex

Key = tuple[int, int]


@dataclass(frozen=True, eq=False)
class ChainComplex:
    graph: LabeledGraph
    spaces: tuple[QuotientSpace, ...]
    bases: dict[Key, tuple[tuple[int, int], ...]]
    differentials: dict[Key, BitMatrix]

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def differential(self, key: Key) -> BitMatrix:
        m, q = key
        rows = len(self.bases.get(key, ()))
        cols = len(self.bases.get((m + 1, q), ()))
        return self.differentials.get(key, BitMatrix.zeros(rows, cols))

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "buckets": [
                {
                    "m": m,
                    "q": q,
                    "basis": [{"state": s, "monomial": mono} for s, mono in self.bases[(m, q)]],
                    "differential": [list(iter_bits(r)) for r in self.differential((m, q)).rows],
                }
                for m, q in sorted(self.bases)
            ],
        }


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("GRAPHKH_THREADS", "1")))
    except ValueError:
        return 1


def _edge_block(g: LabeledGraph, states: list[int]) -> list[tuple[int, int, list[set[int]]]]:
    cache: dict[int, QuotientSpace] = {}

    def space(s: int) -> QuotientSpace:
        sp = cache.get(s)
        if sp is None:
            sp = cache[s] = quotient_space(g, s)
        return sp

    out = []
    for s in states:
        for i in range(g.n):
            if not is_source(g, s, i):
                continue
            images = _edge_images(space(s), space(s ^ (1 << i)), i)
            if images is not None:
                out.append((s, i, images))
    return out


def build_complex(g: LabeledGraph, max_vertices: int = DEFAULT_MAX_VERTICES,
                  workers: int | None = None) -> ChainComplex:
    """Assemble ``C(G)`` over all ``2^n`` states.

    ``workers`` (default: ``GRAPHKH_THREADS`` or 1) splits edge-map assembly
    across processes; the result does not depend on it.
    """
    n = g.n
    if n > max_vertices:
        raise CapacityError(f"{n} vertices exceeds the cap of {max_vertices}")
    nstates = 1 << n
    spaces = tuple(quotient_space(g, s) for s in range(nstates))
    m0 = [grading_m0(g, s) for s in range(nstates)]

    bases: dict[Key, list[tuple[int, int]]] = {}
    where: list[list[tuple[Key, int]]] = []
    for s, sp in enumerate(spaces):
        slots = []
        for mono in range(1 << sp.dim):
            key = (m0[s], q_grading(sp.dim, bin(mono).count("1"), m0[s]))
            bucket = bases.setdefault(key, [])
            slots.append((key, len(bucket)))
            bucket.append((s, mono))
        where.append(slots)

    nw = _worker_count(workers)
    if nw > 1 and nstates >= 256:
        chunk = max(1, nstates // (nw * 4))
        blocks = [list(range(a, min(a + chunk, nstates))) for a in range(0, nstates, chunk)]
        with ProcessPoolExecutor(max_workers=nw) as pool:
            results = list(pool.map(_edge_block, [g] * len(blocks), blocks))
        edges = [e for block in results for e in block]
    else:
        edges = _edge_block(g, list(range(nstates)))

    rows: dict[Key, list[int]] = {key: [0] * len(b) for key, b in bases.items()}
    for s, i, images in edges:
        t = s ^ (1 << i)
        for mono, img in enumerate(images):
            if not img:
                continue
            key, r = where[s][mono]
            acc = 0
            for tm in img:
                tkey, c = where[t][tm]
                if tkey != (key[0] + 1, key[1]):
                    raise InvariantError(f"edge map leaves bigrading: {key} -> {tkey}")
                acc |= 1 << c
            rows[key][r] ^= acc

    diffs = {}
    for key, rs in rows.items():
        target = bases.get((key[0] + 1, key[1]))
        if target is None:
            continue
        diffs[key] = BitMatrix(len(rs), len(target), tuple(rs))
    return ChainComplex(g, spaces, {k: tuple(v) for k, v in bases.items()}, diffs)


def compose_is_zero(first: BitMatrix, second: BitMatrix) -> bool:
    """Whether applying ``first`` then ``second`` (row-image convention) gives zero."""
    for r in first.rows:
        acc = 0
        for c in iter_bits(r):
            acc ^= second.rows[c]
        if acc:
            return False
    return True


def verify_d_squared(c: ChainComplex) -> bool:
    for (m, q), d in c.differentials.items():
        nxt = c.differentials.get((m + 1, q))
        if nxt is not None and not compose_is_zero(d, nxt):
            return False
    return True
