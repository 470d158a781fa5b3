"""Labeled simple graphs and their formal Reidemeister moves.

A vertex carries a framing in {0, 1} and a sign in {-1, +1}.  The adjacency
matrix over GF(2) has the edge relation off the diagonal and the framing on
it.  Adjacency is stored as one neighbour bitmask per vertex.

Moves return new graphs.  Removing vertices shifts higher indices down;
:class:`MoveSpec` always refers to indices of the graph it is applied to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable

from .gf2 import BitMatrix, corank, iter_bits


class MoveNotApplicable(ValueError):
    """The requested move's preconditions fail at the given site."""


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledGraph:
    framing: tuple[int, ...]
    sign: tuple[int, ...]
    nbrs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.framing)
        if len(self.sign) != n or len(self.nbrs) != n:
            raise GraphError("framing, sign and neighbourhood lists differ in length")
        full = (1 << n) - 1
        for i in range(n):
            if self.framing[i] not in (0, 1):
                raise GraphError(f"vertex {i}: framing must be 0 or 1")
            if self.sign[i] not in (-1, 1):
                raise GraphError(f"vertex {i}: sign must be -1 or +1")
            m = self.nbrs[i]
            if m & ~full or (m >> i) & 1:
                raise GraphError(f"vertex {i}: bad neighbourhood {m:#b}")
            for j in iter_bits(m):
                if not (self.nbrs[j] >> i) & 1:
                    raise GraphError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def empty(cls) -> LabeledGraph:
        return cls((), (), ())

    @classmethod
    def from_edges(cls, labels: Iterable[tuple[int, int]], edges: Iterable[tuple[int, int]] = ()) -> LabeledGraph:
        """Build from ``(framing, sign)`` labels and 0-based edge pairs."""
        labels = list(labels)
        nbrs = [0] * len(labels)
        for i, j in edges:
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            if not (0 <= i < len(labels) and 0 <= j < len(labels)):
                raise GraphError(f"edge ({i}, {j}) out of range")
            nbrs[i] |= 1 << j
            nbrs[j] |= 1 << i
        return cls(tuple(f for f, _ in labels), tuple(s for _, s in labels), tuple(nbrs))

    @property
    def n(self) -> int:
        return len(self.framing)

    def adjacent(self, i: int, j: int) -> bool:
        return bool((self.nbrs[i] >> j) & 1)

    def neighbours(self, v: int) -> set[int]:
        return set(iter_bits(self.nbrs[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in iter_bits(self.nbrs[i]) if i < j]

    def labels(self) -> list[tuple[int, int]]:
        return list(zip(self.framing, self.sign))

    def relabel(self, perm: list[int]) -> LabeledGraph:
        """Graph with old vertex ``i`` placed at position ``perm[i]``."""
        n = self.n
        framing = [0] * n
        sign = [0] * n
        nbrs = [0] * n
        for i in range(n):
            framing[perm[i]] = self.framing[i]
            sign[perm[i]] = self.sign[i]
            for j in iter_bits(self.nbrs[i]):
                nbrs[perm[i]] |= 1 << perm[j]
        return LabeledGraph(tuple(framing), tuple(sign), tuple(nbrs))


def adjacency_matrix(g: LabeledGraph) -> BitMatrix:
    return BitMatrix(g.n, g.n, tuple(g.nbrs[i] | (g.framing[i] << i) for i in range(g.n)))


def writhe(g: LabeledGraph) -> int:
    """Sum over vertices of ``(-1)^cor(B_i) * sign(v_i)`` with ``B_i = A + E + E_ii``.

    Adding ``E + E_ii`` leaves the diagonal of ``A`` as is at ``i`` and
    flips it elsewhere.
    """
    base = adjacency_matrix(g)
    total = 0
    for i in range(g.n):
        rows = tuple(r ^ (1 << k) if k != i else r for k, r in enumerate(base.rows))
        c = corank(BitMatrix(g.n, g.n, rows))
        total += (-1) ** c * g.sign[i]
    return total


def is_graph_knot(g: LabeledGraph) -> bool:
    a = adjacency_matrix(g)
    return corank(a + BitMatrix.identity(g.n)) == 0


# ---------------------------------------------------------------- moves


class MoveKind(str, Enum):
    OMEGA1_ADD = "omega1-add"
    OMEGA1_REMOVE = "omega1-remove"
    OMEGA2_ADD = "omega2-add"
    OMEGA2_REMOVE = "omega2-remove"
    OMEGA3_FORWARD = "omega3-forward"
    OMEGA3_INVERSE = "omega3-inverse"
    OMEGA4 = "omega4"
    OMEGA4_PRIME = "omega4prime"


@dataclass(frozen=True)
class MoveSpec:
    """A move kind plus the 0-based vertices it acts on.

    ``sign`` is used by Omega1-add, ``neighbourhood``/``framed`` by
    Omega2-add and ``semantics`` ("matrix" or "verbal") by Omega3.
    """

    kind: MoveKind
    site: tuple[int, ...] = ()
    sign: int = 1
    neighbourhood: frozenset[int] = field(default_factory=frozenset)
    framed: bool = False
    semantics: str = "matrix"

    def __post_init__(self):
        if len(set(self.site)) != len(self.site):
            raise MoveNotApplicable(f"repeated vertex in site {self.site}")
        arity = {
            MoveKind.OMEGA1_ADD: 0, MoveKind.OMEGA1_REMOVE: 1, MoveKind.OMEGA2_ADD: 0,
            MoveKind.OMEGA2_REMOVE: 2, MoveKind.OMEGA3_FORWARD: 3, MoveKind.OMEGA3_INVERSE: 3,
            MoveKind.OMEGA4: 2, MoveKind.OMEGA4_PRIME: 1,
        }[self.kind]
        if len(self.site) != arity:
            raise MoveNotApplicable(f"{self.kind.value} takes {arity} site vertices, got {len(self.site)}")
        if self.semantics not in ("matrix", "verbal"):
            raise ValueError(f"unknown Omega3 semantics {self.semantics!r}")

    def format(self) -> str:
        """Text form with 1-based indices, e.g. ``omega4:1,2``."""
        idx = ",".join(str(i + 1) for i in self.site)
        k = self.kind
        if k is MoveKind.OMEGA1_ADD:
            return f"{k.value}:{'+' if self.sign > 0 else '-'}"
        if k is MoveKind.OMEGA2_ADD:
            nb = ",".join(str(i + 1) for i in sorted(self.neighbourhood))
            return f"{k.value}:{'framed' if self.framed else 'plain'}:{nb}"
        if k in (MoveKind.OMEGA3_FORWARD, MoveKind.OMEGA3_INVERSE) and self.semantics != "matrix":
            return f"{k.value}:{idx}:{self.semantics}"
        return f"{k.value}:{idx}"

    @classmethod
    def parse(cls, text: str) -> MoveSpec:
        parts = text.strip().split(":")
        try:
            kind = MoveKind(parts[0])
        except ValueError:
            raise ValueError(f"unknown move kind {parts[0]!r}") from None

        def indices(s: str) -> tuple[int, ...]:
            out = tuple(int(t) - 1 for t in s.split(",") if t.strip())
            if any(i < 0 for i in out):
                raise ValueError(f"vertex indices are 1-based: {s!r}")
            return out

        if kind is MoveKind.OMEGA1_ADD:
            if len(parts) != 2 or parts[1] not in ("+", "-", "+1", "-1", "1"):
                raise ValueError(f"expected {kind.value}:+ or {kind.value}:-")
            return cls(kind, sign=-1 if parts[1].startswith("-") else 1)
        if kind is MoveKind.OMEGA2_ADD:
            if len(parts) not in (2, 3) or parts[1] not in ("framed", "plain"):
                raise ValueError(f"expected {kind.value}:framed|plain:i,j,...")
            nb = indices(parts[2]) if len(parts) == 3 else ()
            return cls(kind, neighbourhood=frozenset(nb), framed=parts[1] == "framed")
        if len(parts) < 2:
            raise ValueError(f"{kind.value} needs a site")
        semantics = parts[2] if len(parts) > 2 else "matrix"
        return cls(kind, site=indices(parts[1]), semantics=semantics)


def _check_site(g: LabeledGraph, site: Iterable[int]) -> None:
    for v in site:
        if not (0 <= v < g.n):
            raise MoveNotApplicable(f"vertex {v} out of range (n = {g.n})")


def _remove_vertices(g: LabeledGraph, drop: Iterable[int]) -> LabeledGraph:
    drop = set(drop)
    keep = [i for i in range(g.n) if i not in drop]
    pos = {old: new for new, old in enumerate(keep)}
    nbrs = []
    for i in keep:
        m = 0
        for j in iter_bits(g.nbrs[i]):
            if j in pos:
                m |= 1 << pos[j]
        nbrs.append(m)
    return LabeledGraph(
        tuple(g.framing[i] for i in keep), tuple(g.sign[i] for i in keep), tuple(nbrs)
    )


def _toggle_edges(nbrs: list[int], pairs: Iterable[tuple[int, int]]) -> None:
    for i, j in pairs:
        nbrs[i] ^= 1 << j
        nbrs[j] ^= 1 << i


def omega1_add(g: LabeledGraph, sign: int) -> LabeledGraph:
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    return LabeledGraph(g.framing + (0,), g.sign + (sign,), g.nbrs + (0,))


def omega1_remove(g: LabeledGraph, v: int) -> LabeledGraph:
    _check_site(g, [v])
    if g.nbrs[v] or g.framing[v] != 0:
        raise MoveNotApplicable(f"vertex {v} is not an isolated framing-0 vertex")
    return _remove_vertices(g, [v])


def omega2_add(g: LabeledGraph, neighbourhood: Iterable[int] = (), framed: bool = False) -> LabeledGraph:
    """Append vertices ``n`` (sign -1) and ``n + 1`` (sign +1) joined to ``neighbourhood``.

    The framed variant has framings 1 and an edge between the new pair; the
    plain variant has framings 0 and no such edge.
    """
    nb = set(neighbourhood)
    _check_site(g, nb)
    n = g.n
    mask = 0
    for t in nb:
        mask |= 1 << t
    pair = (1 << n) | (1 << (n + 1))
    nbrs = [m | pair if (mask >> i) & 1 else m for i, m in enumerate(g.nbrs)]
    f = 1 if framed else 0
    nbrs.append(mask | ((1 << (n + 1)) if framed else 0))
    nbrs.append(mask | ((1 << n) if framed else 0))
    return LabeledGraph(g.framing + (f, f), g.sign + (-1, 1), tuple(nbrs))


def omega2_remove(g: LabeledGraph, v: int, w: int) -> LabeledGraph:
    _check_site(g, [v, w])
    if v == w:
        raise MoveNotApplicable("Omega2 needs two distinct vertices")
    pair = (1 << v) | (1 << w)
    if (g.nbrs[v] & ~pair) != (g.nbrs[w] & ~pair):
        raise MoveNotApplicable(f"vertices {v}, {w} have different neighbourhoods")
    if {g.sign[v], g.sign[w]} != {-1, 1}:
        raise MoveNotApplicable("Omega2 pair needs opposite signs")
    f = g.framing[v]
    if g.framing[w] != f or g.adjacent(v, w) != bool(f):
        raise MoveNotApplicable("Omega2 pair must be framed and adjacent, or unframed and non-adjacent")
    return _remove_vertices(g, [v, w])


def omega3(g: LabeledGraph, u: int, v: int, w: int, direction: str = "forward",
           semantics: str = "matrix") -> LabeledGraph:
    """Third move at ``u`` (the vertex adjacent only to ``v`` and ``w``).

    Matrix semantics replaces the row of ``u`` in the adjacency matrix by the
    sum of the rows of ``v`` and ``w``: the new neighbourhood is
    ``N(v) ^ N(w)`` without ``u``.  When ``v`` and ``w`` are not adjacent
    this disconnects ``u`` from both; when they are adjacent ``u`` stays
    joined to them.  Verbal semantics toggles the adjacency of ``u`` with
    each vertex of ``N(v) ^ N(w)``.  Either way ``v`` and ``w`` swap sign
    between -1 and +1.
    """
    _check_site(g, [u, v, w])
    if len({u, v, w}) != 3:
        raise MoveNotApplicable("Omega3 needs three distinct vertices")
    if semantics not in ("matrix", "verbal"):
        raise ValueError(f"unknown semantics {semantics!r}")
    forward = direction == "forward"
    if not forward and direction != "inverse":
        raise ValueError(f"unknown direction {direction!r}")
    vw_sign = -1 if forward else 1
    if any(g.framing[x] for x in (u, v, w)) or g.sign[u] != -1 or g.sign[v] != vw_sign or g.sign[w] != vw_sign:
        raise MoveNotApplicable("Omega3 labels do not match")
    pair = (1 << v) | (1 << w)
    diff = (g.nbrs[v] ^ g.nbrs[w]) & ~(1 << u)

    if semantics == "matrix":
        before, after = (pair, diff) if forward else (diff, pair)
        if g.nbrs[u] != before:
            raise MoveNotApplicable("neighbourhood of u does not match the Omega3 pattern")
        new_u = after
    else:
        if forward:
            if g.nbrs[u] != pair:
                raise MoveNotApplicable("u must be adjacent exactly to v and w")
        elif g.nbrs[u] ^ diff != pair:
            raise MoveNotApplicable("neighbourhood of u does not match the Omega3 pattern")
        new_u = g.nbrs[u] ^ diff

    nbrs = list(g.nbrs)
    changed = nbrs[u] ^ new_u
    for t in iter_bits(changed):
        nbrs[t] ^= 1 << u
    nbrs[u] = new_u
    sign = list(g.sign)
    sign[v] = sign[w] = -vw_sign
    return LabeledGraph(g.framing, tuple(sign), tuple(nbrs))


def omega4(g: LabeledGraph, u: int, v: int) -> LabeledGraph:
    """Pivot on the edge ``u--v`` between two framing-0 vertices.

    A pair ``{i, j}`` away from ``u, v`` toggles iff ``a_iu a_jv + a_iv a_ju = 1``.
    Labels ``(0, a), (0, b)`` become ``(0, -b), (0, -a)``.
    """
    _check_site(g, [u, v])
    if u == v or not g.adjacent(u, v):
        raise MoveNotApplicable(f"vertices {u}, {v} are not adjacent")
    if g.framing[u] or g.framing[v]:
        raise MoveNotApplicable("Omega4 needs framing 0 at both vertices")
    off = ~((1 << u) | (1 << v))
    nu = g.nbrs[u] & off
    nv = g.nbrs[v] & off
    nbrs = list(g.nbrs)
    # ordered pairs, so {i, j} flips once per product term; i == j is a framing entry and gets 2*a*b = 0
    for i in iter_bits(nu):
        for j in iter_bits(nv):
            if i != j:
                nbrs[i] ^= 1 << j
                nbrs[j] ^= 1 << i
    sign = list(g.sign)
    sign[u], sign[v] = -g.sign[v], -g.sign[u]
    return LabeledGraph(g.framing, tuple(sign), tuple(nbrs))


def omega4prime(g: LabeledGraph, v: int) -> LabeledGraph:
    """Local complementation at a framing-1 vertex ``v``; flips the sign of ``v``."""
    _check_site(g, [v])
    if g.framing[v] != 1:
        raise MoveNotApplicable(f"vertex {v} has framing 0")
    nb = list(iter_bits(g.nbrs[v]))
    nbrs = list(g.nbrs)
    _toggle_edges(nbrs, combinations(nb, 2))
    framing = list(g.framing)
    for t in nb:
        framing[t] ^= 1
    sign = list(g.sign)
    sign[v] = -sign[v]
    return LabeledGraph(tuple(framing), tuple(sign), tuple(nbrs))


def apply_move(g: LabeledGraph, m: MoveSpec) -> LabeledGraph:
    k = m.kind
    if k is MoveKind.OMEGA1_ADD:
        return omega1_add(g, m.sign)
    if k is MoveKind.OMEGA1_REMOVE:
        return omega1_remove(g, *m.site)
    if k is MoveKind.OMEGA2_ADD:
        return omega2_add(g, m.neighbourhood, m.framed)
    if k is MoveKind.OMEGA2_REMOVE:
        return omega2_remove(g, *m.site)
    if k is MoveKind.OMEGA3_FORWARD:
        return omega3(g, *m.site, direction="forward", semantics=m.semantics)
    if k is MoveKind.OMEGA3_INVERSE:
        return omega3(g, *m.site, direction="inverse", semantics=m.semantics)
    if k is MoveKind.OMEGA4:
        return omega4(g, *m.site)
    if k is MoveKind.OMEGA4_PRIME:
        return omega4prime(g, *m.site)
    raise ValueError(k)


def inverse_move(g: LabeledGraph, m: MoveSpec) -> MoveSpec:
    """The move that undoes ``m`` when applied to ``apply_move(g, m)``."""
    k = m.kind
    if k is MoveKind.OMEGA1_ADD:
        return MoveSpec(MoveKind.OMEGA1_REMOVE, (g.n,))
    if k is MoveKind.OMEGA1_REMOVE:
        (v,) = m.site
        if v != g.n - 1:
            raise ValueError("only removal of the last vertex has an index-preserving inverse")
        return MoveSpec(MoveKind.OMEGA1_ADD, sign=g.sign[v])
    if k is MoveKind.OMEGA2_ADD:
        return MoveSpec(MoveKind.OMEGA2_REMOVE, (g.n, g.n + 1))
    if k is MoveKind.OMEGA2_REMOVE:
        v, w = sorted(m.site)
        if (v, w) != (g.n - 2, g.n - 1) or g.sign[v] != -1:
            raise ValueError("only removal of the last (-, +) pair has an index-preserving inverse")
        pair = (1 << v) | (1 << w)
        nb = frozenset(iter_bits(g.nbrs[v] & ~pair))
        return MoveSpec(MoveKind.OMEGA2_ADD, neighbourhood=nb, framed=bool(g.framing[v]))
    if k is MoveKind.OMEGA3_FORWARD:
        return MoveSpec(MoveKind.OMEGA3_INVERSE, m.site, semantics=m.semantics)
    if k is MoveKind.OMEGA3_INVERSE:
        return MoveSpec(MoveKind.OMEGA3_FORWARD, m.site, semantics=m.semantics)
    return m


def _applicable(g: LabeledGraph, m: MoveSpec) -> bool:
    try:
        apply_move(g, m)
    except MoveNotApplicable:
        return False
    return True


def enumerate_moves(g: LabeledGraph) -> list[MoveSpec]:
    """All applicable non-add moves plus a bounded set of add moves.

    Omega2-add is listed only with the empty neighbourhood and with each
    single-vertex neighbourhood, in both variants.
    """
    n = g.n
    out: list[MoveSpec] = [
        MoveSpec(MoveKind.OMEGA1_ADD, sign=1),
        MoveSpec(MoveKind.OMEGA1_ADD, sign=-1),
    ]
    for nb in [frozenset()] + [frozenset([t]) for t in range(n)]:
        for framed in (False, True):
            out.append(MoveSpec(MoveKind.OMEGA2_ADD, neighbourhood=nb, framed=framed))
    candidates: list[MoveSpec] = []
    candidates += [MoveSpec(MoveKind.OMEGA1_REMOVE, (v,)) for v in range(n)]
    candidates += [MoveSpec(MoveKind.OMEGA2_REMOVE, (v, w)) for v, w in combinations(range(n), 2)]
    for u in range(n):
        for v, w in combinations([x for x in range(n) if x != u], 2):
            candidates.append(MoveSpec(MoveKind.OMEGA3_FORWARD, (u, v, w)))
            candidates.append(MoveSpec(MoveKind.OMEGA3_INVERSE, (u, v, w)))
    candidates += [MoveSpec(MoveKind.OMEGA4, (u, v)) for u, v in g.edges()]
    candidates += [MoveSpec(MoveKind.OMEGA4_PRIME, (v,)) for v in range(n)]
    out += [m for m in candidates if _applicable(g, m)]
    return out
