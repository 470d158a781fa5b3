"""Random graphs, a brute-force homology oracle and move-invariance trials."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product

from .glformat import serialize
from .graph import (
    LabeledGraph,
    MoveKind,
    MoveNotApplicable,
    MoveSpec,
    apply_move,
    enumerate_moves,
    is_graph_knot,
    omega2_add,
    omega3,
    writhe,
)
from .homology import BettiTable, khovanov_homology, normalized_table
from .polynomials import jones

ORACLE_MAX_VERTICES = 8

# (dM0, dQ0) as printed in the grading-shift table, for comparison in reports
PRINTED_SHIFTS = {"omega1-add+": (0, -1), "omega1-add-": (1, 1), "omega2-add": (1, 0)}
# measured constants; removals are the negatives
DERIVED_SHIFTS = {"omega1-add+": (0, -1), "omega1-add-": (1, 2), "omega2-add": (1, 1)}


def random_graph(n: int, seed=None, p: float = 0.5) -> LabeledGraph:
    """Uniform labels and independent edges with probability ``p``.

    ``seed`` may be an int or a :class:`random.Random`.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    labels = [(rng.randint(0, 1), rng.choice((-1, 1))) for _ in range(n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return LabeledGraph.from_edges(labels, edges)


def random_graph_knot(n: int, rng: random.Random, max_tries: int = 10_000) -> LabeledGraph:
    for _ in range(max_tries):
        g = random_graph(n, rng)
        if is_graph_knot(g):
            return g
    raise RuntimeError(f"no graph-knot on {n} vertices in {max_tries} samples")


def all_graphs(n: int):
    """Every labeled simple graph on ``n`` vertices (``4^n 2^(n(n-1)/2)`` of them)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for labels in product(product((0, 1), (-1, 1)), repeat=n):
        for chosen in product((0, 1), repeat=len(pairs)):
            yield LabeledGraph.from_edges(labels, [e for e, c in zip(pairs, chosen) if c])


# ------------------------------------------------------------------ oracle


def _xor(a: tuple, b: tuple) -> tuple:
    return tuple(x ^ y for x, y in zip(a, b))


def _span(vectors, n):
    out = {(0,) * n}
    for v in vectors:
        out |= {_xor(v, w) for w in out}
    return out


def _rank_textbook(rows: list[list[int]]) -> int:
    m = [row[:] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(len(m)):
            if k != r and m[k][c]:
                m[k] = [(x + y) % 2 for x, y in zip(m[k], m[r])]
        r += 1
    return r


def dense_oracle_homology(g: LabeledGraph, max_vertices: int = ORACLE_MAX_VERTICES) -> BettiTable:
    """Khovanov homology by explicit enumeration of every quotient space.

    Shares nothing with the main pipeline except the graph type: quotients
    are formed from explicit cosets, the basis is chosen greedily, edge maps
    apply the exterior product formula literally, and ranks use list-based
    elimination.
    """
    n = g.n
    if n > max_vertices:
        raise ValueError(f"oracle limited to {max_vertices} vertices, got {n}")
    a = [[g.framing[i] if i == j else int(g.adjacent(i, j)) for j in range(n)] for i in range(n)]
    unit = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    ambient = list(product((0, 1), repeat=n))

    spaces = {}
    for s in product((0, 1), repeat=n):
        rels = []
        for i in range(n):
            row = [a[i][j] if s[j] else 0 for j in range(n)]
            if not s[i]:
                row[i] ^= 1
            rels.append(tuple(row))
        zero = _span(rels, n)
        reps = []
        covered = set(zero)
        for v in ambient:
            if v not in covered:
                reps.append(v)
                covered |= {_xor(v, w) for w in covered}
        table = {}
        for coeffs in product((0, 1), repeat=len(reps)):
            base = (0,) * n
            for c, r in zip(coeffs, reps):
                if c:
                    base = _xor(base, r)
            for z in zero:
                table[_xor(base, z)] = coeffs
        alpha = [0 if (s[i] and g.sign[i] == 1) or (not s[i] and g.sign[i] == -1) else 1 for i in range(n)]
        spaces[s] = (zero, reps, table, sum(alpha))

    elements = []
    for s, (zero, reps, table, m0) in spaces.items():
        d = len(reps)
        for k in range(d + 1):
            for mono in _subsets(d, k):
                elements.append((m0, d - 2 * k + m0, s, mono))
    index = {(s, mono): pos for pos, (_, _, s, mono) in enumerate(elements)}

    images: dict[int, dict[int, int]] = {}
    for s, (zero, reps, table, m0) in spaces.items():
        for i in range(n):
            if alpha_is_zero(g, s, i):
                t = tuple(x ^ (k == i) for k, x in enumerate(s))
                ttable = spaces[t][2]
                factors0 = [unit[i]] if unit[i] in zero else []
                for mono in _all_subsets(len(reps)):
                    factors = factors0 + [reps[b] for b in mono]
                    coords = [ttable[f] for f in factors]
                    out: dict[tuple, int] = {}
                    for choice in product(*[[k for k, c in enumerate(cs) if c] for cs in coords]):
                        if len(set(choice)) == len(choice):
                            key = tuple(sorted(choice))
                            out[key] = out.get(key, 0) ^ 1
                    src = index[(s, mono)]
                    row = images.setdefault(src, {})
                    for key, c in out.items():
                        if c:
                            dst = index[(t, key)]
                            row[dst] = row.get(dst, 0) ^ 1

    buckets: dict[tuple[int, int], list[int]] = {}
    for pos, (m, q, _, _) in enumerate(elements):
        buckets.setdefault((m, q), []).append(pos)

    def rank_between(src_key, dst_key):
        src = buckets.get(src_key, [])
        dst = buckets.get(dst_key, [])
        if not src or not dst:
            return 0
        rows = [[images.get(p, {}).get(c, 0) for c in dst] for p in src]
        return _rank_textbook(rows)

    entries = {}
    for (m, q), members in buckets.items():
        d = len(members) - rank_between((m, q), (m + 1, q)) - rank_between((m - 1, q), (m, q))
        if d:
            entries[(m, q)] = d
    return BettiTable(entries, n, writhe(g), is_graph_knot(g))


def alpha_is_zero(g: LabeledGraph, s: tuple, i: int) -> bool:
    """The hypercube coordinate of vertex ``i`` at ``s`` is 0, i.e. ``s`` is the tail."""
    return bool(s[i]) == (g.sign[i] == 1)


def _subsets(d: int, k: int):
    return [tuple(c) for c in combinations(range(d), k)]


def _all_subsets(d: int):
    return [c for k in range(d + 1) for c in _subsets(d, k)]


# ------------------------------------------------------------ move sampling


def shift_label(g: LabeledGraph, m: MoveSpec) -> str:
    """Move kind refined by the sign of the vertex for Omega1."""
    if m.kind is MoveKind.OMEGA1_ADD:
        return f"omega1-add{'+' if m.sign > 0 else '-'}"
    if m.kind is MoveKind.OMEGA1_REMOVE:
        return f"omega1-remove{'+' if g.sign[m.site[0]] > 0 else '-'}"
    return m.kind.value


def expected_shift(label: str) -> tuple[int, int]:
    if label in DERIVED_SHIFTS:
        return DERIVED_SHIFTS[label]
    if "remove" in label:
        dm, dq = DERIVED_SHIFTS[label.replace("remove", "add")]
        return -dm, -dq
    return 0, 0


def expected_writhe_change(g: LabeledGraph, m: MoveSpec) -> int:
    """Writhe change along a move on a graph-knot."""
    if m.kind is MoveKind.OMEGA1_ADD:
        return -m.sign
    if m.kind is MoveKind.OMEGA1_REMOVE:
        return g.sign[m.site[0]]
    return 0


def table_shift(before: BettiTable, after: BettiTable) -> tuple[int, int] | None:
    """The ``(dm, dq)`` with ``after == before`` shifted, if there is one."""
    if not before.entries or len(before.entries) != len(after.entries):
        return (0, 0) if before.entries == after.entries else None
    b0 = min(before.entries)
    a0 = min(after.entries)
    dm, dq = a0[0] - b0[0], a0[1] - b0[1]
    return (dm, dq) if before.shifted(dm, dq).entries == after.entries else None


def random_move(g: LabeledGraph, rng: random.Random, max_vertices: int = 9) -> MoveSpec:
    """Pick a move kind uniformly among the applicable ones, then a site."""
    by_kind: dict[MoveKind, list[MoveSpec]] = {}
    for m in enumerate_moves(g):
        if m.kind in (MoveKind.OMEGA1_ADD, MoveKind.OMEGA2_ADD):
            continue
        by_kind.setdefault(m.kind, []).append(m)
    if g.n + 1 <= max_vertices:
        by_kind[MoveKind.OMEGA1_ADD] = [MoveSpec(MoveKind.OMEGA1_ADD, sign=rng.choice((-1, 1)))]
    if g.n + 2 <= max_vertices:
        nb = frozenset(v for v in range(g.n) if rng.random() < 0.5)
        by_kind[MoveKind.OMEGA2_ADD] = [MoveSpec(MoveKind.OMEGA2_ADD, neighbourhood=nb, framed=rng.random() < 0.5)]
    kinds = sorted(by_kind, key=lambda k: k.value)
    return rng.choice(by_kind[rng.choice(kinds)])


def plant_site(g: LabeledGraph, kind: MoveKind, rng: random.Random) -> tuple[LabeledGraph, MoveSpec]:
    """Edit ``g`` minimally so that a move of ``kind`` applies, and return that move."""
    n = g.n
    framing, sign, nbrs = list(g.framing), list(g.sign), list(g.nbrs)

    def rebuild():
        return LabeledGraph(tuple(framing), tuple(sign), tuple(nbrs))

    def set_edge(i, j, on):
        if bool((nbrs[i] >> j) & 1) != on:
            nbrs[i] ^= 1 << j
            nbrs[j] ^= 1 << i

    need = {MoveKind.OMEGA1_REMOVE: 1, MoveKind.OMEGA3_FORWARD: 3, MoveKind.OMEGA3_INVERSE: 3,
            MoveKind.OMEGA4: 2, MoveKind.OMEGA4_PRIME: 1}.get(kind, 0)
    if n < need:
        raise ValueError(f"{kind.value} needs at least {need} vertices")

    if kind is MoveKind.OMEGA1_ADD:
        return g, MoveSpec(kind, sign=rng.choice((-1, 1)))
    if kind is MoveKind.OMEGA2_ADD:
        nb = frozenset(v for v in range(n) if rng.random() < 0.5)
        return g, MoveSpec(kind, neighbourhood=nb, framed=rng.random() < 0.5)
    if kind is MoveKind.OMEGA1_REMOVE:
        v = rng.randrange(n)
        framing[v] = 0
        for t in range(n):
            if t != v:
                set_edge(v, t, False)
        return rebuild(), MoveSpec(kind, (v,))
    if kind is MoveKind.OMEGA2_REMOVE:
        nb = frozenset(v for v in range(n) if rng.random() < 0.5)
        h = omega2_add(g, nb, framed=rng.random() < 0.5)
        perm = list(range(h.n))
        rng.shuffle(perm)
        h = h.relabel(perm)
        site = tuple(sorted((perm[n], perm[n + 1])))
        return h, MoveSpec(kind, site)
    if kind in (MoveKind.OMEGA3_FORWARD, MoveKind.OMEGA3_INVERSE):
        u, v, w = rng.sample(range(n), 3)
        for x in (u, v, w):
            framing[x], sign[x] = 0, -1
        for t in range(n):
            if t != u:
                set_edge(u, t, t in (v, w))
        h = rebuild()
        if kind is MoveKind.OMEGA3_INVERSE:
            h = omega3(h, u, v, w, "forward")
        return h, MoveSpec(kind, (u, v, w))
    if kind is MoveKind.OMEGA4:
        u, v = rng.sample(range(n), 2)
        framing[u] = framing[v] = 0
        set_edge(u, v, True)
        return rebuild(), MoveSpec(kind, (u, v))
    if kind is MoveKind.OMEGA4_PRIME:
        v = rng.randrange(n)
        framing[v] = 1
        return rebuild(), MoveSpec(kind, (v,))
    raise ValueError(kind)


# ------------------------------------------------------------------ trials


@dataclass
class TrialReport:
    seed: int
    initial: str
    moves: list[str] = field(default_factory=list)
    tables: list[list[dict[str, int]]] = field(default_factory=list)
    shifts: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    omega3_verbal: dict[str, int] = field(default_factory=lambda: {"preserved": 0, "changed": 0})
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def shift_summary(self) -> dict[str, dict]:
        out = {}
        for label, seen in sorted(self.shifts.items()):
            distinct = sorted(set(seen))
            entry = {"measured": [list(s) for s in distinct], "expected": list(expected_shift(label)), "count": len(seen)}
            if label in PRINTED_SHIFTS:
                entry["printed"] = list(PRINTED_SHIFTS[label])
            out[label] = entry
        return out

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "initial": self.initial,
            "moves": self.moves,
            "tables": self.tables,
            "shifts": self.shift_summary(),
            "omega3_verbal": self.omega3_verbal,
            "failures": self.failures,
            "passed": self.passed,
        }


def check_move(g: LabeledGraph, m: MoveSpec, before: BettiTable | None = None,
               report: TrialReport | None = None) -> tuple[LabeledGraph, BettiTable, list[str]]:
    """Apply ``m`` and check every invariance property; return new graph, table and failures."""
    if before is None:
        before = khovanov_homology(g)
    h = apply_move(g, m)
    after = khovanov_homology(h)
    label = shift_label(g, m)
    where = f"{m.format()} on\n{serialize(g)}"
    failures = []
    if after.total != before.total:
        failures.append(f"total dimension {before.total} -> {after.total}: {where}")
    shift = table_shift(before, after)
    if report is not None:
        report.shifts.setdefault(label, []).append(shift)
    if shift != expected_shift(label):
        failures.append(f"table shift {shift}, expected {expected_shift(label)}: {where}")
    knot = is_graph_knot(g)
    if is_graph_knot(h) != knot:
        failures.append(f"graph-knot flag changed: {where}")
    if knot:
        dw = writhe(h) - writhe(g)
        if dw != expected_writhe_change(g, m):
            failures.append(f"writhe changed by {dw}: {where}")
        if normalized_table(g, before).entries != normalized_table(h, after).entries:
            failures.append(f"normalized table changed: {where}")
        if jones(g) != jones(h):
            failures.append(f"Jones polynomial changed: {where}")
    if report is not None and m.kind in (MoveKind.OMEGA3_FORWARD, MoveKind.OMEGA3_INVERSE):
        try:
            verbal = apply_move(g, MoveSpec(m.kind, m.site, semantics="verbal"))
        except MoveNotApplicable:
            verbal = None
        if verbal is not None:
            same = khovanov_homology(verbal).entries == before.entries
            report.omega3_verbal["preserved" if same else "changed"] += 1
    return h, after, failures


def check_invariance(g: LabeledGraph, trials: int, seed: int, max_vertices: int = 9) -> TrialReport:
    """Random walk of ``trials`` moves from ``g``, checking invariance after each."""
    rng = random.Random(seed)
    report = TrialReport(seed, serialize(g))
    table = khovanov_homology(g)
    report.tables.append(table.rows())
    for _ in range(trials):
        m = random_move(g, rng, max_vertices)
        report.moves.append(m.format())
        g, table, failures = check_move(g, m, table, report)
        report.tables.append(table.rows())
        report.failures += failures
    return report
