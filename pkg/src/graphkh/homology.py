"""Bigraded Betti numbers of the Khovanov complex over GF(2)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import ChainComplex, build_complex, verify_d_squared
from .gf2 import rank_of_rows
from .graph import LabeledGraph, is_graph_knot, writhe

CONVENTIONS = ("calibrated", "paper")


class IntegrityError(RuntimeError):
    """The differential does not square to zero."""


@dataclass(frozen=True)
class BettiTable:
    entries: dict[tuple[int, int], int]
    n: int = 0
    writhe: int = 0
    graph_knot: bool = True
    grading: str = "raw"

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def shifted(self, dm: int, dq: int, grading: str | None = None) -> BettiTable:
        return BettiTable(
            {(m + dm, q + dq): d for (m, q), d in self.entries.items()},
            self.n, self.writhe, self.graph_knot, grading or self.grading,
        )

    def rows(self) -> list[dict[str, int]]:
        return [{"m": m, "q": q, "dim": d} for (m, q), d in sorted(self.entries.items())]

    def format(self) -> str:
        if not self.entries:
            return "(zero)"
        ms = sorted({m for m, _ in self.entries})
        qs = sorted({q for _, q in self.entries}, reverse=True)
        width = max(3, max(len(str(d)) for d in self.entries.values()))
        head = "q\\m".rjust(5) + "".join(str(m).rjust(width + 1) for m in ms)
        lines = [head]
        for q in qs:
            cells = "".join(
                (str(self.entries[(m, q)]) if (m, q) in self.entries else ".").rjust(width + 1) for m in ms
            )
            lines.append(str(q).rjust(5) + cells)
        return "\n".join(lines)


def betti_table(c: ChainComplex, check: bool = True) -> BettiTable:
    """``dim ker d(m,q) - rank d(m-1,q)`` for every bidegree."""
    if check and not verify_d_squared(c):
        raise IntegrityError("differential does not square to zero")
    ranks = {key: rank_of_rows(d.rows) for key, d in c.differentials.items()}
    entries = {}
    for (m, q), basis in c.bases.items():
        d = len(basis) - ranks.get((m, q), 0) - ranks.get((m - 1, q), 0)
        if d:
            entries[(m, q)] = d
    g = c.graph
    return BettiTable(entries, g.n, writhe(g), is_graph_knot(g))


def khovanov_homology(g: LabeledGraph, **kwargs) -> BettiTable:
    return betti_table(build_complex(g, **kwargs))


def grading_shift(n: int, w: int, convention: str = "calibrated") -> tuple[int, int]:
    """``(dM, dQ)`` taking ``(M0, Q0)`` to the normalized gradings.

    ``paper`` uses ``Q0 + (n + 3w)/2``; ``calibrated`` flips the sign of
    the Q shift, which is the version that is constant along moves.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if (n + w) % 2:
        raise IntegrityError(f"n + w = {n} + {w} is odd")
    dq = (n + 3 * w) // 2
    return -((n + w) // 2), (dq if convention == "paper" else -dq)


def normalized_table(g: LabeledGraph, t: BettiTable, convention: str = "calibrated") -> BettiTable:
    w = writhe(g)
    dm, dq = grading_shift(g.n, w, convention)
    return t.shifted(dm, dq, grading=convention)


def poincare_polynomial(t: BettiTable) -> dict[tuple[int, int], int]:
    """Coefficients of ``s^m t^q``."""
    return dict(sorted(t.entries.items()))


def ungraded_homology_dimension(c: ChainComplex) -> int:
    """``dim ker D - rank D`` for the total differential ``D``, ignoring the bigrading."""
    offset = {}
    total = 0
    for key in sorted(c.bases):
        offset[key] = total
        total += len(c.bases[key])
    rows = []
    for key in sorted(c.bases):
        d = c.differentials.get(key)
        if d is None:
            rows += [0] * len(c.bases[key])
            continue
        shift = offset[(key[0] + 1, key[1])]
        rows += [r << shift for r in d.rows]
    return total - 2 * rank_of_rows(rows)
