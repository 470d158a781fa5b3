"""Integer Laurent polynomials, the Kauffman bracket and the Jones polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .gf2 import rank_of_rows
from .graph import LabeledGraph, writhe
from .homology import BettiTable, khovanov_homology


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class LaurentPoly:
    """Exact Laurent polynomial with integer coefficients in one variable."""

    var: str
    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient), no zeros

    @classmethod
    def from_dict(cls, var: str, d: Mapping[int, int]) -> LaurentPoly:
        return cls(var, tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def monomial(cls, var: str, exp: int = 0, coeff: int = 1) -> LaurentPoly:
        return cls.from_dict(var, {exp: coeff})

    @classmethod
    def zero(cls, var: str) -> LaurentPoly:
        return cls(var, ())

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def _check(self, other: LaurentPoly) -> None:
        if self.var != other.var and self.coeffs and other.coeffs:
            raise ValueError(f"mixing variables {self.var} and {other.var}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(self.var, d)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.var, tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.from_dict(self.var, {e: c * other for e, c in self.coeffs})
        self._check(other)
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(self.var, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self.coeffs) != 1 or abs(self.coeffs[0][1]) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            (e, c), = self.coeffs
            return LaurentPoly.monomial(self.var, e * k, c ** (-k))
        out = LaurentPoly.monomial(self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(self.var, tuple((e + k, c) for e, c in self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs, reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = self.var if e == 1 else f"{self.var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.coeffs}


def _corank_of_state(g: LabeledGraph, s: int) -> int:
    rows = [(g.nbrs[i] | (g.framing[i] << i)) & s for i in range(g.n) if (s >> i) & 1]
    return len(rows) - rank_of_rows(rows)


def kauffman_bracket(g: LabeledGraph) -> LaurentPoly:
    """State sum of ``a^(alpha - beta) (-a^2 - a^-2)^cor A(s)`` over all vertex subsets."""
    n = g.n
    neg = sum(1 << i for i in range(n) if g.sign[i] < 0)
    full = (1 << n) - 1
    by_corank: dict[tuple[int, int], int] = {}
    for s in range(1 << n):
        alpha = bin(s & neg).count("1") + bin(~s & full & ~neg).count("1")
        key = (2 * alpha - n, _corank_of_state(g, s))
        by_corank[key] = by_corank.get(key, 0) + 1
    loop = LaurentPoly.from_dict("a", {2: -1, -2: -1})
    total = LaurentPoly.zero("a")
    for (e, k), count in sorted(by_corank.items()):
        total = total + (loop ** k).shift(e) * count
    return total


def jones(g: LabeledGraph) -> LaurentPoly:
    """``(-a)^(-3w) <G>``; an invariant only for graph-knots."""
    w = writhe(g)
    return kauffman_bracket(g).shift(-3 * w) * (-1 if w % 2 else 1)


def substitute_a_eq_i_sqrt_t(p: LaurentPoly, n_shift: int) -> LaurentPoly:
    """``a^n_shift * p(a)`` at ``a = i t^(1/2)``, i.e. with ``a^2 = -t``."""
    d: dict[int, int] = {}
    for e, c in p.coeffs:
        k = e + n_shift
        if k % 2:
            raise ParityError(f"exponent {e} + {n_shift} is odd")
        half = k // 2
        d[half] = d.get(half, 0) + (c if half % 2 == 0 else -c)
    return LaurentPoly.from_dict("t", d)


def graded_euler(t: BettiTable) -> LaurentPoly:
    d: dict[int, int] = {}
    for (m, q), dim in t.entries.items():
        d[q] = d.get(q, 0) + (-dim if m % 2 else dim)
    return LaurentPoly.from_dict("t", d)


@dataclass(frozen=True)
class EulerReport:
    euler: LaurentPoly
    plus_n: LaurentPoly
    minus_n: LaurentPoly

    @property
    def holds_plus_n(self) -> bool:
        return self.euler == self.plus_n

    @property
    def holds_minus_n(self) -> bool:
        return self.euler == self.minus_n


def euler_identity_check(g: LabeledGraph, table: BettiTable | None = None) -> EulerReport:
    """Compare the graded Euler characteristic with the bracket at ``a = i t^(1/2)``.

    Both ``a^n <G>`` and ``a^-n <G>`` are evaluated; only the first is
    expected to agree.
    """
    if table is None:
        table = khovanov_homology(g)
    bracket = kauffman_bracket(g)
    return EulerReport(
        graded_euler(table),
        substitute_a_eq_i_sqrt_t(bracket, g.n),
        substitute_a_eq_i_sqrt_t(bracket, -g.n),
    )
