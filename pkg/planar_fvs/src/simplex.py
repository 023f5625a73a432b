"""Exact primal simplex over ``Fraction`` for ``max c·x  s.t.  A x ≤ b, x ≥ 0, b ≥ 0``.

The slack basis is feasible because ``b ≥ 0``, so no first phase is needed.
Pivoting follows Bland's rule (smallest entering variable, then smallest
leaving variable among ratio ties), which cannot cycle.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    primal: tuple[Fraction, ...]  # one per column
    dual: tuple[Fraction, ...]  # one per row
    pivots: int


class LpUnbounded(ArithmeticError):
    """The objective grows without limit."""


class SimplexTableau:
    """Dense tableau. ``c`` holds reduced costs; a positive entry may enter."""

    def __init__(self, a: Sequence[Sequence[Fraction | int]], b: Sequence[Fraction | int],
                 c: Sequence[Fraction | int]) -> None:
        self.m = len(b)
        self.n = len(c)
        if any(len(row) != self.n for row in a) or len(a) != self.m:
            raise ValueError("constraint matrix does not match b and c")
        if any(v < 0 for v in b):
            raise ValueError("right-hand side must be non-negative")
        self.a = [[Fraction(v) for v in row] for row in a]
        self.b = [Fraction(v) for v in b]
        self.c = [Fraction(v) for v in c]
        self.value = Fraction(0)
        # Columns 0..n-1 are the structural variables, n..n+m-1 the slacks.
        self.nb_vars = list(range(self.n))
        self.b_vars = list(range(self.n, self.n + self.m))
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.a[i][j]
        delta = self.c[j] / piv
        self.value += delta * self.b[i]
        for col in range(self.n):
            self.c[col] -= delta * self.a[i][col]
        self.c[j] = -delta
        row = self.a[i]
        for col in range(self.n):
            row[col] = 1 / piv if col == j else row[col] / piv
        self.b[i] /= piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.a[k][j]
            if not f:
                continue
            other = self.a[k]
            for col in range(self.n):
                other[col] = -f / piv if col == j else other[col] - f * row[col]
            self.b[k] -= f * self.b[i]
        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]
        self.pivots += 1

    def step(self) -> bool:
        """One Bland pivot; False once optimal."""
        entering = [(self.nb_vars[j], j) for j in range(self.n) if self.c[j] > 0]
        if not entering:
            return False
        _, j = min(entering)
        ratios = [(self.b[i] / self.a[i][j], self.b_vars[i], i)
                  for i in range(self.m) if self.a[i][j] > 0]
        if not ratios:
            raise LpUnbounded(f"column {self.nb_vars[j]} is unbounded")
        _, _, i = min(ratios)
        _LOGGER.debug("Pivot %d -> %d", self.b_vars[i], self.nb_vars[j])
        self.pivot(i, j)
        return True

    def solve(self) -> LpSolution:
        while self.step():
            pass
        primal = [Fraction(0)] * self.n
        for i, var in enumerate(self.b_vars):
            if var < self.n:
                primal[var] = self.b[i]
        dual = [Fraction(0)] * self.m
        for j, var in enumerate(self.nb_vars):
            if var >= self.n:
                dual[var - self.n] = -self.c[j]
        return LpSolution(self.value, tuple(primal), tuple(dual), self.pivots)


def maximize(
    a: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
    c: Sequence[Fraction | int],
) -> LpSolution:
    return SimplexTableau(a, b, c).solve()
