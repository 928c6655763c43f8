"""Exact linear systems by fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence


class LinearSolution(NamedTuple):
    status: str  # "unique" | "underdetermined" | "infeasible"
    solution: Optional[tuple[Fraction, ...]]
    rank: int
    nullity: int


def _integer_rows(rows: Sequence[Sequence], rhs: Sequence) -> list[list[int]]:
    out = []
    for row, b in zip(rows, rhs):
        entries = [Fraction(x) for x in row] + [Fraction(b)]
        den = math.lcm(*(x.denominator for x in entries))
        out.append([int(x * den) for x in entries])
    return out


def solve_exact(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> LinearSolution:
    """Solve ``rows @ x == rhs`` exactly.

    Rows are scaled to integers and reduced to echelon form with Bareiss'
    one-step fraction-free elimination, so every intermediate entry stays
    an integer.  The rank of the coefficient block decides the status; a
    unique solution is recovered by back substitution over fractions.
    """
    if len(rows) != len(rhs):
        raise ValueError("row and right-hand-side counts differ")
    a = _integer_rows(rows, rhs)
    m = len(a)
    r = 0
    prev = 1
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c, ncols + 1):
                q, rem = divmod(p * row_i[j] - f * row_r[j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
        prev = p
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][ncols] != 0:
            return LinearSolution("infeasible", None, r, ncols - r)
    if r < ncols:
        return LinearSolution("underdetermined", None, r, ncols - r)
    x = [Fraction(0)] * ncols
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        acc = Fraction(a[i][ncols])
        for j in range(c + 1, ncols):
            if a[i][j]:
                acc -= a[i][j] * x[j]
        x[c] = acc / a[i][c]
    return LinearSolution("unique", tuple(x), r, 0)
