"""Exact phase-one simplex over the rationals (Bland's rule)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Return some ``x >= 0`` with ``A x = b``, or None if none exists.

    Rows are flipped so that ``b >= 0``, one artificial variable per row is
    added and the artificial sum is minimised. Bland's rule guarantees
    termination on degenerate problems.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    T = []
    for i in range(rows):
        row = [Fraction(a) for a in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        art = [Fraction(0)] * rows
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    width = cols + rows
    basis = list(range(cols, cols + rows))
    # reduced costs of the phase-one objective (minimise sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for i in range(rows):
        for j in range(cols):
            cost[j] -= T[i][j]
        cost[width] -= T[i][width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # cannot happen: phase one is bounded below by 0
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(T, cost, leave, enter)
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * cols
    for i, j in enumerate(basis):
        if j < cols:
            x[j] = T[i][width]
    return x


def _pivot(T, cost, r, c):
    piv = T[r][c]
    row = [a / piv for a in T[r]]
    T[r] = row
    nz = [j for j, a in enumerate(row) if a != 0]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f != 0:
                for j in nz:
                    other[j] -= f * row[j]
    f = cost[c]
    if f != 0:
        for j in nz:
            cost[j] -= f * row[j]
