"""Exact phase-I simplex over the rationals.

Used to decide whether a rational point is a convex combination of a set of
integer points.  Bland's rule guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Find ``x >= 0`` with ``A x = b`` or return ``None``."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for row, rhs in zip(A, b):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [rhs])
    # columns: n structural, m artificial, then rhs
    T = []
    for i, row in enumerate(rows):
        art = [Fraction(int(i == j)) for j in range(m)]
        T.append(row[:n] + art + [row[n]])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimize sum of artificials -> reduced costs
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # unbounded: impossible for phase I
            break
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * p for a, p in zip(T[i], T[leave])]
        f = cost[enter]
        cost = [a - f * p for a, p in zip(cost, T[leave])]
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][width]
    return x


def convex_coefficients(points: Sequence[Sequence[int]], x: Sequence) -> Optional[List[Fraction]]:
    """Barycentric weights expressing ``x`` in ``conv(points)``, if any."""
    if not points:
        return None
    dim = len(x)
    A = [[p[k] for p in points] for k in range(dim)]
    A.append([1] * len(points))
    return feasible_point(A, list(x) + [1])
