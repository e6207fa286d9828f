"""Exact feasibility LP: phase-I simplex with Bland's rule and integer pivoting.

The tableau is kept as integers T with a common denominator d > 0 (the
actual tableau is T / d); each pivot divides exactly, as in Bareiss
elimination, so no rational arithmetic is needed inside the loop.
"""

import math
from fractions import Fraction


def _integerize(A, b):
    """Scale each equation by the lcm of its denominators."""
    rows = []
    for row, rhs in zip(A, b):
        vals = [Fraction(v) for v in row] + [Fraction(rhs)]
        den = 1
        for v in vals:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in vals]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        rows.append(ints)
    return rows


def feasible(A, b):
    """Return x >= 0 (Fractions) with A x = b, or None."""
    m = len(A)
    if m == 0:
        return []
    nvar = len(A[0])
    base = _integerize(A, b)
    width = nvar + m
    T = []
    for i, row in enumerate(base):
        T.append(row[:nvar] + [int(r == i) for r in range(m)] + [row[nvar]])
    basis = [nvar + i for i in range(m)]
    cost = [0] * (width + 1)
    for row in T:
        for j in range(nvar):
            cost[j] -= row[j]
        cost[width] -= row[width]
    d = 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
                continue
            la = T[leave][enter]
            lhs = T[i][width] * la
            rhs = T[leave][width] * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                leave = i
        if leave is None:
            break  # phase I is bounded below; defensive
        piv = T[leave][enter]
        prow = T[leave]
        for i in range(m):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            if f:
                T[i] = [(v * piv - f * p) // d for v, p in zip(row, prow)]
            elif piv != d:
                T[i] = [v * piv // d for v in row]
        f = cost[enter]
        cost = [(v * piv - f * p) // d for v, p in zip(cost, prow)]
        d = piv
        basis[leave] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * nvar
    for i, j in enumerate(basis):
        if j < nvar:
            x[j] = Fraction(T[i][width], d)
    return x


def convex_weights(p, points):
    """Convex combination weights expressing p from points, or None."""
    points = list(points)
    dim = len(p)
    A = [[q[i] for q in points] for i in range(dim)] + [[1] * len(points)]
    b = list(p) + [1]
    return feasible(A, b)
