"""Small exact linear algebra over Fraction matrices."""

from __future__ import annotations

from fractions import Fraction


def nullspace_vector(rows):
    """One nonzero rational solution of M v = 0, or None if only trivial.

    Deterministic: reduced row echelon form, first free column set to 1.
    """
    if not rows:
        return None
    ncols = len(rows[0])
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    v = [Fraction(0)] * ncols
    v[fc] = Fraction(1)
    for row, pc in zip(m, pivots):
        v[pc] = -row[fc]
    return v


def solve_linear(rows, rhs):
    """Solve a square rational system exactly; None when singular."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return None
        m[c], m[pivot] = m[pivot], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]
