"""Exact linear algebra over the rationals: rank, solve, null space.

Small dense problems only (dimensions bounded by the subset lattice, so at
most a few hundred). Integer matrices take a fraction-free Bareiss path;
general rational input falls back to Fraction Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def _to_int_rows(rows) -> list[list[int]] | None:
    """Clear denominators row-wise if every entry is an int or Fraction."""
    out = []
    for row in rows:
        ints = []
        denom = 1
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
                return None
            if isinstance(v, Fraction):
                denom = denom * v.denominator // gcd(denom, v.denominator)
        for v in row:
            ints.append(int(v * denom))
        out.append(ints)
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a matrix with int/Fraction entries."""
    mat = _to_int_rows(rows)
    if mat is None:
        raise TypeError("exact rank needs int or Fraction entries")
    return _bareiss_rank(mat)


def _bareiss_rank(mat: list[list[int]]) -> int:
    m = len(mat)
    if m == 0:
        return 0
    ncols = len(mat[0])
    mat = [row[:] for row in mat]
    r = 0
    prev = 1
    for col in range(ncols):
        pivot_row = None
        for i in range(r, m):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        piv = mat[r][col]
        for i in range(r + 1, m):
            fi = mat[i][col]
            if fi == 0 and piv == prev:
                continue
            row_i = mat[i]
            row_r = mat[r]
            for j in range(col, ncols):
                row_i[j] = (row_i[j] * piv - fi * row_r[j]) // prev
        prev = piv
        r += 1
        if r == m:
            break
    return r


def solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve a square exact system; None when singular."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def null_space(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right null space, exact."""
    if not rows:
        return []
    m = len(rows)
    ncols = len(rows[0])
    aug = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, m):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -aug[prow][fc]
        basis.append(vec)
    return basis


def clear_denominators(vec: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers, preserving sign."""
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints
