"""Exact rational feasibility LP: nonnegative combinations of columns.

Phase-1 simplex with Bland's rule over exact rationals. No floating point
is involved anywhere, so a returned combination reconstructs the target
bit-exactly and an infeasibility answer is a theorem, not an estimate.

gmpy2 rationals are used internally when available (they are a few times
faster than `fractions.Fraction`); the interface speaks Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

try:  # gmpy2 is a declared dependency, but the pure-Python path keeps this importable anywhere
    from gmpy2 import mpq as _RAT
except ImportError:  # pragma: no cover
    _RAT = Fraction

_MAX_PIVOTS = 200_000


def _rat(x) -> "_RAT":
    f = Fraction(x)
    return _RAT(f.numerator, f.denominator)


def _fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def solve_nonneg_combination(
    columns: Sequence[Mapping[int, Fraction]],
    target: Mapping[int, Fraction],
) -> list[Fraction] | None:
    """Find y >= 0 with sum_j y_j * columns[j] == target, exactly.

    Columns and target are sparse coordinate->value maps. Returns the
    weight list (mostly zeros) or None when no nonnegative combination
    exists.
    """
    coord_set = {c for c, v in target.items() if v != 0}
    for col in columns:
        coord_set.update(col.keys())
    coords = sorted(coord_set)
    nstruct = len(columns)
    m = len(coords)
    if m == 0:
        return [Fraction(0)] * nstruct
    index = {c: i for i, c in enumerate(coords)}
    zero = _RAT(0)
    one = _RAT(1)

    ncols = nstruct + m + 1  # structural + artificial + rhs
    tableau = [[zero] * ncols for _ in range(m)]
    for j, col in enumerate(columns):
        for c, v in col.items():
            tableau[index[c]][j] = _rat(v)
    for c, v in target.items():
        if v != 0:
            tableau[index[c]][-1] = _rat(v)
    for i in range(m):
        tableau[i][nstruct + i] = one
        if tableau[i][-1] < 0:
            tableau[i] = [-v for v in tableau[i]]

    basis = [nstruct + i for i in range(m)]
    # phase-1 cost: minimize the sum of artificials; reduced costs start
    # as cost coefficients minus the sum of the (artificial-basic) rows
    cost = [zero] * nstruct + [one] * m + [zero]
    for row in tableau:
        cost = [c - r for c, r in zip(cost, row)]

    nvars = nstruct + m
    for _ in range(_MAX_PIVOTS):
        entering = -1
        for j in range(nvars):
            if cost[j] < 0:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            raise RuntimeError("phase-1 objective unbounded; constraint matrix is inconsistent")
        piv = tableau[leaving][entering]
        prow = [v / piv for v in tableau[leaving]]
        tableau[leaving] = prow
        for i in range(m):
            if i != leaving:
                f = tableau[i][entering]
                if f != 0:
                    tableau[i] = [a - f * b for a, b in zip(tableau[i], prow)]
        f = cost[entering]
        if f != 0:
            cost = [a - f * b for a, b in zip(cost, prow)]
        basis[leaving] = entering
    else:
        raise RuntimeError("simplex pivot limit exceeded")

    if -cost[-1] != 0:  # residual artificial mass: infeasible
        return None
    weights = [Fraction(0)] * nstruct
    for i, bv in enumerate(basis):
        if bv < nstruct:
            weights[bv] = _fraction(tableau[i][-1])
    return weights
