"""Sparse exact linear solving over Q.

Rows are dicts column -> coefficient.  Elimination is fraction-free: each
row is scaled to integers, pivoting is deterministic (lowest column index,
first eligible row), and updates use integer cross-multiplication followed
by a gcd reduction, so certificates are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _scale_to_int(row: dict[int, Fraction]) -> dict[int, int]:
    lcm = 1
    for q in row.values():
        d = q.denominator
        lcm = lcm // gcd(lcm, d) * d
    out = {c: int(q * lcm) for c, q in row.items() if q}
    g = 0
    for v in out.values():
        g = gcd(g, abs(v))
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _eliminate(rows: list[dict[int, Fraction]]) -> list[tuple[int, dict[int, int]]]:
    """Forward elimination; returns echelon rows as (pivot_col, row)."""
    work = [_scale_to_int(r) for r in rows]
    work = [r for r in work if r]
    echelon: list[tuple[int, dict[int, int]]] = []
    while work:
        pivot_col = min(min(r) for r in work)
        idx = next(i for i, r in enumerate(work) if pivot_col in r)
        pivot = work.pop(idx)
        echelon.append((pivot_col, pivot))
        pv = pivot[pivot_col]
        reduced = []
        for r in work:
            rv = r.get(pivot_col)
            if rv:
                new = {}
                for col in r.keys() | pivot.keys():
                    val = r.get(col, 0) * pv - pivot.get(col, 0) * rv
                    if val:
                        new[col] = val
                g = 0
                for v in new.values():
                    g = gcd(g, abs(v))
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                if new:
                    reduced.append(new)
            else:
                reduced.append(r)
        work = reduced
    return echelon


def solve(
    rows: list[dict[int, Fraction]],
    rhs: list[Fraction],
    ncols: int,
) -> list[Fraction] | None:
    """One solution of A x = b with free variables set to zero, or None.

    The right-hand side is carried as an extra column, so infeasibility
    shows up as a pivot in that column.
    """
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    echelon = _eliminate(aug)
    if any(col == ncols for col, _ in echelon):
        return None
    solution = [Fraction(0)] * ncols
    for col, row in reversed(echelon):
        acc = Fraction(row.get(ncols, 0))
        for c, v in row.items():
            if c != col and c != ncols:
                acc -= v * solution[c]
        solution[col] = acc / row[col]
    return solution


def nullspace(rows: list[dict[int, Fraction]], ncols: int) -> list[list[Fraction]]:
    """Deterministic basis of the solution space of A x = 0."""
    echelon = _eliminate([dict(r) for r in rows])
    pivots = [col for col, _ in echelon]
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for col, row in reversed(echelon):
            acc = Fraction(0)
            for c, v in row.items():
                if c != col:
                    acc -= v * vec[c]
            vec[col] = acc / row[col]
        basis.append(vec)
    return basis
