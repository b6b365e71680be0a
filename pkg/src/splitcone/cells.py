"""The bordered matrix and its unit cells.

Every weight of KN_n is half of one 2x2 "cell" functional of the bordered
matrix T (rows 0..n, columns 1..n+1):

    T(k,l) + T(k+1,l+1) - T(k+1,l) - T(k,l+1)

where row 0 and column n+1 are all ones, T(i,i) = 0 and T(i,j) = d(i,j)
for i < j.  The split [a,b] owns the cell (a-1, b).  This one table is what
both the facet list and the X-diagram read.
"""
from __future__ import annotations

from fractions import Fraction

from .metric import DissimilarityMatrix
from .splits import Split


def tilde_entry(d: DissimilarityMatrix, i: int, j: int) -> Fraction:
    n = d.n
    if not (0 <= i <= n and 1 <= j <= n + 1 and i <= j):
        raise KeyError((i, j))
    if i == 0 or j == n + 1:
        return Fraction(1)
    if i == j:
        return Fraction(0)
    return d[i, j]


def cell_value(d: DissimilarityMatrix, k: int, l: int) -> Fraction:
    t = tilde_entry
    return t(d, k, l) + t(d, k + 1, l + 1) - t(d, k + 1, l) - t(d, k, l + 1)


def cell_terms(n: int, k: int, l: int) -> dict[tuple[int, int], int]:
    """Coefficients of the cell functional on the interior coordinates d(p,q)."""
    out: dict[tuple[int, int], int] = {}
    for p, q, c in ((k, l, 1), (k + 1, l + 1, 1), (k + 1, l, -1), (k, l + 1, -1)):
        if 1 <= p < q <= n:
            out[(p, q)] = out.get((p, q), 0) + c
    return {pq: c for pq, c in out.items() if c}


def cell_of_split(s: Split) -> tuple[int, int]:
    return (s.lo - 1, s.hi)


def split_of_cell(k: int, l: int) -> Split:
    return Split(k + 1, l)


def in_facet_domain(n: int, k: int, l: int) -> bool:
    return 0 <= k <= n - 2 and 2 <= l <= n and k < l and (k, l) != (0, n)


def facet_cells(n: int) -> list[tuple[int, int]]:
    return [(k, l) for k in range(0, n - 1) for l in range(2, n + 1) if in_facet_domain(n, k, l)]
