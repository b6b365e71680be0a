"""The Chan-Robbins-Yuen polytope, the truncated cone PEDC_n and the maps between them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .cone import _facets, all_rays, membership, ray_vector
from .metric import DissimilarityMatrix, pairs, to_fraction


class NotInPolytope(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CRYMatrix:
    n: int
    x: tuple  # row-major n x n

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(v) for v in r) for r in self.x)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        object.__setattr__(self, "x", rows)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.x[i - 1][j - 1]

    def violations(self) -> list[str]:
        n, out = self.n, []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if self[i, j] < 0:
                    out.append(f"x({i},{j}) < 0")
                if i - j > 1 and self[i, j] != 0:
                    out.append(f"x({i},{j}) below the subdiagonal")
            if sum(self.x[i - 1]) != 1:
                out.append(f"row {i} sums to {sum(self.x[i - 1])}")
            col = sum(r[i - 1] for r in self.x)
            if col != 1:
                out.append(f"column {i} sums to {col}")
        return out

    @classmethod
    def zeros(cls, n: int) -> "CRYMatrix":
        return cls(n, tuple((0,) * n for _ in range(n)))


def phi(x: CRYMatrix) -> DissimilarityMatrix:
    n = x.n
    # corner sums S(k,l) = sum_{i<=k, j>=l} x_ij by a running 2D suffix/prefix table
    s = [[Fraction(0)] * (n + 2) for _ in range(n + 1)]
    for k in range(1, n + 1):
        for l in range(n, 0, -1):
            s[k][l] = x[k, l] + s[k - 1][l] + s[k][l + 1] - s[k - 1][l + 1]
    return DissimilarityMatrix(n, tuple(1 - s[k][l] for k, l in pairs(n)))


def psi(d: DissimilarityMatrix) -> CRYMatrix:
    """Inverse of :func:`phi` on PEDC_n."""
    n = d.n
    if d.n < 2:
        raise NotInPolytope("PEDC_n needs n >= 2")
    if not membership(d).inside:
        raise NotInPolytope("point lies outside the cone")
    if d[1, n] > 1:
        raise NotInPolytope(f"d(1,{n}) = {d[1, n]} exceeds 1")
    x = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    x[1][n] = 1 - d[1, n]
    x[1][1] = d[1, 2]
    x[n][n] = d[n - 1, n]
    for j in range(2, n):
        x[1][j] = d[1, j + 1] - d[1, j]
    for i in range(2, n):
        x[i][n] = d[i - 1, n] - d[i, n]
        x[i][i] = d[i - 1, i] + d[i, i + 1] - d[i - 1, i + 1]
    for i in range(2, n - 1):
        for j in range(i + 1, n):
            x[i][j] = d[i - 1, j] + d[i, j + 1] - d[i, j] - d[i - 1, j + 1]
    for i in range(1, n):
        x[i + 1][i] = 1 - d[i, i + 1]
    return CRYMatrix(n, tuple(tuple(r[1:]) for r in x[1:]))


def _compositions(n: int):
    """All compositions of 1..n as block lists, ordered by cut bitmask (mask 0 first)."""
    for mask in range(1 << (n - 1)):
        cuts = [c for c in range(1, n) if mask >> (c - 1) & 1]
        starts = [1] + [c + 1 for c in cuts]
        yield list(zip(starts, cuts + [n]))


def block_matrix(n: int, blocks) -> CRYMatrix:
    x = [[0] * n for _ in range(n)]
    for a, b in blocks:
        if a == b:
            x[a - 1][a - 1] = 1
            continue
        for i in range(a, b):
            x[i][i - 1] = 1
        x[a - 1][b - 1] = 1
    return CRYMatrix(n, tuple(tuple(r) for r in x))


def cry_vertices(n: int) -> list[CRYMatrix]:
    if n < 2:
        raise ValueError("CRY_n needs n >= 2")
    return [block_matrix(n, bl) for bl in _compositions(n)]


def pedc_vertices(n: int) -> list[DissimilarityMatrix]:
    """The origin followed by every r_tau, in the same order as :func:`cry_vertices`."""
    if n < 2:
        raise ValueError("PEDC_n needs n >= 2")
    return [DissimilarityMatrix.zeros(n)] + [ray_vector(t) for t in all_rays(n)]


# ---------------------------------------------------------------- lattice points

MAX_N = 5
MAX_DILATION = 4


def count_pedc_points(n: int, t: int) -> int:
    """Integer points of t*PEDC_n, row by row.

    Every facet touches at most two consecutive rows of the upper triangle, so
    the count is a DP over rows keyed on the previous row.  The bounds
    d(i,j) <= d(i,j+1) and d(i,j) <= d(i-1,j) hold on the whole cone and only
    prune.
    """
    if n < 2:
        return 1

    def rows_after(prev: tuple, i: int):
        # prev[j] = d(i-1, j) for j in i..n (prev is the full row, indexed by column)
        out = []
        row: dict[int, int] = {}

        def fill(j: int):
            if j == i:
                out.append(tuple(row.get(c) for c in range(n + 1)))
                return
            hi = t if i == 1 else prev[j]
            if j < n:
                hi = min(hi, row[j + 1])
            lo = 0
            if i == 1:
                # left facets: d(1,j) <= d(1,j+1), handled by the monotone bound
                pass
            else:
                if j == n:
                    pass  # right facet d(i,n) <= d(i-1,n) is the monotone bound
                else:
                    hi = min(hi, row[j + 1] + prev[j] - prev[j + 1])  # covering (i, j)
                if j == i + 1:
                    lo = max(lo, prev[i + 1] - prev[i])  # triangle at i
            for v in range(lo, hi + 1):
                row[j] = v
                fill(j - 1)
            row.pop(j, None)

        fill(n)
        return out

    @lru_cache(maxsize=None)
    def count(i: int, prev: tuple) -> int:
        if i == n:
            return 1
        return sum(count(i + 1, r) for r in rows_after(prev, i))

    top = tuple([None] + [t] * n)
    return count(1, top)


def count_cry_points(n: int, t: int) -> int:
    """Integer n x n matrices with line sums t vanishing below the subdiagonal."""

    @lru_cache(maxsize=None)
    def count(i: int, rem: tuple) -> int:
        # rem[c] = what column i-1+c still needs; column i-1 can only be fed by row i now
        if i > n:
            return int(all(r == 0 for r in rem))
        forced = rem[0] if i > 1 else 0
        if i > 1 and forced > t:
            return 0
        cols = rem[1:] if i > 1 else rem
        budget = t - forced
        total = 0

        def spread(c: int, left: int, acc: list):
            nonlocal total
            if c == len(cols):
                if left == 0:
                    total += count(i + 1, tuple(acc))
                return
            for v in range(min(left, cols[c]) + 1):
                acc.append(cols[c] - v)
                spread(c + 1, left - v, acc)
                acc.pop()

        spread(0, budget, [])
        return total

    return count(1, tuple([t] * n))


def count_lattice_points(n: int, t: int, max_dilation: int = MAX_DILATION) -> int:
    """Integer points of t*PEDC_n, cross-checked against t*CRY_n."""
    if n > MAX_N or t > max_dilation:
        raise TooLarge(f"lattice counting is capped at n <= {MAX_N}, t <= {max_dilation}")
    if t < 0:
        raise ValueError("dilation must be nonnegative")
    a, b = count_pedc_points(n, t), count_cry_points(n, t)
    if a != b:
        raise AssertionError(f"lattice counts differ at n={n}, t={t}: PEDC {a}, CRY {b}")
    return a


def ehrhart_polynomial(n: int) -> list[Fraction]:
    """Coefficients c_0..c_d of the Ehrhart polynomial of PEDC_n, d = C(n,2)."""
    if n > MAX_N:
        raise TooLarge(f"Ehrhart interpolation is capped at n <= {MAX_N}")
    deg = comb(n, 2)
    ts = list(range(deg + 1))
    vals = [Fraction(count_lattice_points(n, t, max_dilation=deg)) for t in ts]
    return _interpolate(ts, vals)


def _interpolate(xs, ys) -> list[Fraction]:
    """Newton divided differences, expanded into monomial coefficients."""
    m = len(xs)
    coef = list(ys)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * m
    for k in range(m - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[k] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[k]
    return poly


def normalized_volume(n: int) -> Fraction:
    poly = ehrhart_polynomial(n)
    return poly[-1] * factorial(len(poly) - 1)


def catalan(i: int) -> int:
    return comb(2 * i, i) // (i + 1)


def catalan_product(n: int) -> int:
    out = 1
    for i in range(1, n - 1):
        out *= catalan(i)
    return out
