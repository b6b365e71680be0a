"""Independent checks used only by the tests.

Nothing here imports the facet or ray code under test: the cone is rebuilt
from its generators by brute force, so agreement is a real cross-check.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def leaf_pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def separation_vector(n, blocks):
    """0/1 vector over leaf pairs: 1 when the two leaves sit in different blocks."""
    where = {}
    for b, block in enumerate(blocks):
        for leaf in block:
            where[leaf] = b
    return tuple(int(where[i] != where[j]) for i, j in leaf_pairs(n))


def interval_compositions(n):
    """Every way to cut 1..n into at least two consecutive runs."""
    for k in range(1, n):
        for cuts in combinations(range(1, n), k):
            bounds = (0,) + cuts + (n,)
            yield [list(range(bounds[t] + 1, bounds[t + 1] + 1)) for t in range(len(bounds) - 1)]


def generators(n):
    return sorted({separation_vector(n, bl) for bl in interval_compositions(n)})


def _reduce(rows):
    """Row echelon form over the rationals; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    width = len(m[0]) if m else 0
    for c in range(width):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows):
    return len(_reduce(rows)[0]) if rows else 0


def normal_of(rows, width):
    """The unique (up to scale) vector orthogonal to ``rows`` if their rank is width-1."""
    red, piv = _reduce(rows)
    if len(red) != width - 1:
        return None
    free = next(c for c in range(width) if c not in piv)
    v = [Fraction(0)] * width
    v[free] = Fraction(1)
    for row, c in zip(red, piv):
        v[c] = -row[free]
    return primitive(v)


def primitive(v):
    """Scale a rational vector to coprime integers."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints) if g else tuple(ints)


def dot(a, b):
    return sum(Fraction(x) * y for x, y in zip(a, b))


def hull_facets(gens):
    """Facet normals of cone(gens), by brute force over maximal independent subsets.

    Only feasible for a handful of generators; n <= 5 means at most 15 rays
    in dimension 10.
    """
    width = len(gens[0])
    found = set()
    for subset in combinations(range(len(gens)), width - 1):
        v = normal_of([gens[i] for i in subset], width)
        if v is None:
            continue
        vals = [dot(v, g) for g in gens]
        if all(x >= 0 for x in vals):
            found.add(v)
        elif all(x <= 0 for x in vals):
            found.add(tuple(-x for x in v))
    return found

