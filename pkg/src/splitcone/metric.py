"""Exact dissimilarity matrices and the four-point / Kalmanson / metric tests."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping

from .splits import CheckResult, Split, SplitSystem, separates


def to_fraction(value) -> Fraction:
    """Exact conversion; floats go through their printed decimal form."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Mapping) and set(value) == {"num", "den"}:
        return Fraction(int(value["num"]), int(value["den"]))
    return Fraction(value)


def pairs(n: int) -> list[tuple[int, int]]:
    """Coordinate order used everywhere: (1,2), (1,3), ..., (n-1,n)."""
    return list(combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class DissimilarityMatrix:
    n: int
    entries: tuple  # values for pairs(n), in that order

    def __post_init__(self):
        vals = tuple(to_fraction(v) for v in self.entries)
        if len(vals) != self.n * (self.n - 1) // 2:
            raise ValueError(f"expected {self.n * (self.n - 1) // 2} entries, got {len(vals)}")
        neg = [p for p, v in zip(pairs(self.n), vals) if v < 0]
        if neg:
            raise ValueError(f"negative dissimilarity at {neg[0]}")
        object.__setattr__(self, "entries", vals)

    @classmethod
    def from_dict(cls, n: int, values: Mapping) -> "DissimilarityMatrix":
        norm = {}
        for (i, j), v in values.items():
            if i == j:
                raise ValueError(f"diagonal entry ({i},{i}) given")
            norm[(min(i, j), max(i, j))] = v
        missing = [p for p in pairs(n) if p not in norm]
        if missing:
            raise ValueError(f"missing entry {missing[0]}")
        return cls(n, tuple(norm[p] for p in pairs(n)))

    @classmethod
    def from_rows(cls, rows) -> "DissimilarityMatrix":
        """From a full square matrix or a strict upper triangle (row i has n-i values)."""
        rows = [list(r) for r in rows]
        # a lone value is the single entry of a two-leaf triangle, not a 1x1 matrix
        if len(rows) > 1 and all(len(r) == len(rows) for r in rows):
            n = len(rows)
            for i in range(n):
                if to_fraction(rows[i][i]) != 0:
                    raise ValueError(f"nonzero diagonal at row {i + 1}")
                for j in range(i + 1, n):
                    if to_fraction(rows[i][j]) != to_fraction(rows[j][i]):
                        raise ValueError(f"matrix not symmetric at ({i + 1},{j + 1})")
            return cls(n, tuple(rows[i][j] for i in range(n) for j in range(i + 1, n)))
        n = len(rows) + 1
        for i, r in enumerate(rows):
            if len(r) != n - 1 - i:
                raise ValueError(f"row {i + 1} has {len(r)} values, expected {n - 1 - i}")
        return cls(n, tuple(v for r in rows for v in r))

    @classmethod
    def zeros(cls, n: int) -> "DissimilarityMatrix":
        return cls(n, (0,) * (n * (n - 1) // 2))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if i == j:
            return Fraction(0)
        if i > j:
            i, j = j, i
        if not 1 <= i < j <= self.n:
            raise KeyError(ij)
        # offset of (i, j) in the row-major strict upper triangle
        k = (i - 1) * (2 * self.n - i) // 2 + (j - i - 1)
        return self.entries[k]

    def as_dict(self) -> dict:
        return dict(zip(pairs(self.n), self.entries))

    def rows(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def __add__(self, other):
        if not isinstance(other, DissimilarityMatrix) or other.n != self.n:
            return NotImplemented
        return DissimilarityMatrix(self.n, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "DissimilarityMatrix":
        c = to_fraction(c)
        return DissimilarityMatrix(self.n, tuple(c * v for v in self.entries))

    def relabel(self, order) -> "DissimilarityMatrix":
        """Matrix seen through ``order``: new leaf k is old leaf ``order[k-1]``."""
        return DissimilarityMatrix.from_dict(
            self.n, {(a, b): self[order[a - 1], order[b - 1]] for a, b in pairs(self.n)})


@dataclass(frozen=True)
class WeightVector:
    """Weights on the splits of a system.

    Weights recovered from a matrix outside the cone may be negative; callers
    that need a genuine weighting should check :meth:`is_nonnegative`.
    """

    system: SplitSystem
    weights: Mapping

    def __post_init__(self):
        w = {s: to_fraction(v) for s, v in self.weights.items()}
        extra = set(w) - set(self.system.splits)
        if extra:
            raise ValueError(f"weight given for split not in system: {sorted(extra)[0]}")
        for s in self.system.splits:
            w.setdefault(s, Fraction(0))
        object.__setattr__(self, "weights", w)

    def __getitem__(self, s: Split) -> Fraction:
        return self.weights[s]

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.weights.values())

    def positive(self) -> list[Split]:
        return [s for s in self.system.sorted() if self.weights[s] > 0]

    def __add__(self, other):
        if not isinstance(other, WeightVector) or other.system != self.system:
            return NotImplemented
        return WeightVector(self.system, {s: self[s] + other[s] for s in self.system.splits})


def distance(system: SplitSystem, w: WeightVector, i: int, j: int) -> Fraction:
    if i == j:
        return Fraction(0)
    return sum((w[s] for s in system.splits if separates(s, i, j)), Fraction(0))


def full_matrix(system: SplitSystem, w: WeightVector):
    """Return the leaf matrix and the root distances ``(d(0,1), ..., d(0,n))``."""
    n = system.n
    d = DissimilarityMatrix(n, tuple(distance(system, w, i, j) for i, j in pairs(n)))
    root = tuple(distance(system, w, 0, i) for i in range(1, n + 1))
    return d, root


def check_equidistant(system: SplitSystem, w: WeightVector) -> CheckResult:
    """``ok`` when every leaf is at the same distance from the root; the witness is that distance
    on success and the tuple of root distances on failure."""
    _, root = full_matrix(system, w)
    if len(set(root)) <= 1:
        return CheckResult(True, root[0] if root else Fraction(0))
    return CheckResult(False, root)


@dataclass(frozen=True)
class QuadrupleWitness:
    quad: tuple
    sums: tuple  # (d(i,j)+d(k,l), d(i,k)+d(j,l), d(i,l)+d(j,k))


def quadruple_sums(d: DissimilarityMatrix, i, j, k, l) -> tuple:
    return (d[i, j] + d[k, l], d[i, k] + d[j, l], d[i, l] + d[j, k])


def check_four_point(d: DissimilarityMatrix) -> CheckResult:
    for q in combinations(range(1, d.n + 1), 4):
        sums = quadruple_sums(d, *q)
        lo, mid, hi = sorted(sums)
        if mid != hi:
            return CheckResult(False, QuadrupleWitness(q, sums))
    return CheckResult(True)


def _kalmanson_violation(d: DissimilarityMatrix):
    for q in combinations(range(1, d.n + 1), 4):
        ij_kl, ik_jl, il_jk = quadruple_sums(d, *q)
        if ij_kl > ik_jl or il_jk > ik_jl:
            return QuadrupleWitness(q, (ij_kl, ik_jl, il_jk))
    return None


MAX_EXHAUSTIVE_N = 8


def check_kalmanson(d: DissimilarityMatrix, exhaustive: bool = False) -> CheckResult:
    """Kalmanson condition for the order 1..n.

    With ``exhaustive`` (n <= 8) every circular ordering is tried when the
    standard one fails; on success the witness is the ordering that works.
    The failure witness always refers to the standard ordering.
    """
    bad = _kalmanson_violation(d)
    if bad is None:
        return CheckResult(True, tuple(range(1, d.n + 1)) if exhaustive else None)
    if not exhaustive:
        return CheckResult(False, bad)
    if d.n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive ordering search is limited to n <= {MAX_EXHAUSTIVE_N}")
    # fix leaf 1 first and skip mirror images
    for rest in permutations(range(2, d.n + 1)):
        if len(rest) > 1 and rest[0] > rest[-1]:
            continue
        order = (1,) + rest
        if _kalmanson_violation(d.relabel(order)) is None:
            return CheckResult(True, order)
    return CheckResult(False, bad)


def check_metric(d: DissimilarityMatrix) -> CheckResult:
    """Triangle inequality; the witness ``(x, y, z)`` has ``d(x,z) > d(x,y) + d(y,z)``."""
    for x, y, z in permutations(range(1, d.n + 1), 3):
        if d[x, z] > d[x, y] + d[y, z]:
            return CheckResult(False, (x, y, z))
    return CheckResult(True)
