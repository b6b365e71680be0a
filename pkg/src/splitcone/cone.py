"""Facets, extreme rays, weight recovery and conic decomposition of EDC(KN_n)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .cells import cell_of_split, cell_terms, cell_value, in_facet_domain
from .metric import DissimilarityMatrix, WeightVector, pairs
from .splits import Split, SplitSystem, complete_system


class TooSmall(ValueError):
    pass


class NotInCone(ValueError):
    pass


KINDS = ("left", "right", "triangle", "covering")


@dataclass(frozen=True)
class Facet:
    n: int
    kind: str
    i: int
    j: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown facet kind {self.kind!r}")
        if not 2 <= self.i <= self.n - 1:
            raise ValueError(f"facet index {self.i} out of range for n={self.n}")
        if (self.kind == "covering") != (self.j is not None):
            raise ValueError("only covering facets take a second index")
        if self.kind == "covering" and not self.i < self.j <= self.n - 1:
            raise ValueError(f"covering facet needs {self.i} < j <= {self.n - 1}")

    @property
    def split(self) -> Split:
        """The split whose weight this facet bounds below by zero."""
        if self.kind == "left":
            return Split(1, self.i)
        if self.kind == "right":
            return Split(self.i, self.n)
        if self.kind == "triangle":
            return Split(self.i, self.i)
        return Split(self.i, self.j)

    @property
    def cell(self) -> tuple[int, int]:
        return cell_of_split(self.split)

    @property
    def coefficients(self) -> dict[tuple[int, int], int]:
        return cell_terms(self.n, *self.cell)

    def evaluate(self, d: DissimilarityMatrix) -> Fraction:
        return cell_value(d, *self.cell)

    def inequality(self) -> str:
        coef = self.coefficients
        small = [f"d({p},{q})" for (p, q), c in coef.items() if c < 0]
        big = [f"d({p},{q})" for (p, q), c in coef.items() if c > 0]
        return " + ".join(small) + " <= " + " + ".join(big)

    def name(self) -> str:
        idx = f"{self.i}" if self.j is None else f"{self.i},{self.j}"
        return f"{self.kind.capitalize()}({idx})"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "i": self.i}
        if self.j is not None:
            out["j"] = self.j
        out["paired_split"] = [self.split.lo, self.split.hi]
        return out

    def __str__(self):
        return self.name()


def _facets(n: int) -> list[Facet]:
    mid = range(2, n)
    out = [Facet(n, "left", i) for i in mid]
    out += [Facet(n, "right", i) for i in mid]
    out += [Facet(n, "triangle", i) for i in mid]
    out += [Facet(n, "covering", i, j) for i, j in combinations(mid, 2)]
    return out


def facets(n: int) -> list[Facet]:
    if n < 3:
        raise TooSmall(f"the facet description needs n >= 3, got {n}")
    return _facets(n)


def facet_count(n: int) -> int:
    return 3 * (n - 2) + (n - 2) * (n - 3) // 2


def recover_weights(d: DissimilarityMatrix) -> WeightVector:
    """Weights on KN_n reproducing ``d``; negative entries mean ``d`` lies outside the cone."""
    kn = complete_system(d.n)
    return WeightVector(kn, {s: cell_value(d, *cell_of_split(s)) / 2 for s in kn.splits})


# ---------------------------------------------------------------- rays

@dataclass(frozen=True, order=True)
class RayTau:
    """A composition of 1..n into consecutive blocks, stored by its cut points.

    Cut ``c`` separates ``c`` from ``c+1``.
    """

    n: int
    cuts: tuple

    def __post_init__(self):
        cuts = tuple(self.cuts)
        object.__setattr__(self, "cuts", cuts)
        if not cuts:
            raise ValueError("a ray needs at least two blocks")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError(f"cut points must increase: {cuts}")
        if cuts[0] < 1 or cuts[-1] > self.n - 1:
            raise ValueError(f"cut points must lie in 1..{self.n - 1}: {cuts}")

    @classmethod
    def from_blocks(cls, blocks) -> "RayTau":
        blocks = [tuple(b) for b in blocks]
        expect = 1
        for a, b in blocks:
            if a != expect or b < a:
                raise ValueError(f"blocks are not consecutive intervals: {blocks}")
            expect = b + 1
        return cls(expect - 1, tuple(b for _, b in blocks[:-1]))

    @classmethod
    def parse(cls, text: str) -> "RayTau":
        """Read ``1|23|45``; blocks may also list leaves with commas (``1|2,3|10,11``)."""
        blocks = []
        for part in text.strip().split("|"):
            part = part.strip()
            if not part:
                raise ValueError(f"empty block in {text!r}")
            leaves = [int(x) for x in part.split(",")] if "," in part else [int(c) for c in part]
            if leaves != list(range(leaves[0], leaves[-1] + 1)):
                raise ValueError(f"block {part!r} is not an interval")
            blocks.append((leaves[0], leaves[-1]))
        return cls.from_blocks(blocks)

    def blocks(self) -> list[tuple[int, int]]:
        ends = list(self.cuts) + [self.n]
        starts = [1] + [c + 1 for c in self.cuts]
        return list(zip(starts, ends))

    def separated(self, i: int, j: int) -> bool:
        lo, hi = min(i, j), max(i, j)
        return any(lo <= c < hi for c in self.cuts)

    def vector(self) -> DissimilarityMatrix:
        return ray_vector(self)

    def __str__(self):
        sep = "" if self.n < 10 else ","
        return "|".join(sep.join(str(x) for x in range(a, b + 1)) for a, b in self.blocks())


def ray_vector(t: RayTau) -> DissimilarityMatrix:
    return DissimilarityMatrix(t.n, tuple(int(t.separated(i, j)) for i, j in pairs(t.n)))


def all_rays(n: int) -> list[RayTau]:
    """Every composition of 1..n with at least two blocks, ordered by cut bitmask."""
    if n < 2:
        raise TooSmall("rays need n >= 2")
    return [RayTau(n, tuple(c for c in range(1, n) if mask >> (c - 1) & 1))
            for mask in range(1, 1 << (n - 1))]


def nontight_facets(t: RayTau) -> list[Facet]:
    """Facets on which r_tau is strictly positive: one per block whose cell is a facet cell."""
    out = []
    for a, b in t.blocks():
        k, l = a - 1, b
        if in_facet_domain(t.n, k, l):
            out.append(_facet_of_cell(t.n, k, l))
    return out


def _facet_of_cell(n: int, k: int, l: int) -> Facet:
    if k == 0:
        return Facet(n, "left", l)
    if l == n:
        return Facet(n, "right", k + 1)
    if l == k + 1:
        return Facet(n, "triangle", l)
    return Facet(n, "covering", k + 1, l)


def facet_incidence(t: RayTau, n: int | None = None) -> set[Facet]:
    """Facets containing r_tau, from the separation pattern of tau alone."""
    n = t.n if n is None else n
    if n != t.n:
        raise ValueError(f"ray is on {t.n} leaves, not {n}")
    sep = t.separated
    off = set()
    for i in range(2, n):
        if sep(i, i + 1) and not sep(1, i):
            off.add(Facet(n, "left", i))
        if sep(i - 1, i) and not sep(i, n):
            off.add(Facet(n, "right", i))
        if sep(i - 1, i) and sep(i, i + 1):
            off.add(Facet(n, "triangle", i))
    for i, j in combinations(range(2, n), 2):
        if not sep(i, j) and sep(i - 1, i) and sep(j, j + 1):
            off.add(Facet(n, "covering", i, j))
    return set(_facets(n)) - off


def facet_incidence_direct(t: RayTau) -> set[Facet]:
    r = ray_vector(t)
    return {f for f in _facets(t.n) if f.evaluate(r) == 0}


def rays_of_face(sys: SplitSystem) -> list[RayTau]:
    """Extreme rays of EDC_N: rays lying on every facet whose split is missing from N."""
    n = sys.n
    if n < 2:
        return []
    by_rule = [t for t in all_rays(n) if all(Split(a, b) in sys for a, b in t.blocks())]
    missing = [f for f in _facets(n) if f.split not in sys]
    direct = [t for t in all_rays(n) if all(f.evaluate(ray_vector(t)) == 0 for f in missing)]
    if by_rule != direct:
        raise AssertionError(f"face ray rules disagree for {sorted(sys.splits)}")
    return by_rule


# ---------------------------------------------------------------- membership

INTERIOR, ON_FACE, OUTSIDE = "interior", "on_face", "outside"


@dataclass(frozen=True)
class Violation:
    constraint: str
    value: Fraction

    def __str__(self):
        return f"{self.constraint} = {self.value}"


@dataclass(frozen=True)
class Membership:
    status: str
    system: Optional[SplitSystem] = None
    violations: tuple = ()

    @property
    def inside(self) -> bool:
        return self.status != OUTSIDE


def membership(d: DissimilarityMatrix, sys: SplitSystem | None = None) -> Membership:
    n = d.n
    kn = complete_system(n)
    if sys is not None and sys.n != n:
        raise ValueError(f"system has {sys.n} leaves but the matrix has {n}")
    bad = []
    for f in _facets(n):
        v = f.evaluate(d)
        if v < 0:
            bad.append(Violation(f.name(), v))
        elif sys is not None and f.split not in sys and v != 0:
            bad.append(Violation(f"{f.name()} must be tight for {f.split}", v))
    for i, j in ((1, 2), (n - 1, n)):
        if d[i, j] < 0:
            bad.append(Violation(f"d({i},{j}) >= 0", d[i, j]))
    if bad:
        return Membership(OUTSIDE, None, tuple(bad))
    w = recover_weights(d)
    face = SplitSystem.of(n, w.positive())
    strict = all(f.evaluate(d) > 0 for f in _facets(n))
    return Membership(INTERIOR if face == kn and strict else ON_FACE, face)


# ---------------------------------------------------------------- decomposition

def _subtract(y: DissimilarityMatrix, lam: Fraction, r: DissimilarityMatrix) -> DissimilarityMatrix:
    return DissimilarityMatrix(y.n, tuple(a - lam * b for a, b in zip(y.entries, r.entries)))


def decompose(d: DissimilarityMatrix) -> list[tuple[Fraction, RayTau]]:
    """Greedy conic decomposition: peel off the largest multiple of a ray tight on the current face."""
    from .xdiagram import ray_for_tight_set, xdiagram_of

    n = d.n
    if not membership(d).inside:
        raise NotInCone("matrix violates a facet of the cone")
    if n < 2:
        return []
    if n == 2:
        return [(d[1, 2], RayTau(2, (1,)))] if d[1, 2] else []
    terms: list[tuple[Fraction, RayTau]] = []
    y = d
    limit = n * (n - 1) // 2 + 2
    fs = _facets(n)
    while any(y.entries):
        if len(terms) >= limit:
            raise RuntimeError("decomposition did not terminate within the step bound")
        tau = ray_for_tight_set(xdiagram_of(y))
        if tau is None:
            raise RuntimeError("nonzero point with every facet tight")
        r = ray_vector(tau)
        ratios = [f.evaluate(y) / f.evaluate(r) for f in fs if f.evaluate(r) > 0]
        ratios += [yv for yv, rv in zip(y.entries, r.entries) if rv == 1]
        lam = min(ratios)
        terms.append((lam, tau))
        y = _subtract(y, lam, r)
    return terms


def resum(n: int, terms) -> DissimilarityMatrix:
    total = [Fraction(0)] * (n * (n - 1) // 2)
    for lam, tau in terms:
        total = [a + lam * b for a, b in zip(total, ray_vector(tau).entries)]
    return DissimilarityMatrix(n, tuple(total))
