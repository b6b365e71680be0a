"""Circular split systems on taxa ``{0, 1, ..., n}`` rooted at ``0``.

A circular split is stored by the interval ``[lo, hi]`` of its 0-free side,
so ``Split(2, 3)`` on five leaves is the split ``23 | 0145``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable


class SplitError(ValueError):
    pass


class NotCircular(SplitError):
    """The 0-free side of a split is not an interval of 1..n."""


class RootTrivial(SplitError):
    """The 0-free side is all of 1..n, i.e. the root's own trivial split."""


@dataclass(frozen=True, order=True)
class Split:
    lo: int
    hi: int

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi:
            raise SplitError(f"invalid interval [{self.lo},{self.hi}]")

    @property
    def trivial(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, taxon: int) -> bool:
        return self.lo <= taxon <= self.hi

    def expand(self, n: int) -> tuple[frozenset, frozenset]:
        """Return ``(inside, outside)``; ``outside`` always holds the root 0."""
        inside = frozenset(range(self.lo, self.hi + 1))
        return inside, frozenset(range(n + 1)) - inside

    def label(self, n: int) -> str:
        inside, outside = self.expand(n)
        return _side(inside) + "|" + _side(outside)

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


def _side(taxa) -> str:
    taxa = sorted(taxa)
    sep = "" if all(t < 10 for t in taxa) else ","
    return sep.join(str(t) for t in taxa)


def separates(s: Split, i: int, j: int) -> bool:
    # the root 0 is never inside an interval
    return (i in s) != (j in s)


def canonicalize(side_a: Iterable[int], side_b: Iterable[int], n: int) -> Split:
    """Turn a set-pair split ``A|B`` of ``{0..n}`` into interval form."""
    a, b = frozenset(side_a), frozenset(side_b)
    universe = frozenset(range(n + 1))
    if not a or not b:
        raise SplitError("both sides of a split must be nonempty")
    if a & b:
        raise SplitError(f"sides overlap on {sorted(a & b)}")
    if a | b != universe:
        raise SplitError(f"sides do not cover 0..{n}: missing {sorted(universe - (a | b))}")
    inside = b if 0 in a else a
    lo, hi = min(inside), max(inside)
    if len(inside) != hi - lo + 1:
        raise NotCircular(f"side {sorted(inside)} is not an interval of 1..{n}")
    if (lo, hi) == (1, n):
        raise RootTrivial("the trivial split of the root is not part of a rooted system")
    return Split(lo, hi)


@dataclass(frozen=True)
class SplitSystem:
    """A rooted circular split system; all ``n`` leaf-trivial splits are required."""

    n: int
    splits: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "splits", frozenset(self.splits))
        if self.n < 1:
            raise SplitError("a split system needs at least one leaf")
        for s in self.splits:
            if not isinstance(s, Split):
                raise SplitError(f"not a Split: {s!r}")
            if s.hi > self.n:
                raise SplitError(f"split {s} exceeds n={self.n}")
            if (s.lo, s.hi) == (1, self.n) and self.n > 1:
                raise RootTrivial(f"split {s} is the root's trivial split")
        missing = [i for i in range(1, self.n + 1) if Split(i, i) not in self.splits]
        if missing:
            raise SplitError(f"missing trivial splits for leaves {missing}")

    @classmethod
    def of(cls, n: int, splits: Iterable = ()) -> "SplitSystem":
        """Build a system from splits (``Split`` or ``(lo, hi)`` pairs), adding all trivials."""
        out = {s if isinstance(s, Split) else Split(*s) for s in splits}
        out.update(Split(i, i) for i in range(1, n + 1))
        return cls(n, frozenset(out))

    @classmethod
    def from_sets(cls, n: int, pairs: Iterable) -> "SplitSystem":
        return cls.of(n, [canonicalize(a, b, n) for a, b in pairs])

    @classmethod
    def from_unrooted(cls, order, pairs, root) -> "SplitSystem":
        """Ingest splits on arbitrary taxa circular in ``order``, with ``root`` playing 0.

        The taxa after ``root`` in the cyclic order become leaves ``1..n``.
        The root's own trivial split is dropped.
        """
        order = list(order)
        k = order.index(root)
        relabel = {t: idx for idx, t in enumerate(order[k:] + order[:k])}
        n = len(order) - 1
        out = []
        for a, b in pairs:
            a = {relabel[t] for t in a}
            b = {relabel[t] for t in b}
            try:
                out.append(canonicalize(a, b, n))
            except RootTrivial:
                continue
        return cls.of(n, out)

    def sorted(self) -> list[Split]:
        return sorted(self.splits)

    def nontrivial(self) -> list[Split]:
        return [s for s in self.sorted() if not s.trivial]

    def __contains__(self, s) -> bool:
        return s in self.splits

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.splits)


def complete_system(n: int) -> SplitSystem:
    """KN_n: every interval of 1..n except the whole of 1..n."""
    if n < 2:
        raise SplitError("the complete system needs n >= 2")
    return SplitSystem(n, frozenset(
        Split(i, j) for i in range(1, n + 1) for j in range(i, n + 1) if (i, j) != (1, n)))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a yes/no test plus a witness when the answer is no."""

    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def compatible(s: Split, t: Split) -> bool:
    # outside sides always share the root, so compatibility reduces to nesting/disjointness
    return s.hi < t.lo or t.hi < s.lo or (s.lo <= t.lo and t.hi <= s.hi) or (
        t.lo <= s.lo and s.hi <= t.hi)


def pairwise_compatible(system: SplitSystem) -> CheckResult:
    for s, t in combinations(system.sorted(), 2):
        if not compatible(s, t):
            return CheckResult(False, (s, t))
    return CheckResult(True)


def polygon_diagonals(system: SplitSystem) -> list[tuple[int, int]]:
    """Chords of the dual (n+1)-gon, one per non-trivial split.

    Polygon edge ``e`` runs from vertex ``e`` to vertex ``e+1`` (mod n+1), so
    the split ``[i, j]`` becomes the chord from vertex ``i`` to vertex ``j+1``.
    """
    m = system.n + 1
    return [(s.lo, (s.hi + 1) % m) for s in system.nontrivial()]
