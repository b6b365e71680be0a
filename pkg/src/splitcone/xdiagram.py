"""X-diagrams: tightness and equality indicators on the bordered matrix.

Positions follow the bordered matrix T (rows 0..n, columns 1..n+1).  The
cell (k,l) has corners T(k,l), T(k,l+1), T(k+1,l), T(k+1,l+1); its left and
right sides are g(k,l) and g(k,l+1), its top and bottom h(k,l) and h(k+1,l).
Only sides of facet cells carry g and h values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .cells import cell_value, facet_cells, tilde_entry
from .cone import RayTau
from .metric import DissimilarityMatrix


class InvalidTightSet(ValueError):
    pass


@dataclass(frozen=True)
class TildeMatrix:
    d: DissimilarityMatrix

    @property
    def n(self) -> int:
        return self.d.n

    def defined(self, i: int, j: int) -> bool:
        n = self.n
        return 0 <= i <= n and 1 <= j <= n + 1 and i <= j

    def __getitem__(self, ij):
        return tilde_entry(self.d, *ij)

    def rows(self) -> list[list]:
        """Rows 0..n over columns 1..n+1, ``None`` where undefined."""
        n = self.n
        return [[self[i, j] if self.defined(i, j) else None for j in range(1, n + 2)]
                for i in range(n + 1)]


def tilde(d: DissimilarityMatrix) -> TildeMatrix:
    return TildeMatrix(d)


def f_domain(n: int) -> list[tuple[int, int]]:
    return facet_cells(n)


def g_domain(n: int) -> list[tuple[int, int]]:
    return sorted({p for k, l in facet_cells(n) for p in ((k, l), (k, l + 1))})


def h_domain(n: int) -> list[tuple[int, int]]:
    return sorted({p for k, l in facet_cells(n) for p in ((k, l), (k + 1, l))})


@dataclass(frozen=True)
class XDiagram:
    n: int
    f: Mapping
    g: Mapping
    h: Mapping

    def __post_init__(self):
        for name, dom in (("f", f_domain), ("g", g_domain), ("h", h_domain)):
            got = dict(getattr(self, name))
            if set(got) != set(dom(self.n)):
                extra = sorted(set(got) - set(dom(self.n)))
                missing = sorted(set(dom(self.n)) - set(got))
                raise ValueError(f"{name} domain mismatch: extra {extra[:3]}, missing {missing[:3]}")
            object.__setattr__(self, name, {p: bool(v) for p, v in got.items()})

    @classmethod
    def from_ones(cls, n: int, f=(), g=(), h=()) -> "XDiagram":
        """Diagram with value 1 exactly at the listed positions."""
        maps = []
        for name, ones, dom in (("f", f, f_domain), ("g", g, g_domain), ("h", h, h_domain)):
            ones = {tuple(p) for p in ones}
            bad = ones - set(dom(n))
            if bad:
                raise ValueError(f"{name} has no position {sorted(bad)[0]} when n={n}")
            maps.append({p: p in ones for p in dom(n)})
        return cls(n, *maps)

    def ones(self, name: str) -> list[tuple[int, int]]:
        return sorted(p for p, v in getattr(self, name).items() if v)

    def tight_cells(self) -> list[tuple[int, int]]:
        return self.ones("f")

    def to_json(self) -> dict:
        def enc(m):
            return {f"{i},{j}": int(v) for (i, j), v in sorted(m.items())}
        return {"n": self.n, "f": enc(self.f), "g": enc(self.g), "h": enc(self.h)}


def xdiagram_of(d: DissimilarityMatrix) -> XDiagram:
    if d.n < 3:
        raise ValueError("X-diagrams need n >= 3")
    t = tilde(d)
    n = d.n
    f = {c: cell_value(d, *c) == 0 for c in f_domain(n)}
    g = {(i, j): t[i, j] == t[i + 1, j] for i, j in g_domain(n)}
    h = {(i, j): t[i, j] == t[i, j + 1] for i, j in h_domain(n)}
    return XDiagram(n, f, g, h)


# ---------------------------------------------------------------- rules

@dataclass(frozen=True)
class RuleViolation:
    rule: int
    premises: tuple  # ((map, i, j), ...) all equal to 1
    conclusion: tuple  # (map, i, j), found equal to 0

    def __str__(self):
        prem = ", ".join(f"{m}({i},{j})=1" for m, i, j in self.premises)
        m, i, j = self.conclusion
        return f"rule {self.rule}: {prem} but {m}({i},{j})=0"


def _v(rule, premises, conclusion) -> RuleViolation:
    return RuleViolation(rule, tuple(sorted(premises)), conclusion)


def check_rules(x: XDiagram) -> list[RuleViolation]:
    """Every violation of the four local equality rules; an empty list means none found.

    Passing does not certify that the diagram comes from a point of the cone.
    """
    f, g, h = x.f, x.g, x.h
    out: list[RuleViolation] = []
    for k, l in f_domain(x.n):
        sides = {("g", k, l): g[k, l], ("g", k, l + 1): g[k, l + 1],
                 ("h", k, l): h[k, l], ("h", k + 1, l): h[k + 1, l]}
        pairs = ((("g", k, l), ("g", k, l + 1)), (("h", k, l), ("h", k + 1, l)))
        for a, b in pairs:
            if f[k, l] and sides[a] != sides[b]:
                one, zero = (a, b) if sides[a] else (b, a)
                out.append(_v(1, [("f", k, l), one], zero))
            if not f[k, l] and sides[a] and sides[b]:
                out.append(_v(2, [a, b], ("f", k, l)))
        zeros = [s for s, v in sides.items() if not v]
        if len(zeros) == 1:
            out.append(_v(4, [s for s, v in sides.items() if v], zeros[0]))
    for (i, j), v in sorted(g.items()):
        if v and j > i and g.get((i, j + 1)) is False:
            out.append(_v(3, [("g", i, j)], ("g", i, j + 1)))
    for (i, j), v in sorted(h.items()):
        if v and j >= i >= 1 and h.get((i - 1, j)) is False:
            out.append(_v(3, [("h", i, j)], ("h", i - 1, j)))
    out.sort(key=lambda r: (r.rule, r.premises, r.conclusion))
    return out


# ---------------------------------------------------------------- staircase

def ray_for_tight_set(x: XDiagram) -> Optional[RayTau]:
    """A ray whose vector is tight on every tight cell of ``x``.

    r_tau is strictly positive exactly on the cells (a-1, b) of its blocks
    [a, b], so we look for a composition whose blocks avoid tight cells,
    preferring the shortest next block.  Returns ``None`` when every cell is
    tight (only the apex qualifies).
    """
    n = x.n
    if all(x.f.values()):
        return None
    f = x.f
    dead: set[int] = set()

    def walk(a: int):
        if a > n:
            return []
        if a in dead:
            return None
        for b in range(a, n + 1):
            if (a, b) == (1, n) or f.get((a - 1, b), False):
                continue
            rest = walk(b + 1)
            if rest is not None:
                return [(a, b)] + rest
        dead.add(a)
        return None

    blocks = walk(1)
    if blocks is None:
        raise InvalidTightSet("no composition avoids every tight cell")
    return RayTau.from_blocks(blocks)


def staircase(tau: RayTau) -> list[tuple[int, int]]:
    """For each row i of the bordered matrix, the first column holding a 1 in r_tau."""
    ends = {}
    for a, b in tau.blocks():
        for i in range(a, b + 1):
            ends[i] = b
    return [(0, 1)] + [(i, ends[i] + 1) for i in range(1, tau.n + 1)]


# ---------------------------------------------------------------- drawing

def render_ascii(x: XDiagram) -> str:
    n = x.n
    corners = {p for k, l in f_domain(n)
               for p in ((k, l), (k, l + 1), (k + 1, l), (k + 1, l + 1))}
    lines = []
    for i in range(n + 1):
        row = []
        for j in range(1, n + 2):
            row.append("o" if (i, j) in corners else " ")
            if j <= n:
                row.append("---" if x.h.get((i, j)) else "   ")
        lines.append("".join(row).rstrip())
        if i == n:
            break
        row = []
        for j in range(1, n + 2):
            row.append("|" if x.g.get((i, j)) else " ")
            if j <= n:
                mark = x.f.get((i, j))
                row.append("   " if mark is None else (" X " if mark else " . "))
        lines.append("".join(row).rstrip())
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines) + "\n"
