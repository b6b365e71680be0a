"""Split-network graphs built by the circular network algorithm, plus DOT/SVG output."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .metric import WeightVector
from .splits import CheckResult, Split, SplitSystem, polygon_diagonals


class NetworkError(ValueError):
    pass


@dataclass
class SplitNetworkGraph:
    """Vertices are ints; taxon t sits on vertex t.  Edge labels are Splits.

    The root pendant edge carries ``Split(1, n)``, i.e. the split ``0 | 1..n``.
    """

    n: int
    edges: list = field(default_factory=list)  # (u, v, Split) with u < v
    next_vertex: int = 0

    @classmethod
    def star(cls, n: int) -> "SplitNetworkGraph":
        hub = n + 1
        g = cls(n, [], hub + 1)
        g.edges.append((0, hub, Split(1, n)))
        for t in range(1, n + 1):
            g.edges.append((t, hub, Split(t, t)))
        return g

    def new_vertex(self) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        return v

    def add_edge(self, u: int, v: int, label: Split):
        self.edges.append((min(u, v), max(u, v), label))

    def vertices(self) -> list[int]:
        return sorted({x for u, v, _ in self.edges for x in (u, v)} | set(range(self.n + 1)))

    def adjacency(self, skip: Optional[Split] = None) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices()}
        for u, v, lab in self.edges:
            if lab != skip:
                adj[u].append(v)
                adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def labels(self) -> list[Split]:
        return sorted({lab for _, _, lab in self.edges})

    def classes(self) -> dict[Split, list[tuple[int, int]]]:
        out: dict[Split, list] = {}
        for u, v, lab in self.edges:
            out.setdefault(lab, []).append((u, v))
        return {k: sorted(v) for k, v in sorted(out.items())}

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices()) - 1 and _connected(self.adjacency())

    def canonical(self) -> tuple:
        """Isomorphism-invariant fingerprint (labels fixed, internal vertices anonymous)."""
        adj: dict[int, list] = {v: [] for v in self.vertices()}
        for u, v, lab in self.edges:
            adj[u].append((lab, v))
            adj[v].append((lab, u))
        # vertices are determined by their side of every split class
        sig = {}
        comps = {lab: _components(self.adjacency(skip=lab)) for lab in self.labels()}
        for v in adj:
            sig[v] = tuple(0 in comps[lab][v] for lab in self.labels())
        return tuple(sorted((lab, tuple(sorted((sig[u], sig[v])))) for u, v, lab in self.edges))


def _connected(adj) -> bool:
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _components(adj) -> dict[int, frozenset]:
    """Map every vertex to its component's vertex set."""
    out: dict[int, frozenset] = {}
    for s in adj:
        if s in out:
            continue
        comp = {s}
        stack = [s]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        fz = frozenset(comp)
        for v in comp:
            out[v] = fz
    return out


def _sides(g: SplitNetworkGraph) -> dict[Split, dict[int, bool]]:
    """For every label class, which vertices fall on the side holding the root."""
    out = {}
    for lab in g.labels():
        comp = _components(g.adjacency(skip=lab))
        root_side = comp[0]
        out[lab] = {v: v in root_side for v in comp}
    return out


def _hull(g: SplitNetworkGraph, sides, leaves: set) -> set:
    """Convex hull of a leaf set: vertices on a side containing some of those leaves for every class."""
    hull = set(g.vertices())
    for lab, side in sides.items():
        marks = {side[t] for t in leaves}
        if len(marks) == 1:
            (mark,) = marks
            hull = {v for v in hull if side[v] == mark}
    return hull


def _apply_split(g: SplitNetworkGraph, s: Split):
    """Convex expansion: duplicate the vertices shared by both sides' hulls."""
    inside = set(range(s.lo, s.hi + 1))
    outside = set(range(g.n + 1)) - inside
    sides = _sides(g)
    hull_a, hull_b = _hull(g, sides, inside), _hull(g, sides, outside)
    shared = sorted(hull_a & hull_b)
    if not shared:
        raise NetworkError(f"split {s} does not meet the current network")
    copies = {u: g.new_vertex() for u in shared}
    new_edges = []
    for u, v, lab in g.edges:
        if u in copies and v in copies:
            new_edges.append((u, v, lab))
            new_edges.append((min(copies[u], copies[v]), max(copies[u], copies[v]), lab))
            continue
        moved = (u, v, lab)
        for end, other in ((u, v), (v, u)):
            if end in copies:
                if other in hull_a:
                    continue
                if other not in hull_b:
                    raise NetworkError(f"edge {end}-{other} lies in neither hull of {s}")
                c = copies[end]
                moved = (min(c, other), max(c, other), lab)
        new_edges.append(moved)
    for u in shared:
        new_edges.append((min(u, copies[u]), max(u, copies[u]), s))
    g.edges = new_edges


def build_network(sys: SplitSystem, order: Iterable | None = None) -> SplitNetworkGraph:
    """Circular network algorithm; ``order`` defaults to lexicographic intervals."""
    nontrivial = sys.nontrivial()
    if order is None:
        order = nontrivial
    order = [s if isinstance(s, Split) else Split(*s) for s in order]
    if sorted(order) != nontrivial:
        raise NetworkError("order must list every non-trivial split of the system exactly once")
    g = SplitNetworkGraph.star(sys.n)
    for s in order:
        _apply_split(g, s)
    return g


def verify_split_graph(g: SplitNetworkGraph) -> CheckResult:
    """Each label class must cut the graph into two parts whose leaves realize the label."""
    if not _connected(g.adjacency()):
        return CheckResult(False, ("disconnected", None))
    for lab in g.labels():
        comps = set(_components(g.adjacency(skip=lab)).values())
        if len(comps) != 2:
            return CheckResult(False, (lab, f"{len(comps)} components"))
        inside = frozenset(range(lab.lo, lab.hi + 1))
        sides = {frozenset(t for t in c if t <= g.n) for c in comps}
        outside = frozenset(range(g.n + 1)) - inside
        if sides != {inside, outside}:
            return CheckResult(False, (lab, "leaf sides do not match"))
    return CheckResult(True)


def path_distance(g: SplitNetworkGraph, w: WeightVector, i: int, j: int) -> Fraction:
    """Weighted shortest path; the root pendant has weight zero."""
    def weight(lab):
        return w.weights.get(lab, Fraction(0))
    adj: dict[int, list] = {v: [] for v in g.vertices()}
    for u, v, lab in g.edges:
        adj[u].append((v, weight(lab)))
        adj[v].append((u, weight(lab)))
    best = {i: Fraction(0)}
    heap = [(Fraction(0), i)]
    while heap:
        du, u = heapq.heappop(heap)
        if u == j:
            return du
        if du > best[u]:
            continue
        for v, c in adj[u]:
            if v not in best or du + c < best[v]:
                best[v] = du + c
                heapq.heappush(heap, (du + c, v))
    raise NetworkError(f"no path between {i} and {j}")


# ---------------------------------------------------------------- output

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
           "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def render_network(g: SplitNetworkGraph) -> str:
    """Graphviz DOT; edges of one split share a color, the root leaf is boxed."""
    nontrivial = [lab for lab in g.labels() if lab.lo != lab.hi and (lab.lo, lab.hi) != (1, g.n)]
    color = {lab: PALETTE[k % len(PALETTE)] for k, lab in enumerate(nontrivial)}
    out = ["graph splitnetwork {", "  node [shape=point];"]
    out.append('  0 [shape=box, label="0", root=true];')
    for t in range(1, g.n + 1):
        out.append(f'  {t} [shape=plaintext, label="{t}"];')
    for u, v, lab in sorted(g.edges, key=lambda e: (e[2], e[0], e[1])):
        attrs = f'label="{lab.label(g.n)}"'
        if lab in color:
            attrs += f', color="{color[lab]}"'
        out.append(f"  {u} -- {v} [{attrs}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def render_polygon(sys: SplitSystem, w: WeightVector | None = None, size: int = 320) -> str:
    """SVG of the dual (n+1)-gon: vertex 0 on top, clockwise, edge e joins vertices e and e+1."""
    m = sys.n + 1
    c, r = size / 2, size / 2 - 40
    pts = [(c + r * math.sin(2 * math.pi * k / m), c - r * math.cos(2 * math.pi * k / m))
           for k in range(m)]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    poly = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
    out.append(f'  <polygon points="{poly}" fill="none" stroke="black"/>')
    for e in range(m):
        (x1, y1), (x2, y2) = pts[e], pts[(e + 1) % m]
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        lx, ly = c + (mx - c) * 1.15, c + (my - c) * 1.15
        out.append(f'  <text class="edge" x="{_fmt(lx)}" y="{_fmt(ly)}" '
                   f'text-anchor="middle">{e}</text>')
    for k, (x, y) in enumerate(pts):
        out.append(f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"/>')
        out.append(f'  <text class="vertex" x="{_fmt(c + (x - c) * 1.3)}" '
                   f'y="{_fmt(c + (y - c) * 1.3)}" text-anchor="middle" fill="gray">v{k}</text>')
    chords = polygon_diagonals(sys)
    for s, (a, b) in zip(sys.nontrivial(), chords):
        (x1, y1), (x2, y2) = pts[a], pts[b]
        out.append(f'  <line class="chord" data-split="{s.lo},{s.hi}" x1="{_fmt(x1)}" '
                   f'y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="steelblue"/>')
        if w is not None:
            out.append(f'  <text class="weight" x="{_fmt((x1 + x2) / 2)}" '
                       f'y="{_fmt((y1 + y2) / 2)}">{w[s]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
