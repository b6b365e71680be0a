"""Command-line front end.

Exit status: 0 on success, 1 when the answer is "no" (a failed test, a
point outside the cone, a rule violation), 2 on unusable input.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import cone, cry, metric, netviz, xdiagram
from .io import (InputError, cry_to_json, fmt, load_cry, load_diagram_or_matrix, load_matrix,
                 load_system, matrix_to_json, parse_order, rat_json, system_to_json, tau_to_json)
from .metric import DissimilarityMatrix, pairs
from .splits import SplitError


@dataclass
class Result:
    """One command's answer in all three output shapes."""

    data: object
    text: str
    rows: list = field(default_factory=list)  # csv rows, header first
    code: int = 0


def _render(res: Result, form: str) -> str:
    if form == "json":
        return json.dumps(res.data, indent=2) + "\n"
    if form == "csv":
        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in res.rows or [[res.text.strip()]]:
            writer.writerow(row)
        return buf.getvalue()
    return res.text if res.text.endswith("\n") else res.text + "\n"


def _matrix_text(d: DissimilarityMatrix) -> str:
    rows = []
    for i in range(1, d.n + 1):
        rows.append(" ".join(fmt(d[i, j]) for j in range(i + 1, d.n + 1)))
    return "\n".join(r for r in rows if r)


def _matrix_rows(d: DissimilarityMatrix) -> list:
    return [["i", "j", "value"]] + [[i, j, fmt(d[i, j])] for i, j in pairs(d.n)]


def _witness_json(w):
    if isinstance(w, metric.QuadrupleWitness):
        return {"quad": list(w.quad), "sums": [rat_json(s) for s in w.sums]}
    if isinstance(w, Fraction):
        return rat_json(w)
    if isinstance(w, tuple):
        return [_witness_json(x) for x in w]
    return w


def _witness_text(w) -> str:
    if isinstance(w, metric.QuadrupleWitness):
        return f"quadruple {w.quad}: sums " + ", ".join(fmt(s) for s in w.sums)
    if isinstance(w, tuple):
        return " ".join(_witness_text(x) for x in w)
    if isinstance(w, Fraction):
        return fmt(w)
    return str(w)


def _check(res: metric.CheckResult, label: str) -> Result:
    data = {"test": label, "result": res.ok}
    text = "true" if res.ok else "false"
    if res.witness is not None:
        data["witness"] = _witness_json(res.witness)
        text += "\n" + ("value: " if res.ok else "witness: ") + _witness_text(res.witness)
    return Result(data, text, [["test", "result"], [label, str(res.ok).lower()]], 0 if res.ok else 1)


# ---------------------------------------------------------------- handlers

def cmd_classify(a) -> Result:
    if a.test == "equidistant":
        system, w = load_system(a.input)
        if w is None:
            raise InputError(f"{a.input}: field 'weights' is required for the equidistant test")
        return _check(metric.check_equidistant(system, w), "equidistant")
    d = load_matrix(a.input)
    if a.test == "four-point":
        return _check(metric.check_four_point(d), a.test)
    if a.test == "kalmanson":
        if a.exhaustive_orderings and d.n > metric.MAX_EXHAUSTIVE_N:
            raise InputError(f"--exhaustive-orderings supports n <= {metric.MAX_EXHAUSTIVE_N}")
        return _check(metric.check_kalmanson(d, exhaustive=a.exhaustive_orderings), a.test)
    return _check(metric.check_metric(d), a.test)


def cmd_matrix(a) -> Result:
    system, w = load_system(a.input)
    if w is None:
        raise InputError(f"{a.input}: field 'weights' is required")
    d, root = metric.full_matrix(system, w)
    data = matrix_to_json(d)
    data["root"] = [fmt(r) for r in root]
    text = _matrix_text(d) + "\nroot: " + " ".join(fmt(r) for r in root)
    rows = _matrix_rows(d) + [[0, i, fmt(r)] for i, r in enumerate(root, 1)]
    return Result(data, text, rows)


def cmd_weights(a) -> Result:
    d = load_matrix(a.input)
    w = cone.recover_weights(d)
    splits = w.system.sorted()
    data = {"n": d.n, "weights": [{"split": [s.lo, s.hi], "weight": rat_json(w[s])} for s in splits]}
    text = "\n".join(f"{s} {s.label(d.n)} {fmt(w[s])}" for s in splits)
    rows = [["lo", "hi", "weight"]] + [[s.lo, s.hi, fmt(w[s])] for s in splits]
    return Result(data, text, rows, 0 if w.is_nonnegative() else 1)


def cmd_facets(a) -> Result:
    fs = cone.facets(_need_n(a))
    return Result([f.to_json() for f in fs],
                  "\n".join(f"{f.name()}: {f.inequality()}  [{f.split}]" for f in fs),
                  [["kind", "i", "j", "lo", "hi"]] +
                  [[f.kind, f.i, "" if f.j is None else f.j, f.split.lo, f.split.hi] for f in fs])


def cmd_rays(a) -> Result:
    rays = cone.all_rays(_need_n(a))
    return Result([tau_to_json(t) for t in rays], "\n".join(str(t) for t in rays),
                  [["tau", "cuts"]] + [[str(t), " ".join(map(str, t.cuts))] for t in rays])


def cmd_membership(a) -> Result:
    d = load_matrix(a.input)
    system = load_system(a.system)[0] if a.system else None
    m = cone.membership(d, system)
    data = {"status": m.status}
    text = m.status
    if m.system is not None:
        data["system"] = system_to_json(m.system)
        text += "\nsplits: " + " ".join(str(s) for s in m.system.nontrivial())
    if m.violations:
        data["violations"] = [{"constraint": v.constraint, "value": rat_json(v.value)}
                              for v in m.violations]
        text += "\n" + "\n".join(f"violated: {v}" for v in m.violations)
    return Result(data, text, [["status"], [m.status]], 0 if m.inside else 1)


def cmd_decompose(a) -> Result:
    d = load_matrix(a.input)
    try:
        terms = cone.decompose(d)
    except cone.NotInCone as e:
        return Result({"error": str(e)}, f"not in cone: {e}", [], 1)
    data = [{"coeff": fmt(lam), "tau": tau_to_json(t)} for lam, t in terms]
    return Result(data, "\n".join(f"{fmt(lam)} * r[{t}]" for lam, t in terms),
                  [["coeff", "tau"]] + [[fmt(lam), str(t)] for lam, t in terms])


def cmd_face(a) -> Result:
    system, _ = load_system(a.input)
    rays = cone.rays_of_face(system)
    return Result([tau_to_json(t) for t in rays], "\n".join(str(t) for t in rays),
                  [["tau"]] + [[str(t)] for t in rays])


def _diagram(a):
    obj = load_diagram_or_matrix(a.input)
    return obj if isinstance(obj, xdiagram.XDiagram) else xdiagram.xdiagram_of(obj), obj


def cmd_xdiagram(a) -> Result:
    x, src = _diagram(a)
    if a.action == "show":
        data = x.to_json()
        text = xdiagram.render_ascii(x)
        if isinstance(src, DissimilarityMatrix):
            t = xdiagram.tilde(src)
            data["tilde"] = [[None if v is None else fmt(v) for v in row] for row in t.rows()]
        return Result(data, text, [["map", "i", "j", "value"]] + [
            [m, i, j, int(v)] for m in "fgh" for (i, j), v in sorted(getattr(x, m).items())])
    if a.action == "check":
        found = xdiagram.check_rules(x)
        data = [{"rule": v.rule, "premises": [list(p) for p in v.premises],
                 "conclusion": list(v.conclusion)} for v in found]
        text = "no violation found" if not found else "\n".join(str(v) for v in found)
        return Result(data, text, [["rule", "violation"]] + [[v.rule, str(v)] for v in found],
                      1 if found else 0)
    try:
        tau = xdiagram.ray_for_tight_set(x)
    except xdiagram.InvalidTightSet as e:
        return Result({"error": str(e)}, f"invalid tight set: {e}", [], 1)
    if tau is None:
        return Result({"tau": None}, "apex (zero vector)", [["tau"], ["apex"]])
    r = cone.ray_vector(tau)
    return Result({"tau": tau_to_json(tau), "ray": matrix_to_json(r)},
                  f"{tau}\n{_matrix_text(r)}", [["tau"], [str(tau)]])


def cmd_cry(a) -> Result:
    if a.action == "phi":
        x = load_cry(a.input)
        bad = x.violations()
        if bad:
            return Result({"violations": bad}, "\n".join(bad), [], 1)
        d = cry.phi(x)
        return Result(matrix_to_json(d), _matrix_text(d), _matrix_rows(d))
    if a.action == "psi":
        d = load_matrix(a.input)
        try:
            x = cry.psi(d)
        except cry.NotInPolytope as e:
            return Result({"error": str(e)}, f"not in PEDC: {e}", [], 1)
        return Result(cry_to_json(x), "\n".join(" ".join(fmt(v) for v in row) for row in x.x),
                      [[fmt(v) for v in row] for row in x.x])
    n = _need_n(a)
    if a.action == "vertices":
        if a.side == "pedc":
            vs = cry.pedc_vertices(n)
            return Result([matrix_to_json(v) for v in vs],
                          "\n\n".join(_matrix_text(v) for v in vs), [])
        vs = cry.cry_vertices(n)
        return Result([cry_to_json(v) for v in vs],
                      "\n\n".join("\n".join(" ".join(fmt(e) for e in row) for row in v.x) for v in vs),
                      [])
    if a.action == "volume":
        vol = cry.normalized_volume(n)
        return Result(rat_json(vol), fmt(vol), [["n", "volume"], [n, fmt(vol)]])
    # ehrhart
    if a.dilation is not None:
        c = cry.count_lattice_points(n, a.dilation)
        return Result({"n": n, "t": a.dilation, "count": c}, str(c),
                      [["n", "t", "count"], [n, a.dilation, c]])
    poly = cry.ehrhart_polynomial(n)
    return Result([rat_json(c) for c in poly],
                  " + ".join(f"{fmt(c)}*t^{k}" for k, c in enumerate(poly) if c),
                  [["power", "coeff"]] + [[k, fmt(c)] for k, c in enumerate(poly)])


def cmd_net(a) -> Result:
    system, w = load_system(a.input)
    if a.action == "render-polygon":
        svg = netviz.render_polygon(system, w)
        return Result({"svg": svg}, svg, [])
    order = parse_order(a.order) if a.order else None
    try:
        g = netviz.build_network(system, order)
    except netviz.NetworkError as e:
        raise InputError(f"{a.input}: {e}") from None
    if a.action == "render-graph":
        dot = netviz.render_network(g)
        return Result({"dot": dot}, dot, [])
    if a.action == "verify":
        return _check(netviz.verify_split_graph(g), "split-graph")
    edges = [[u, v, lab.lo, lab.hi] for u, v, lab in g.edges]
    return Result({"n": g.n, "edges": edges, "tree": g.is_tree()},
                  "\n".join(f"{u} -- {v} {lab}" for u, v, lab in g.edges),
                  [["u", "v", "lo", "hi"]] + edges)


def _need_n(a) -> int:
    if a.n is None:
        raise InputError("--n is required for this command")
    if a.n < 1:
        raise InputError("--n must be positive")
    return a.n


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--n", type=int)

    def with_input(p, required=True):
        p.add_argument("path", nargs="?", help="input file")
        p.add_argument("--input", dest="input_flag", help="input file (same as the positional)")
        p.set_defaults(needs_input=required)

    parser = argparse.ArgumentParser(prog="splitcone",
                                     description="Equidistant circular split networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="four-point, Kalmanson, metric or equidistant test")
    p.add_argument("test", choices=("four-point", "kalmanson", "metric", "equidistant"))
    p.add_argument("--exhaustive-orderings", action="store_true")
    with_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("matrix", parents=[common], help="distances from a weighted split system")
    with_input(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("weights", parents=[common], help="recover split weights from a matrix")
    with_input(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("facets", parents=[common], help="facet inequalities of EDC(KN_n)")
    p.set_defaults(func=cmd_facets, needs_input=False)

    p = sub.add_parser("rays", parents=[common], help="extreme rays of EDC(KN_n)")
    p.set_defaults(func=cmd_rays, needs_input=False)

    p = sub.add_parser("membership", parents=[common], help="locate a matrix in the cone")
    p.add_argument("--system", help="split system file restricting the face")
    with_input(p)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("decompose", parents=[common], help="write a cone point as a sum of rays")
    with_input(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("face", parents=[common], help="extreme rays of the face of a split system")
    with_input(p)
    p.set_defaults(func=cmd_face)

    p = sub.add_parser("xdiagram", parents=[common], help="X-diagram tools")
    p.add_argument("action", choices=("show", "check", "ray"))
    with_input(p)
    p.set_defaults(func=cmd_xdiagram)

    p = sub.add_parser("cry", parents=[common], help="CRY_n / PEDC_n tools")
    p.add_argument("action", choices=("phi", "psi", "vertices", "volume", "ehrhart"))
    p.add_argument("--side", choices=("cry", "pedc"), default="cry")
    p.add_argument("--dilation", type=int)
    with_input(p, required=False)
    p.set_defaults(func=cmd_cry)

    p = sub.add_parser("net", parents=[common], help="split network construction and drawing")
    p.add_argument("action", choices=("build", "verify", "render-polygon", "render-graph"))
    p.add_argument("--order", help="split order, e.g. '1-3,3-5,2-4'")
    with_input(p)
    p.set_defaults(func=cmd_net)
    return parser


def _threads() -> int:
    raw = os.environ.get("SPLITCONE_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"SPLITCONE_THREADS: expected a positive integer, got {raw!r}") from None
    if value < 1:
        raise InputError(f"SPLITCONE_THREADS: expected a positive integer, got {raw!r}")
    return value


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        a, extra = parser.parse_known_args(argv)
        # argparse fills "path" together with the preceding positional, so a path
        # written after an option lands here
        if (len(extra) == 1 and not extra[0].startswith("-") and hasattr(a, "path")
                and a.path is None):
            a.path = extra[0]
        elif extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        _threads()
        path = getattr(a, "path", None) or getattr(a, "input_flag", None)
        a.input = path
        if getattr(a, "needs_input", False) and not path:
            raise InputError(f"{a.command}: an input file is required")
        if a.command == "cry" and a.action in ("phi", "psi") and not path:
            raise InputError(f"cry {a.action}: an input file is required")
        res = a.func(a)
    except InputError as e:
        err.write(f"error: {e}\n")
        return 2
    except (cone.TooSmall, cry.TooLarge, SplitError, ValueError) as e:
        err.write(f"error: {e}\n")
        return 2
    out.write(_render(res, a.format))
    return res.code


def main() -> None:
    sys.exit(run())
