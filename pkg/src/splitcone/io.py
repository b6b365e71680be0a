"""File formats: matrices (CSV/JSON), split systems, CRY matrices, X-diagrams."""
from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from pathlib import Path

from .cone import RayTau
from .cry import CRYMatrix
from .metric import DissimilarityMatrix, WeightVector, pairs, to_fraction
from .splits import Split, SplitError, SplitSystem
from .xdiagram import XDiagram


class InputError(ValueError):
    """A malformed input; the message names the file and the line or field."""


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rat_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def _rat(value, where: str) -> Fraction:
    try:
        return to_fraction(value)
    except (ValueError, TypeError, ZeroDivisionError, KeyError):
        raise InputError(f"{where}: not a rational number: {value!r}") from None


def _read(path) -> tuple[str, str]:
    name = str(path)
    try:
        return name, Path(path).read_text()
    except OSError as e:
        raise InputError(f"{name}: cannot read file ({e.strerror})") from None


def _load_json(name: str, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{name}:{e.lineno}: invalid JSON ({e.msg})") from None


def _field(obj, key, name):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{name}: missing field '{key}'")
    return obj[key]


def _int_field(obj, key, name) -> int:
    v = _field(obj, key, name)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"{name}: field '{key}' must be an integer")
    return v


# ---------------------------------------------------------------- matrices

def matrix_from_json(obj, name: str = "<json>") -> DissimilarityMatrix:
    n = _int_field(obj, "n", name)
    delta = _field(obj, "delta", name)
    if not isinstance(delta, dict):
        raise InputError(f"{name}: field 'delta' must be an object")
    values = {}
    for key, v in delta.items():
        try:
            i, j = (int(p) for p in key.split(","))
        except ValueError:
            raise InputError(f"{name}: field delta[{key!r}]: key must look like 'i,j'") from None
        if not (1 <= min(i, j) and max(i, j) <= n and i != j):
            raise InputError(f"{name}: field delta[{key!r}]: index out of range for n={n}")
        values[(i, j)] = _rat(v, f"{name}: field delta[{key!r}]")
    try:
        return DissimilarityMatrix.from_dict(n, values)
    except ValueError as e:
        raise InputError(f"{name}: field 'delta': {e}") from None


def matrix_to_json(d: DissimilarityMatrix) -> dict:
    return {"n": d.n, "delta": {f"{i},{j}": fmt(d[i, j]) for i, j in pairs(d.n)}}


def _csv_rows(name: str, text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for lineno, row in enumerate(csv.reader(_io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        while cells and cells[-1] == "":
            cells.pop()
        if cells and not cells[0].startswith("#"):
            rows.append((lineno, cells))
    return rows


def _is_header(cells: list[str]) -> bool:
    def num(c):
        try:
            Fraction(c)
            return True
        except ValueError:
            return c == ""
    return not all(num(c) for c in cells)


def matrix_from_csv(text: str, name: str = "<csv>") -> DissimilarityMatrix:
    """Full symmetric matrix or strict upper triangle; one optional header row.

    In the upper-triangular form, row i lists d(i,i+1..n); blank leading
    cells (for aligned layouts) are ignored.
    """
    rows = _csv_rows(name, text)
    if rows and _is_header(rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise InputError(f"{name}: no matrix rows found")
    parsed = []
    for lineno, cells in rows:
        vals = []
        for k, c in enumerate(cells, start=1):
            if c == "":
                vals.append(None)
                continue
            vals.append(_rat(c, f"{name}:{lineno}: field {k}"))
        parsed.append((lineno, vals))
    square = len(parsed) > 1 and all(len(v) == len(parsed) and None not in v for _, v in parsed)
    try:
        if square:
            return DissimilarityMatrix.from_rows([v for _, v in parsed])
        tri = [[v for v in vals if v is not None] for _, vals in parsed]
        m = len(tri)
        with_diag = (m > 1 and all(len(r) == m - i for i, r in enumerate(tri))
                     and all(r[0] == 0 for r in tri))
        if with_diag:
            # rows written with their zero diagonal entry; the last row is just "0"
            parsed, tri = parsed[:-1], [r[1:] for r in tri[:-1]]
        for (lineno, _), r, i in zip(parsed, tri, range(len(tri))):
            if len(r) != len(tri) - i:
                raise InputError(f"{name}:{lineno}: expected {len(tri) - i} values, found {len(r)}")
        return DissimilarityMatrix.from_rows(tri)
    except InputError:
        raise
    except ValueError as e:
        raise InputError(f"{name}: {e}") from None


def load_matrix(path) -> DissimilarityMatrix:
    name, text = _read(path)
    if text.lstrip().startswith("{"):
        return matrix_from_json(_load_json(name, text), name)
    return matrix_from_csv(text, name)


# ---------------------------------------------------------------- split systems

def _split(entry, where: str) -> Split:
    if (not isinstance(entry, list) or len(entry) < 2
            or not all(isinstance(x, int) for x in entry[:2])):
        raise InputError(f"{where}: expected [lo, hi]")
    try:
        return Split(entry[0], entry[1])
    except SplitError as e:
        raise InputError(f"{where}: {e}") from None


def system_from_json(obj, name: str = "<json>") -> tuple[SplitSystem, WeightVector | None]:
    """``{"n", "splits": [[lo,hi],...]}`` or ``"splits_sets"``; optional ``"weights"``.

    Weights are ``[[lo, hi, value], ...]``; trivial splits are added when missing.
    """
    n = _int_field(obj, "n", name)
    try:
        if "splits" in obj:
            raw = obj["splits"]
            if not isinstance(raw, list):
                raise InputError(f"{name}: field 'splits' must be a list")
            splits = [_split(e, f"{name}: field splits[{k}]") for k, e in enumerate(raw)]
            sys = SplitSystem.of(n, splits)
        elif "splits_sets" in obj:
            raw = obj["splits_sets"]
            out = []
            for k, e in enumerate(raw):
                if not (isinstance(e, list) and len(e) == 2):
                    raise InputError(f"{name}: field splits_sets[{k}]: expected [sideA, sideB]")
                try:
                    out.append((set(e[0]), set(e[1])))
                except TypeError:
                    raise InputError(f"{name}: field splits_sets[{k}]: sides must be lists") from None
            sys = SplitSystem.from_sets(n, out) if "root" not in obj else SplitSystem.from_unrooted(
                obj.get("order", list(range(n + 1))), out, obj["root"])
        else:
            raise InputError(f"{name}: missing field 'splits' (or 'splits_sets')")
    except SplitError as e:
        raise InputError(f"{name}: {e}") from None
    weights = None
    if "weights" in obj:
        w = {}
        for k, e in enumerate(obj["weights"]):
            where = f"{name}: field weights[{k}]"
            if not (isinstance(e, list) and len(e) == 3):
                raise InputError(f"{where}: expected [lo, hi, value]")
            s = _split(e[:2], where)
            if s not in sys:
                raise InputError(f"{where}: split {s} is not in the system")
            w[s] = _rat(e[2], where)
            if w[s] < 0:
                raise InputError(f"{where}: weights must be nonnegative")
        weights = WeightVector(sys, w)
    return sys, weights


def system_to_json(sys: SplitSystem, w: WeightVector | None = None) -> dict:
    out = {"n": sys.n, "splits": [[s.lo, s.hi] for s in sys.sorted()]}
    if w is not None:
        out["weights"] = [[s.lo, s.hi, fmt(w[s])] for s in sys.sorted()]
    return out


def load_system(path):
    name, text = _read(path)
    return system_from_json(_load_json(name, text), name)


def parse_order(text: str) -> list[Split]:
    """``"1-2,2-5"`` or ``"[1,2];[2,5]"`` style lists of intervals."""
    out = []
    cleaned = text.replace("[", " ").replace("]", ";").replace(";", " ").replace(",", " ")
    toks = cleaned.split()
    for k, tok in enumerate(toks):
        if "-" in tok:
            a, b = tok.split("-", 1)
            try:
                out.append(Split(int(a), int(b)))
            except (ValueError, SplitError):
                raise InputError(f"--order: item {k + 1}: bad interval {tok!r}") from None
    if not out:
        # plain pairs "1 2 2 5"
        if len(toks) % 2:
            raise InputError("--order: expected pairs lo-hi")
        try:
            out = [Split(int(toks[i]), int(toks[i + 1])) for i in range(0, len(toks), 2)]
        except (ValueError, SplitError):
            raise InputError(f"--order: cannot parse {text!r}") from None
    return out


# ---------------------------------------------------------------- other objects

def cry_from_json(obj, name: str = "<json>") -> CRYMatrix:
    x = _field(obj, "x", name)
    n = obj.get("n", len(x) if isinstance(x, list) else 0)
    if not isinstance(x, list) or len(x) != n:
        raise InputError(f"{name}: field 'x' must be a list of {n} rows")
    rows = []
    for i, r in enumerate(x):
        if not isinstance(r, list) or len(r) != n:
            raise InputError(f"{name}: field x[{i}]: expected {n} entries")
        rows.append([_rat(v, f"{name}: field x[{i}][{j}]") for j, v in enumerate(r)])
    return CRYMatrix(n, tuple(tuple(r) for r in rows))


def load_cry(path) -> CRYMatrix:
    name, text = _read(path)
    if text.lstrip().startswith("{"):
        return cry_from_json(_load_json(name, text), name)
    rows = []
    for lineno, cells in _csv_rows(name, text):
        rows.append([_rat(c, f"{name}:{lineno}: field {k}") for k, c in enumerate(cells, 1)])
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError(f"{name}: expected a square matrix")
    return CRYMatrix(len(rows), tuple(tuple(r) for r in rows))


def cry_to_json(x: CRYMatrix) -> dict:
    return {"n": x.n, "x": [[fmt(v) for v in row] for row in x.x]}


def diagram_from_json(obj, name: str = "<json>") -> XDiagram:
    """Either full maps ``{"f": {"k,l": 0|1}, ...}`` or ``{"f_ones": [[k,l],...], ...}``."""
    n = _int_field(obj, "n", name)
    try:
        if "f_ones" in obj or "g_ones" in obj or "h_ones" in obj:
            return XDiagram.from_ones(n, obj.get("f_ones", []), obj.get("g_ones", []),
                                      obj.get("h_ones", []))
        maps = []
        for key in ("f", "g", "h"):
            raw = _field(obj, key, name)
            m = {}
            for pos, v in raw.items():
                try:
                    i, j = (int(p) for p in pos.split(","))
                except ValueError:
                    raise InputError(f"{name}: field {key}[{pos!r}]: key must look like 'i,j'") from None
                m[(i, j)] = bool(v)
            maps.append(m)
        return XDiagram(n, *maps)
    except InputError:
        raise
    except (ValueError, TypeError) as e:
        raise InputError(f"{name}: {e}") from None


def load_diagram_or_matrix(path):
    """X-diagram JSON (has "f"/"f_ones") or any matrix file."""
    name, text = _read(path)
    if text.lstrip().startswith("{"):
        obj = _load_json(name, text)
        if isinstance(obj, dict) and ("f" in obj or "f_ones" in obj):
            return diagram_from_json(obj, name)
        return matrix_from_json(obj, name)
    return matrix_from_csv(text, name)


def tau_to_json(t: RayTau) -> list[int]:
    return list(t.cuts)
