"""Problem ingestion (JSON, CSV), report rendering, graph files and DOT export."""
from __future__ import annotations

import csv
import io
import json
from typing import Any

import numpy as np

from .core import GreyInterval, GreyNumber, from_interval, to_interval
from .graph import GraphError, GreyGraph, build
from .madm import (
    Attribute,
    DecisionProblem,
    GreyArray,
    NormalizedMatrix,
    ProblemError,
    RankingResult,
    Solution,
)

__all__ = [
    "SCHEMA_VERSION",
    "ParseError",
    "parse_problem",
    "load_problem",
    "problem_to_document",
    "dump_problem",
    "emit_report",
    "solution_to_document",
    "load_report",
    "export_dot",
    "graph_to_document",
    "graph_from_document",
    "parse_graph",
    "dump_graph",
]

SCHEMA_VERSION = "1"
DECIMALS = 4


class ParseError(ProblemError):
    """Malformed problem or graph document."""


def _fmt(x: float) -> str:
    return f"{x:.{DECIMALS}f}"


def _pair(x: GreyNumber) -> str:
    return f"({_fmt(x.kernel)},{_fmt(x.greyness)})"


# ---------------------------------------------------------------------------
# problem documents

def _real(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _interval(value: Any, where: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ParseError(f"{where}: expected [lo, hi], got {value!r}")
    lo, hi = _real(value[0], where), _real(value[1], where)
    if lo > hi:
        raise ParseError(f"{where}: reversed interval [{lo}, {hi}]")
    return lo, hi


def _square(value: Any, m: int, what: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != m:
        raise ParseError(f"{what}: expected {m} rows")
    rows = []
    for p, row in enumerate(value):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"{what}: row {p + 1} must have {m} entries")
        rows.append([_real(x, f"{what} row {p + 1}, column {q + 1}") for q, x in enumerate(row)])
    return np.array(rows, dtype=float).reshape(m, m)


def _weight(spec: dict, where: str) -> GreyNumber:
    if "weight" in spec:
        k, g = (_real(x, f"{where} weight") for x in _pair_list(spec["weight"], f"{where} weight"))
        if g < 0:
            raise ParseError(f"{where}: weight greyness must be non-negative")
        if not (0.0 <= k <= 1.0 and g <= 1.0):
            raise ParseError(f"{where}: weight ({k}, {g}) lies outside the unit domain")
        return GreyNumber(k, g)
    if "weight_interval" not in spec:
        raise ParseError(f"{where}: missing weight_interval")
    lo, hi = _interval(spec["weight_interval"], f"{where} weight_interval")
    if lo < 0.0 or hi > 1.0:
        raise ParseError(f"{where}: weight interval [{lo}, {hi}] lies outside [0, 1]")
    return from_interval(GreyInterval(lo, hi))


def _pair_list(value: Any, where: str):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ParseError(f"{where}: expected a [kernel, greyness] pair")
    return value


def problem_from_document(doc: Any) -> DecisionProblem:
    if not isinstance(doc, dict):
        raise ParseError("problem document must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}")
    for key in ("alternatives", "attributes", "matrix"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}")
    alts = doc["alternatives"]
    if not isinstance(alts, list) or not all(isinstance(a, str) for a in alts):
        raise ParseError("alternatives must be a list of names")
    specs = doc["attributes"]
    if not isinstance(specs, list):
        raise ParseError("attributes must be a list")
    attrs = []
    for j, spec in enumerate(specs):
        where = f"attribute {j + 1}"
        if not isinstance(spec, dict) or "name" not in spec or "kind" not in spec:
            raise ParseError(f"{where}: needs name and kind")
        kind = spec["kind"]
        if kind not in ("benefit", "cost"):
            raise ParseError(f"{where} ({spec['name']}): unknown kind {kind!r}")
        attrs.append(Attribute(str(spec["name"]), kind, _weight(spec, where)))
    n, m = len(alts), len(attrs)
    matrix = doc["matrix"]
    if not isinstance(matrix, list) or len(matrix) != n:
        raise ParseError(f"matrix must have {n} rows (one per alternative)")
    lo = np.empty((n, m))
    hi = np.empty((n, m))
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"matrix row {i + 1}: expected {m} cells")
        for j, cell in enumerate(row):
            lo[i, j], hi[i, j] = _interval(cell, f"matrix row {i + 1}, column {j + 1}")
    xk = _square(doc["influence_kernel"], m, "influence_kernel") if doc.get("influence_kernel") is not None else np.eye(m)
    xg = (
        _square(doc["influence_greyness"], m, "influence_greyness")
        if doc.get("influence_greyness") is not None
        else np.zeros((m, m))
    )
    if np.any(xg < 0):
        raise ParseError("influence_greyness entries must be non-negative")
    return DecisionProblem(tuple(alts), tuple(attrs), lo, hi, GreyArray(xk, xg))


def _split_cell(text: str, row: int, col: int) -> tuple[float, float]:
    where = f"row {row}, column {col}"
    parts = text.strip().split("..")
    try:
        if len(parts) == 1:
            lo = hi = float(parts[0])
        elif len(parts) == 2:
            lo, hi = float(parts[0]), float(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ParseError(f"{where}: cannot read interval {text!r} (expected lo..hi)") from None
    if lo > hi:
        raise ParseError(f"{where}: reversed interval {text!r}")
    return lo, hi


def _csv_problem(text: str) -> DecisionProblem:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if len(rows) < 3:
        raise ParseError("CSV needs a header row, at least one alternative row and a weights row")
    header = rows[0]
    names, kinds = [], []
    for col, label in enumerate(header[1:], start=2):
        name, sep, kind = label.strip().rpartition(":")
        if not sep or not name:
            raise ParseError(f"row 1, column {col}: header {label!r} must be name:kind")
        if kind.strip() not in ("benefit", "cost"):
            raise ParseError(f"row 1, column {col}: unknown attribute kind {kind!r}")
        names.append(name)
        kinds.append(kind.strip())
    m = len(names)
    if m == 0:
        raise ParseError("row 1: no attribute columns")
    body, weights_row, infl_rows = [], None, {}
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != m + 1:
            raise ParseError(f"row {r}: expected {m + 1} cells, got {len(row)}")
        label = row[0].strip()
        if label.lower() == "weights":
            weights_row = (r, row)
        elif label.lower().startswith("influence:"):
            infl_rows[label.split(":", 1)[1].strip()] = (r, row)
        else:
            if weights_row is not None:
                raise ParseError(f"row {r}: alternative rows must precede the weights row")
            body.append((r, row))
    if weights_row is None:
        raise ParseError("missing trailing weights row")
    if not body:
        raise ParseError("no alternative rows")
    r, row = weights_row
    weights = []
    for col, cell in enumerate(row[1:], start=2):
        lo, hi = _split_cell(cell, r, col)
        if lo < 0.0 or hi > 1.0:
            raise ParseError(f"row {r}, column {col}: weight interval outside [0, 1]")
        weights.append(from_interval(GreyInterval(lo, hi)))
    attrs = tuple(Attribute(nm, kd, w) for nm, kd, w in zip(names, kinds, weights))
    n = len(body)
    lo = np.empty((n, m))
    hi = np.empty((n, m))
    for i, (r, row) in enumerate(body):
        for j, cell in enumerate(row[1:]):
            lo[i, j], hi[i, j] = _split_cell(cell, r, j + 2)
    influence = None
    if infl_rows:
        missing = [nm for nm in names if nm not in infl_rows]
        if missing:
            raise ParseError(f"influence rows missing for attributes {missing}")
        xk = np.empty((m, m))
        xg = np.empty((m, m))
        for p, nm in enumerate(names):
            r, row = infl_rows[nm]
            for q, cell in enumerate(row[1:]):
                k, _, g = cell.strip().partition(":")
                try:
                    xk[p, q] = float(k)
                    xg[p, q] = float(g) if g else 0.0
                except ValueError:
                    raise ParseError(f"row {r}, column {q + 2}: cannot read influence {cell!r}") from None
        influence = GreyArray(xk, xg)
    return DecisionProblem(tuple(row[0].strip() for _, row in body), attrs, lo, hi, influence)


def parse_problem(document: bytes | str, format: str = "json") -> DecisionProblem:
    """Parse a problem document.

    JSON follows the problem schema (see README). The CSV variant has a
    ``name:kind`` header, one ``lo..hi`` cell per attribute per alternative,
    a trailing ``weights`` row and optional ``influence:<attr>`` rows of
    ``kernel:greyness`` cells.
    """
    text = document.decode("utf-8") if isinstance(document, (bytes, bytearray)) else document
    if format == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return problem_from_document(doc)
    if format == "csv":
        return _csv_problem(text)
    raise ParseError(f"unknown problem format {format!r}")


def load_problem(path, format: str | None = None) -> DecisionProblem:
    path = str(path)
    if format is None:
        format = "csv" if path.lower().endswith(".csv") else "json"
    with open(path, "rb") as fh:
        return parse_problem(fh.read(), format)


def problem_to_document(problem: DecisionProblem) -> dict:
    attrs = []
    for a in problem.attributes:
        iv = to_interval(a.weight)
        entry: dict[str, Any] = {"name": a.name, "kind": a.kind}
        if from_interval(iv) == a.weight:
            entry["weight_interval"] = [iv.lower, iv.upper]
        else:
            entry["weight"] = [a.weight.kernel, a.weight.greyness]
        attrs.append(entry)
    n, m = problem.shape
    return {
        "schema_version": SCHEMA_VERSION,
        "alternatives": list(problem.alternatives),
        "attributes": attrs,
        "matrix": [
            [[float(problem.lower[i, j]), float(problem.upper[i, j])] for j in range(m)] for i in range(n)
        ],
        "influence_kernel": problem.influence.kernel.tolist(),
        "influence_greyness": problem.influence.greyness.tolist(),
    }


def dump_problem(problem: DecisionProblem) -> bytes:
    return (json.dumps(problem_to_document(problem), indent=2) + "\n").encode()


# ---------------------------------------------------------------------------
# reports

def solution_to_document(sol: Solution) -> dict:
    nm, rk = sol.normalized, sol.ranking
    return {
        "schema_version": SCHEMA_VERSION,
        "backend": sol.backend,
        "clamped": sol.clamped,
        "warnings": list(sol.warnings),
        "problem": problem_to_document(sol.problem),
        "normalized": {
            "r_lower": nm.r_lower.tolist(),
            "r_upper": nm.r_upper.tolist(),
            "kernel": nm.entries.kernel.tolist(),
            "greyness": nm.entries.greyness.tolist(),
            "z_min": nm.z_min.tolist(),
            "z_max": nm.z_max.tolist(),
            "d": nm.d.tolist(),
        },
        "propagated": {"kernel": sol.propagated.kernel.tolist(), "greyness": sol.propagated.greyness.tolist()},
        "scores": [
            {
                "alternative": name,
                "kernel": float(rk.aggregates.kernel[i]),
                "greyness": float(rk.aggregates.greyness[i]),
                "gamma": float(rk.gamma[i]),
                "delta": float(rk.delta[i]),
                "rank": rk.ranks[i],
            }
            for i, name in enumerate(rk.alternatives)
        ],
        "order": [rk.alternatives[i] for i in rk.order],
    }


def load_report(document: bytes | str) -> Solution:
    """Rebuild a :class:`Solution` from a JSON report, at full precision."""
    doc = json.loads(document)
    problem = problem_from_document(doc["problem"])
    nd = doc["normalized"]
    norm = NormalizedMatrix(
        np.array(nd["r_lower"], dtype=float),
        np.array(nd["r_upper"], dtype=float),
        GreyArray(nd["kernel"], nd["greyness"]),
        np.array(nd["z_min"], dtype=float),
        np.array(nd["z_max"], dtype=float),
    )
    prop = GreyArray(doc["propagated"]["kernel"], doc["propagated"]["greyness"])
    scores = doc["scores"]
    names = tuple(s["alternative"] for s in scores)
    index = {nm: i for i, nm in enumerate(names)}
    ranking = RankingResult(
        names,
        GreyArray([s["kernel"] for s in scores], [s["greyness"] for s in scores]),
        np.array([s["gamma"] for s in scores], dtype=float),
        np.array([s["delta"] for s in scores], dtype=float),
        tuple(index[nm] for nm in doc["order"]),
    )
    return Solution(problem, norm, prop, ranking, tuple(doc["warnings"]), bool(doc["clamped"]), doc["backend"])


def _interval_cell(lo: float, hi: float) -> str:
    return f"[{_fmt(lo)},{_fmt(hi)}]"


def _matrix_rows(sol: Solution, cell) -> list[list[str]]:
    n, m = sol.problem.shape
    return [[sol.problem.alternatives[i]] + [cell(i, j) for j in range(m)] for i in range(n)]


def _sections(sol: Solution):
    nm = sol.normalized
    headers = [""] + [a.name for a in sol.problem.attributes]
    yield "Normalized matrix R", headers, _matrix_rows(
        sol, lambda i, j: _interval_cell(nm.r_lower[i, j], nm.r_upper[i, j])
    )
    yield "Kernel matrix", headers, _matrix_rows(sol, lambda i, j: _fmt(nm.entries.kernel[i, j]))
    yield "Greyness matrix", headers, _matrix_rows(sol, lambda i, j: _fmt(nm.entries.greyness[i, j]))
    yield "Propagated kernels", headers, _matrix_rows(sol, lambda i, j: _fmt(sol.propagated.kernel[i, j]))
    yield "Propagated greyness", headers, _matrix_rows(sol, lambda i, j: _fmt(sol.propagated.greyness[i, j]))
    rk = sol.ranking
    yield "Scores", ["", "kernel", "greyness", "delta", "rank"], [
        [
            name,
            _fmt(rk.aggregates.kernel[i]),
            _fmt(rk.aggregates.greyness[i]),
            _fmt(rk.delta[i]),
            str(rk.ranks[i]),
        ]
        for i, name in enumerate(rk.alternatives)
    ]


def _markdown(sol: Solution) -> str:
    out = []
    for title, headers, rows in _sections(sol):
        out.append(f"## {title}\n")
        out.append("| " + " | ".join(headers) + " |")
        out.append("|" + "|".join("---" for _ in headers) + "|")
        out.extend("| " + " | ".join(r) + " |" for r in rows)
        out.append("")
    out.append("**Order:** " + " ≻ ".join(sol.ranking.ordered_names))
    if sol.warnings:
        out.append("")
        out.append("## Warnings\n")
        out.extend(f"- {w}" for w in sol.warnings)
    return "\n".join(out) + "\n"


def _text(sol: Solution) -> str:
    out = []
    for title, headers, rows in _sections(sol):
        table = [headers] + rows
        widths = [max(len(r[c]) for r in table) for c in range(len(headers))]
        out.append(title)
        for r in table:
            out.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip())
        out.append("")
    out.append("Order: " + " > ".join(sol.ranking.ordered_names))
    out.extend(f"warning: {w}" for w in sol.warnings)
    return "\n".join(out) + "\n"


def emit_report(sol: Solution, format: str = "text") -> bytes:
    if format == "json":
        return (json.dumps(solution_to_document(sol), indent=2) + "\n").encode()
    if format == "markdown":
        return _markdown(sol).encode()
    if format == "text":
        return _text(sol).encode()
    raise ValueError(f"unknown report format {format!r}")


# ---------------------------------------------------------------------------
# graphs

def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: GreyGraph, name: str = "G") -> bytes:
    """Undirected DOT with 4-decimal labels, vertices and edges in sorted order."""
    lines = [f"graph {_dot_id(name)} {{"]
    for v, value in g.sorted_vertices():
        label = _dot_id(v)[1:-1] + "\\n" + _pair(value)
        lines.append(f'  {_dot_id(v)} [label="{label}"];')
    for p, q, value in g.iter_edges():
        lines.append(f'  {_dot_id(p)} -- {_dot_id(q)} [label="{_pair(value)}"];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def graph_to_document(g: GreyGraph) -> dict:
    return {
        "vertices": {v: [x.kernel, x.greyness] for v, x in g.sorted_vertices()},
        "edges": [[p, q, x.kernel, x.greyness] for p, q, x in g.iter_edges()],
    }


def graph_from_document(doc: Any, strict: bool = False) -> GreyGraph:
    """Graph JSON: ``{"vertices": {id: [k, g]}, "edges": [[p, q, k, g], ...]}``."""
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("graph document must be an object with a 'vertices' field")
    verts_doc = doc["vertices"]
    if not isinstance(verts_doc, dict):
        raise ParseError("vertices must map vertex ids to [kernel, greyness]")
    verts = {}
    for v, pair in verts_doc.items():
        k, g = (_real(x, f"vertex {v!r}") for x in _pair_list(pair, f"vertex {v!r}"))
        if g < 0:
            raise ParseError(f"vertex {v!r}: greyness must be non-negative")
        verts[v] = GreyNumber(k, g)
    edges = []
    for e, entry in enumerate(doc.get("edges", [])):
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError(f"edge {e + 1}: expected [p, q, kernel, greyness]")
        p, q = entry[0], entry[1]
        k, g = _real(entry[2], f"edge {e + 1}"), _real(entry[3], f"edge {e + 1}")
        if g < 0:
            raise ParseError(f"edge {e + 1}: greyness must be non-negative")
        edges.append((str(p), str(q), GreyNumber(k, g)))
    try:
        return build(verts, edges, strict=strict)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def parse_graph(document: bytes | str, strict: bool = False) -> GreyGraph:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return graph_from_document(doc, strict=strict)


def dump_graph(g: GreyGraph) -> bytes:
    return (json.dumps(graph_to_document(g), indent=2) + "\n").encode()
