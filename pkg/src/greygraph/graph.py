"""Grey graphs: simple undirected graphs with grey-number vertex and edge weights.

A grey graph is valid when every edge is no stronger and no less grey than
its endpoints: the edge kernel is at most the smaller endpoint kernel and its
greyness at least the larger endpoint greyness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping

import numpy as np

from .core import GreyNumber

__all__ = [
    "GreyGraph",
    "GraphError",
    "Violation",
    "ValidityReport",
    "edge_key",
    "build",
    "validate",
    "strong_completion",
    "is_strong",
    "union",
    "graph_sum",
    "cartesian_product",
    "attribute_graph",
    "product_label",
]

Edge = tuple[str, str]


class GraphError(ValueError):
    """Structurally malformed graph input or an operator precondition failure."""


def edge_key(p: str, q: str) -> Edge:
    """Canonical unordered-pair key."""
    if p == q:
        raise GraphError(f"self-loop on vertex {p!r} is not allowed")
    return (p, q) if p < q else (q, p)


def _strong_value(a: GreyNumber, b: GreyNumber) -> GreyNumber:
    return GreyNumber(min(a.kernel, b.kernel), max(a.greyness, b.greyness))


def _merge_value(a: GreyNumber, b: GreyNumber) -> GreyNumber:
    return GreyNumber(max(a.kernel, b.kernel), min(a.greyness, b.greyness))


@dataclass(frozen=True)
class Violation:
    edge: Edge
    component: str  # "kernel" | "greyness"
    observed: float
    bound: float

    def __str__(self) -> str:
        p, q = self.edge
        rel = ">" if self.component == "kernel" else "<"
        return f"edge {p}--{q}: {self.component} {self.observed!r} {rel} bound {self.bound!r}"


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True, eq=False)
class GreyGraph:
    """Immutable grey graph. Use :func:`build` to construct one with checks."""

    vertices: Mapping[str, GreyNumber] = field(default_factory=dict)
    edges: Mapping[Edge, GreyNumber] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", MappingProxyType(dict(self.vertices)))
        object.__setattr__(self, "edges", MappingProxyType(dict(self.edges)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GreyGraph):
            return NotImplemented
        return dict(self.vertices) == dict(other.vertices) and dict(self.edges) == dict(other.edges)

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices.items()), frozenset(self.edges.items())))

    def __repr__(self) -> str:
        return f"GreyGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def sorted_vertices(self) -> list[tuple[str, GreyNumber]]:
        return sorted(self.vertices.items())

    def sorted_edges(self) -> list[tuple[Edge, GreyNumber]]:
        return sorted(self.edges.items())

    def iter_edges(self) -> Iterator[tuple[str, str, GreyNumber]]:
        for (p, q), value in self.sorted_edges():
            yield p, q, value

    def edge(self, p: str, q: str) -> GreyNumber:
        return self.edges[edge_key(p, q)]

    def has_edge(self, p: str, q: str) -> bool:
        return p != q and edge_key(p, q) in self.edges


def _normalize_edges(vertices: Mapping[str, GreyNumber], edges) -> dict[Edge, GreyNumber]:
    items = edges.items() if isinstance(edges, Mapping) else edges
    out: dict[Edge, GreyNumber] = {}
    for entry in items:
        if len(entry) == 2:
            (p, q), value = entry
        else:
            p, q, value = entry
        for end in (p, q):
            if end not in vertices:
                raise GraphError(f"edge {p}--{q} references unknown vertex {end!r}")
        key = edge_key(p, q)
        if key in out:
            raise GraphError(f"duplicate edge {key[0]}--{key[1]}")
        if not isinstance(value, GreyNumber):
            value = GreyNumber(*value)
        out[key] = value
    return out


def build(vertices: Mapping[str, GreyNumber], edges=(), strict: bool = True) -> GreyGraph:
    """Construct a grey graph.

    ``edges`` may be a mapping ``{(p, q): value}`` or an iterable of
    ``(p, q, value)`` triples; values may be GreyNumbers or ``(kernel,
    greyness)`` pairs. With ``strict`` the validity constraint is enforced.
    """
    verts: dict[str, GreyNumber] = {}
    for name, value in vertices.items():
        if not isinstance(name, str) or not name:
            raise GraphError(f"vertex id must be a non-empty string, got {name!r}")
        verts[name] = value if isinstance(value, GreyNumber) else GreyNumber(*value)
    g = GreyGraph(verts, _normalize_edges(verts, edges))
    if strict:
        report = validate(g)
        if not report.valid:
            detail = "; ".join(str(v) for v in report.violations)
            raise GraphError(f"invalid grey graph: {detail}")
    return g


def validate(g: GreyGraph) -> ValidityReport:
    violations = []
    for (p, q), mu in g.sorted_edges():
        bound = _strong_value(g.vertices[p], g.vertices[q])
        if mu.kernel > bound.kernel:
            violations.append(Violation((p, q), "kernel", mu.kernel, bound.kernel))
        if mu.greyness < bound.greyness:
            violations.append(Violation((p, q), "greyness", mu.greyness, bound.greyness))
    return ValidityReport(tuple(violations))


def strong_completion(vertices: Mapping[str, GreyNumber]) -> GreyGraph:
    if not vertices:
        raise GraphError("strong completion needs at least one vertex")
    verts = {k: v if isinstance(v, GreyNumber) else GreyNumber(*v) for k, v in vertices.items()}
    edges = {
        edge_key(p, q): _strong_value(verts[p], verts[q])
        for p, q in itertools.combinations(sorted(verts), 2)
    }
    return GreyGraph(verts, edges)


def is_strong(g: GreyGraph) -> bool:
    """True iff every present edge equals its endpoints' (min kernel, max greyness)."""
    return all(
        mu == _strong_value(g.vertices[p], g.vertices[q]) for (p, q), mu in g.edges.items()
    )


def _merge(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for key, value in b.items():
        out[key] = _merge_value(out[key], value) if key in out else value
    return out


def union(g1: GreyGraph, g2: GreyGraph) -> GreyGraph:
    """Elements in one graph carry over; shared ones take (max kernel, min greyness)."""
    return GreyGraph(_merge(g1.vertices, g2.vertices), _merge(g1.edges, g2.edges))


def graph_sum(g1: GreyGraph, g2: GreyGraph) -> GreyGraph:
    """Join of two vertex-disjoint grey graphs.

    The union of both graphs plus a joining edge between every ``p`` in ``g1``
    and ``q`` in ``g2``, valued from the two endpoint weights.
    """
    shared = g1.vertices.keys() & g2.vertices.keys()
    if shared:
        raise GraphError(f"graph sum requires disjoint vertex sets; shared: {sorted(shared)}")
    joined = union(g1, g2)
    edges = dict(joined.edges)
    for p, sp in g1.vertices.items():
        for q, sq in g2.vertices.items():
            edges[edge_key(p, q)] = _strong_value(sp, sq)
    return GreyGraph(joined.vertices, edges)


def product_label(p: str, q: str) -> str:
    return f"({p},{q})"


def cartesian_product(g1: GreyGraph, g2: GreyGraph) -> GreyGraph:
    if not g1.vertices or not g2.vertices:
        raise GraphError("cartesian product needs two non-empty graphs")
    verts = {
        product_label(p, q): _strong_value(sp, sq)
        for p, sp in g1.vertices.items()
        for q, sq in g2.vertices.items()
    }
    edges: dict[Edge, GreyNumber] = {}
    for r, sr in g1.vertices.items():
        for (p, q), mu in g2.edges.items():
            edges[edge_key(product_label(r, p), product_label(r, q))] = _strong_value(sr, mu)
    for r, sr in g2.vertices.items():
        for (p, q), mu in g1.edges.items():
            edges[edge_key(product_label(p, r), product_label(q, r))] = _strong_value(mu, sr)
    return GreyGraph(verts, edges)


def attribute_graph(
    weights,
    influence_kernel,
    influence_greyness=None,
    names=None,
) -> GreyGraph:
    """Grey graph of attributes: vertices weighted by attribute weights,
    edges by the off-diagonal influence entries (zero-kernel entries omitted)."""
    weights = [w if isinstance(w, GreyNumber) else GreyNumber(*w) for w in weights]
    m = len(weights)
    xk = np.asarray(influence_kernel, dtype=float)
    xg = np.zeros_like(xk) if influence_greyness is None else np.asarray(influence_greyness, dtype=float)
    if xk.shape != (m, m) or xg.shape != (m, m):
        raise GraphError(f"influence matrix must be {m}x{m}, got {xk.shape} and {xg.shape}")
    if not (np.array_equal(xk, xk.T) and np.array_equal(xg, xg.T)):
        raise GraphError("influence matrix must be symmetric in kernel and greyness")
    if not np.all(np.diag(xk) == 1.0):
        raise GraphError("influence matrix must have unit diagonal kernels")
    if names is None:
        names = [f"A{j + 1}" for j in range(m)]
    if len(names) != m:
        raise GraphError(f"expected {m} attribute names, got {len(names)}")
    verts = dict(zip(names, weights))
    edges = {
        edge_key(names[p], names[q]): GreyNumber(float(xk[p, q]), float(xg[p, q]))
        for p, q in itertools.combinations(range(m), 2)
        if xk[p, q] != 0.0
    }
    return GreyGraph(verts, edges)
