import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from greygraph import (
    GraphError,
    GreyGraph,
    GreyNumber,
    attribute_graph,
    build,
    cartesian_product,
    graph_sum,
    is_strong,
    strong_completion,
    union,
    validate,
)
from greygraph.graph import edge_key, product_label
from strategies import unit_grey, valid_graphs

EX21_VERTICES = {
    "x1": (0.7, 0.2), "x2": (0.6, 0.1), "x3": (0.9, 0.3), "x4": (0.8, 0.5), "x5": (0.5, 0.4),
}
EX21_EDGES = [
    ("x1", "x2", (0.5, 0.3)), ("x1", "x3", (0.6, 0.4)), ("x1", "x4", (0.5, 0.6)),
    ("x1", "x5", (0.4, 0.8)), ("x2", "x3", (0.4, 0.4)), ("x2", "x4", (0.2, 0.7)),
    ("x2", "x5", (0.1, 0.5)), ("x3", "x4", (0.3, 0.6)), ("x3", "x5", (0.4, 0.5)),
    ("x4", "x5", (0.1, 0.8)),
]
EX22_VERTICES = {"x1": (0.5, 0.6), "x2": (0.3, 0.5), "x3": (0.7, 0.2), "x4": (0.4, 0.7)}
EX22_EDGES = {
    ("x1", "x2"): (0.3, 0.6), ("x1", "x3"): (0.5, 0.6), ("x1", "x4"): (0.4, 0.7),
    ("x2", "x3"): (0.3, 0.5), ("x2", "x4"): (0.3, 0.7), ("x3", "x4"): (0.4, 0.7),
}


def ex21():
    return build(EX21_VERTICES, EX21_EDGES, strict=True)


class TestBuildAndValidate:
    def test_example_graph_is_valid(self):
        g = ex21()
        assert len(g.vertices) == 5 and len(g.edges) == 10
        assert validate(g).violations == ()

    def test_single_vertex(self):
        assert validate(build({"p": (0.2, 0.3)})).valid

    def test_both_components_violated(self):
        verts = {"p": (0.6, 0.2), "q": (0.5, 0.3)}
        with pytest.raises(GraphError, match="p--q"):
            build(verts, [("p", "q", (0.7, 0.1))], strict=True)
        g = build(verts, [("p", "q", (0.7, 0.1))], strict=False)
        report = validate(g)
        assert not report.valid
        assert [(v.component, v.observed, v.bound) for v in report.violations] == [
            ("kernel", 0.7, 0.5),
            ("greyness", 0.1, 0.3),
        ]

    def test_unknown_endpoint(self):
        with pytest.raises(GraphError, match="unknown vertex 'z'"):
            build({"p": (0.5, 0.1)}, [("p", "z", (0.1, 0.5))])

    def test_duplicate_edge(self):
        verts = {"p": (0.5, 0.1), "q": (0.5, 0.1)}
        with pytest.raises(GraphError, match="duplicate"):
            build(verts, [("p", "q", (0.1, 0.5)), ("q", "p", (0.1, 0.5))])

    def test_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            build({"p": (0.5, 0.1)}, [("p", "p", (0.1, 0.5))])

    def test_immutable(self):
        g = ex21()
        with pytest.raises(TypeError):
            g.vertices["x9"] = GreyNumber(0.1)


class TestStrong:
    def test_example_completion(self):
        g = strong_completion({k: GreyNumber(*v) for k, v in EX22_VERTICES.items()})
        assert {k: (v.kernel, v.greyness) for k, v in g.edges.items()} == EX22_EDGES
        assert is_strong(g)
        assert validate(g).valid

    def test_identical_vertices(self):
        g = strong_completion({"a": (0.4, 0.3), "b": (0.4, 0.3)})
        assert g.edge("a", "b") == GreyNumber(0.4, 0.3)

    def test_example21_not_strong(self):
        assert not is_strong(ex21())

    def test_edgeless_is_strong(self):
        assert is_strong(build({"a": (0.1, 0.1), "b": (0.2, 0.2)}))

    def test_incomplete_edge_set_can_be_strong(self):
        g = strong_completion({"a": (0.1, 0.1), "b": (0.2, 0.2), "c": (0.5, 0.0)})
        partial = build(dict(g.vertices), {("a", "b"): g.edge("a", "b")})
        assert is_strong(partial)

    def test_empty_rejected(self):
        with pytest.raises(GraphError):
            strong_completion({})

    @given(st.dictionaries(st.sampled_from("abcdef"), unit_grey, min_size=1))
    def test_completion_always_strong_and_valid(self, verts):
        g = strong_completion(verts)
        assert is_strong(g) and validate(g).valid
        n = len(verts)
        assert len(g.edges) == n * (n - 1) // 2


def union_oracle(g1: GreyGraph, g2: GreyGraph) -> dict:
    """Case-by-case membership rules for vertices (a-c) and edges (d-f)."""
    verts, edges = {}, {}
    for p in set(g1.vertices) | set(g2.vertices):
        in1, in2 = p in g1.vertices, p in g2.vertices
        if in1 and not in2:
            verts[p] = g1.vertices[p]
        elif in2 and not in1:
            verts[p] = g2.vertices[p]
        else:
            a, b = g1.vertices[p], g2.vertices[p]
            verts[p] = GreyNumber(max(a.kernel, b.kernel), min(a.greyness, b.greyness))
    for e in set(g1.edges) | set(g2.edges):
        in1, in2 = e in g1.edges, e in g2.edges
        if in1 and not in2:
            edges[e] = g1.edges[e]
        elif in2 and not in1:
            edges[e] = g2.edges[e]
        else:
            a, b = g1.edges[e], g2.edges[e]
            edges[e] = GreyNumber(max(a.kernel, b.kernel), min(a.greyness, b.greyness))
    return {"vertices": verts, "edges": edges}


class TestUnion:
    def test_shared_vertex(self):
        g = union(build({"p": (0.5, 0.6)}), build({"p": (0.7, 0.2)}))
        assert g.vertices["p"] == GreyNumber(0.7, 0.2)

    def test_disjoint(self):
        g1 = build({"a": (0.5, 0.1), "b": (0.4, 0.2)}, [("a", "b", (0.3, 0.3))])
        g2 = build({"c": (0.9, 0.0)})
        u = union(g1, g2)
        assert dict(u.vertices) == {**g1.vertices, **g2.vertices}
        assert dict(u.edges) == dict(g1.edges)

    @given(valid_graphs(), valid_graphs())
    def test_matches_oracle_and_valid(self, g1, g2):
        u = union(g1, g2)
        expected = union_oracle(g1, g2)
        assert dict(u.vertices) == expected["vertices"]
        assert dict(u.edges) == expected["edges"]
        assert validate(u).valid

    @given(valid_graphs(), valid_graphs())
    def test_commutative(self, g1, g2):
        assert union(g1, g2) == union(g2, g1)

    @given(valid_graphs())
    def test_idempotent(self, g):
        assert union(g, g) == g


def sum_oracle(g1, g2):
    verts = dict(g1.vertices) | dict(g2.vertices)
    edges = dict(g1.edges) | dict(g2.edges)
    for p in g1.vertices:
        for q in g2.vertices:
            a, b = g1.vertices[p], g2.vertices[q]
            edges[edge_key(p, q)] = GreyNumber(min(a.kernel, b.kernel), max(a.greyness, b.greyness))
    return verts, edges


class TestSum:
    def test_two_points(self):
        g = graph_sum(build({"p": (0.5, 0.6)}), build({"q": (0.3, 0.5)}))
        assert g.edge("p", "q") == GreyNumber(0.3, 0.6)
        assert g == strong_completion({"p": (0.5, 0.6), "q": (0.3, 0.5)})

    def test_edge_count(self):
        g1 = build({f"a{i}": (0.5, 0.1) for i in range(3)})
        g2 = build({f"b{i}": (0.2, 0.3) for i in range(4)})
        assert len(graph_sum(g1, g2).edges) == 12

    def test_overlap_rejected(self):
        with pytest.raises(GraphError, match="disjoint"):
            graph_sum(build({"p": (0.5, 0.1)}), build({"p": (0.5, 0.1)}))

    @given(valid_graphs(names=("a", "b", "c")), valid_graphs(names=("d", "e", "f")))
    def test_matches_oracle(self, g1, g2):
        g = graph_sum(g1, g2)
        verts, edges = sum_oracle(g1, g2)
        assert dict(g.vertices) == verts
        assert dict(g.edges) == edges
        assert validate(g).valid
        internal = {e: v for e, v in g.edges.items() if e in g1.edges or e in g2.edges}
        assert internal == dict(union(g1, g2).edges)


def product_oracle(g1, g2):
    """Brute force over all pairs of product vertices."""
    verts = {}
    for p, q in itertools.product(g1.vertices, g2.vertices):
        a, b = g1.vertices[p], g2.vertices[q]
        verts[(p, q)] = GreyNumber(min(a.kernel, b.kernel), max(a.greyness, b.greyness))
    edges = {}
    for (u1, u2), (v1, v2) in itertools.combinations(list(verts), 2):
        if u1 == v1 and g2.has_edge(u2, v2):
            a, b = g1.vertices[u1], g2.edge(u2, v2)
        elif u2 == v2 and g1.has_edge(u1, v1):
            a, b = g1.edge(u1, v1), g2.vertices[u2]
        else:
            continue
        key = edge_key(product_label(u1, u2), product_label(v1, v2))
        edges[key] = GreyNumber(min(a.kernel, b.kernel), max(a.greyness, b.greyness))
    return {product_label(*k): v for k, v in verts.items()}, edges


class TestProduct:
    def test_vertex_rule(self):
        g = cartesian_product(build({"p": (0.5, 0.6)}), build({"q": (0.3, 0.5)}))
        assert g.vertices[product_label("p", "q")] == GreyNumber(0.3, 0.6)

    def test_single_edge(self):
        g1 = build({"r": (0.6, 0.1)})
        g2 = build({"p": (0.8, 0.2), "q": (0.7, 0.3)}, [("p", "q", (0.5, 0.4))])
        g = cartesian_product(g1, g2)
        assert len(g.edges) == 1
        assert g.edge(product_label("r", "p"), product_label("r", "q")) == GreyNumber(0.5, 0.4)

    def test_empty_rejected(self):
        with pytest.raises(GraphError):
            cartesian_product(GreyGraph(), build({"p": (0.1, 0.1)}))

    @given(valid_graphs(names=("a", "b", "c")), valid_graphs(names=("u", "v", "w")))
    def test_matches_oracle(self, g1, g2):
        g = cartesian_product(g1, g2)
        verts, edges = product_oracle(g1, g2)
        assert dict(g.vertices) == verts
        assert dict(g.edges) == edges
        assert validate(g).valid
        assert len(g.vertices) == len(g1.vertices) * len(g2.vertices)
        assert len(g.edges) == len(g1.vertices) * len(g2.edges) + len(g2.vertices) * len(g1.edges)


class TestAttributeGraph:
    XI_K = [[1, 0.3, 0.1], [0.3, 1, 0.15], [0.1, 0.15, 1]]
    XI_G = [[0, 0.2, 0.2], [0.2, 0, 0.2], [0.2, 0.2, 0]]
    W = [(0.45, 0.1), (0.35, 0.1), (0.2, 0.1)]

    def test_example_triangle(self):
        g = attribute_graph(self.W, self.XI_K, self.XI_G)
        assert g.edge("A1", "A2") == GreyNumber(0.3, 0.2)
        assert g.edge("A1", "A3") == GreyNumber(0.1, 0.2)
        assert g.edge("A2", "A3") == GreyNumber(0.15, 0.2)
        assert g.vertices["A1"] == GreyNumber(0.45, 0.1)
        assert validate(g).valid

    def test_identity_edgeless(self):
        g = attribute_graph(self.W, np.eye(3))
        assert len(g.vertices) == 3 and not g.edges

    def test_single_attribute(self):
        g = attribute_graph([(1.0, 0.0)], [[1.0]])
        assert list(g.vertices) == ["A1"] and not g.edges

    def test_asymmetric_rejected(self):
        with pytest.raises(GraphError, match="symmetric"):
            attribute_graph(self.W, [[1, 0.3, 0.1], [0.2, 1, 0.15], [0.1, 0.15, 1]], self.XI_G)

    def test_non_square_rejected(self):
        with pytest.raises(GraphError):
            attribute_graph(self.W, [[1, 0.3], [0.3, 1]])
