import pytest

from coxcover.coset import coset_enumerate
from coxcover.graphs import (
    MultiGraph,
    SpanningData,
    braid_expectations,
    coxeter_presentation,
    cycle_rank,
    doubled,
    format_graph,
    parse_graph,
    spanning_is_valid,
)
from coxcover.words import parse_word


def path_graph(n):
    return MultiGraph(n, [(str(i), (i, i + 1)) for i in range(1, n)])


def test_multigraph_validation():
    with pytest.raises(ValueError):
        MultiGraph(2, [("a", (1, 1))])
    with pytest.raises(ValueError):
        MultiGraph(2, [("a", (1, 3))])
    with pytest.raises(ValueError):
        MultiGraph(2, [("a", (1, 2)), ("a", (1, 2))])


def test_cycle_rank():
    triangle = MultiGraph(3, [("a", (1, 2)), ("b", (2, 3)), ("c", (1, 3))])
    assert cycle_rank(triangle) == 1
    assert cycle_rank(path_graph(5)) == 0
    disconnected = MultiGraph(4, [("a", (1, 2)), ("b", (3, 4))])
    with pytest.raises(ValueError):
        cycle_rank(disconnected)


def test_doubling_and_parallel_classes():
    g = doubled(path_graph(3))
    assert len(g.edges) == 4
    assert g.endpoints("1'") == g.endpoints("1")
    classes = g.parallel_classes()
    assert classes[(1, 2)] == ("1", "1'")


def test_coxeter_path_two_edges():
    p = coxeter_presentation(path_graph(3))
    assert p.alphabet == ("1", "2")
    assert parse_word("1 1") in p.relators
    assert parse_word("1 2 1 2 1 2") in p.relators
    assert coset_enumerate(p, [], 100) == 6


def test_coxeter_disjoint_edges():
    g = MultiGraph(4, [("u", (1, 2)), ("v", (3, 4))])
    p = coxeter_presentation(g)
    assert parse_word("u v u v") in p.relators
    assert coset_enumerate(p, [], 100) == 4


def test_coxeter_trees_give_factorials():
    for n in (3, 4, 5):
        p = coxeter_presentation(path_graph(n))
        order = 1
        for k in range(2, n + 1):
            order *= k
        assert coset_enumerate(p, [], 20000) == order
    star = MultiGraph(4, [("a", (1, 4)), ("b", (2, 4)), ("c", (3, 4))])
    assert coset_enumerate(coxeter_presentation(star), [], 1000) == 24


def test_coxeter_r4_emission():
    star = MultiGraph(4, [("a", (1, 4)), ("b", (2, 4)), ("c", (3, 4))])
    p = coxeter_presentation(star)
    r4 = [r for r in p.relators if len(r) == 8]
    assert len(r4) == 3
    assert parse_word("a b c b a b c b") in r4


def test_coxeter_r5_skips_three_vertex_quadruples():
    # parallel pair plus one edge at each endpoint
    g = MultiGraph(4, [("u", (1, 2)), ("u'", (1, 2)), ("v", (1, 3)), ("w", (2, 4))])
    p = coxeter_presentation(g)
    r5 = [r for r in p.relators if len(r) == 12]
    assert parse_word("u v u u' w u' u v u u' w u'") in r5
    # both endpoint assignments are emitted
    assert parse_word("u w u u' v u' u w u u' v u'") in r5
    assert all("u'" in {letter.key() for letter in r} for r in r5)
    # v and w meeting in a shared third vertex cover only 3 vertices
    tight = MultiGraph(3, [("u", (1, 2)), ("u'", (1, 2)), ("v", (1, 3)), ("w", (2, 3))])
    assert [r for r in coxeter_presentation(tight).relators if len(r) == 12] == []


def test_braid_expectations_small():
    g = MultiGraph(4, [("u", (1, 2)), ("v", (3, 4))])
    assert braid_expectations(g) == (1, 0)
    shared = MultiGraph(3, [("u", (1, 2)), ("v", (2, 3))])
    assert braid_expectations(shared) == (0, 1)
    parallel = MultiGraph(2, [("u", (1, 2)), ("u'", (1, 2))])
    assert braid_expectations(parallel) == (0, 0)


def test_graph_io_round_trip():
    g = MultiGraph(3, [("a", (1, 2)), ("b", (2, 3)), ("c", (1, 3))])
    s = SpanningData(["a", "b"], [("c", 3, 1)])
    assert spanning_is_valid(g, s)
    text = format_graph(g, s)
    g2, s2 = parse_graph(text)
    assert g2.edges == g.edges
    assert s2.tree_edges == s.tree_edges
    assert s2.cycle_edges == s.cycle_edges
    plain, none_spanning = parse_graph(format_graph(g))
    assert none_spanning is None
    assert plain.edge_ids() == g.edge_ids()


def test_spanning_validation_rejects_bad_data():
    g = MultiGraph(3, [("a", (1, 2)), ("b", (2, 3)), ("c", (1, 3))])
    assert not spanning_is_valid(g, SpanningData(["a"], [("c", 3, 1)]))
    assert not spanning_is_valid(g, SpanningData(["a", "b"], [("c", 3, 2)]))
    assert not spanning_is_valid(g, SpanningData(["a", "b", "c"], []))
