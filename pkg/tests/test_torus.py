from coxcover.graphs import MultiGraph, SpanningData, braid_expectations, coxeter_presentation
from coxcover.torus import (
    FAIL,
    PASS,
    load_torus_data,
    report_passed,
    srg_parameters,
    validate_torus_data,
)


def test_asset_loads_and_validates():
    data = load_torus_data()
    report = validate_torus_data(data)
    failures = [c.name for c in report if c.status == FAIL]
    # The default declared parameters are unrealizable (see the module
    # comment); every structural check passes.
    assert failures == ["point-graph-declared-parameters"]
    assert not report_passed(report)
    by_name = {c.name: c for c in report}
    assert by_name["three-regular"].status == PASS
    assert by_name["cycle-rank"].status == PASS
    assert by_name["spanning-tree"].status == PASS
    assert by_name["point-graph-strongly-regular"].status == PASS


def test_declared_srg_parameters_compared_exactly():
    data = load_torus_data()
    report = validate_torus_data(data)
    by_name = {c.name: c for c in report}
    computed = srg_parameters(data.points)
    assert computed == (9, 6, 3, 6)
    declared = by_name["point-graph-declared-parameters"]
    assert declared.status == FAIL
    assert "(9, 6, 2, 2)" in declared.detail and "(9, 6, 3, 6)" in declared.detail
    agreeing = validate_torus_data(data, declared_srg=computed)
    assert report_passed(agreeing)
    assert {c.name: c for c in agreeing}["point-graph-declared-parameters"].status == PASS


def test_counts_on_doubled_graph():
    data = load_torus_data()
    hat = data.doubled_planes()
    assert len(hat.edges) == 54
    commuting, order3 = braid_expectations(hat)
    assert (commuting, order3) == (1188, 216)
    assert commuting + order3 == 1404
    # the 27 parallel pairs are in neither class
    total_pairs = 54 * 53 // 2
    assert total_pairs - commuting - order3 == 27


def test_coxeter_relator_counts_on_planes():
    data = load_torus_data()
    p = coxeter_presentation(data.planes)
    assert len(p.alphabet) == 27
    by_len = {}
    for r in p.relators:
        by_len[len(r)] = by_len.get(len(r), 0) + 1
    assert by_len[2] == 27
    assert by_len[4] == 297
    assert by_len[6] == 54
    assert by_len[8] == 54


def test_negative_controls():
    data = load_torus_data()
    edges = [(eid, pair) for eid, pair in data.planes.edges]
    # move one endpoint of edge 5 from plane 5 to plane 6
    perturbed = [(eid, (6, pair[1]) if eid == "5" else pair) for eid, pair in edges]
    bad = data._replace(planes=MultiGraph(18, perturbed))
    report = validate_torus_data(bad)
    assert {c.name: c.status for c in report}["three-regular"] == FAIL

    # move a tree edge into the cycle set
    tree = sorted(data.spanning.tree_edges)
    moved = SpanningData([e for e in tree if e != "5"],
                         list(data.spanning.cycle_edges) + [("5", 5, 1)])
    bad_span = data._replace(spanning=moved)
    report2 = validate_torus_data(bad_span)
    assert {c.name: c.status for c in report2}["spanning-tree"] == FAIL
