import json

import pytest
from hypothesis import given, strategies as st

from izeta.corpus import generate_corpus
from izeta.graph_model import (
    Component,
    DualGraph,
    GraphError,
    ascii_diagram,
    chi_open,
    derive_generic_counts,
    from_json,
    graph_from_dict,
    to_dot,
    to_json,
    validate,
)
from izeta.principalization import principalize

from conftest import DATA, load_graph


@pytest.mark.parametrize("name", ["chain", "two_images", "branched"])
def test_hand_written_graphs_validate(name):
    diag = validate(load_graph(name))
    assert diag.ok, diag.summary()


def test_generic_counts_from_self_intersections():
    assert derive_generic_counts(load_graph("chain")) == {"E1": 3, "E2": 0, "E3": 1}
    assert derive_generic_counts(load_graph("two_images")) == {"E1": 1, "E2": 0, "E3": 1}
    assert derive_generic_counts(load_graph("branched")) == {"E1": 0, "E2": 0, "E3": 0, "E4": 0, "E5": 0, "E6": 1}


def test_chi_open_of_branch_curve():
    g = load_graph("branched")
    assert chi_open(g, "E3") == -1
    assert chi_open(g, "E1") == 1
    assert chi_open(g, "E4") == 0


def test_alpha_relation_failure_is_located():
    diag = validate(load_graph("bad_alpha"))
    assert not diag.ok
    assert [(c.name, c.location) for c in diag.failures] == [("alpha sum relation", "E3")]


def test_negative_generic_count_rejected():
    g = DualGraph((Component("E1", "exceptional", 4, 2, -1), Component("E2", "exceptional", 5, 3, -1)), (("E1", "E2"),))
    diag = validate(g)
    assert not diag.ok
    with pytest.raises(GraphError):
        derive_generic_counts(g)


def test_cycle_fails_tree_check():
    comps = tuple(Component(f"E{i}", "exceptional", 1, 2, -2) for i in range(1, 4))
    g = DualGraph(comps, (("E1", "E2"), ("E2", "E3"), ("E1", "E3")))
    names = {c.name for c in validate(g).failures}
    assert "exceptional graph is a tree" in names


def test_schema_error_location():
    bad = json.loads((DATA / "chain.graph.json").read_text())
    bad["components"][1]["N"] = 0
    with pytest.raises(GraphError, match=r"\$\.components\[1\]\.N"):
        graph_from_dict(bad)
    with pytest.raises(GraphError, match="invalid JSON"):
        from_json("{")


def test_dot_and_ascii():
    g = principalize("x^3*y, x^6+y^4").graph
    dot = to_dot(g)
    assert dot.startswith("graph") and '"E1" -- "E2"' in dot
    assert 'label="3"' in dot  # three generic-curve points on E1
    text = ascii_diagram(g)
    assert "E2 (5,3)" in text and "meets: E1, E3" in text


CORPUS = generate_corpus(30, seed=99)


@given(st.sampled_from(CORPUS))
def test_json_round_trip(text):
    g = principalize(text).graph
    again = from_json(to_json(g))
    assert again == g
    assert to_json(again) == to_json(g)


@given(st.sampled_from(CORPUS))
def test_pipeline_graphs_validate(text):
    diag = validate(principalize(text).graph)
    assert diag.ok, diag.summary()
