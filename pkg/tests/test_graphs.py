"""Reduction graphs: closure, budget bounds, DOT and JSON export."""

import json

import pytest

from permsn.graphs import build_graph, graph_to_dot, graph_to_json
from permsn.reduction import ALL_RULES, BETA_ONLY, one_step
from permsn.syntax import parse

OMEGA = parse(r"(\x. x x) (\x. x x)")


def test_normal_form_graph_is_a_single_node():
    graph = build_graph(parse(r"\x. x"))
    assert graph.nodes == (parse(r"\x. x"),)
    assert graph.edges == ()
    assert graph.complete


def test_single_beta_edge():
    t = parse(r"(\x. x) a")
    graph = build_graph(t, BETA_ONLY)
    assert graph.nodes == (t, parse("a"))
    assert len(graph.edges) == 1
    src, dst, occ = graph.edges[0]
    assert (src, dst) == (0, 1)
    assert str(occ) == "beta@root"
    assert graph.complete


def test_graph_matches_an_independent_closure():
    t = parse(r"(\y. \x. y x) a b")
    graph = build_graph(t)
    reachable = {t}
    frontier = [t]
    while frontier:
        u = frontier.pop()
        for v in one_step(u, ALL_RULES):
            if v not in reachable:
                reachable.add(v)
                frontier.append(v)
    assert set(graph.nodes) == reachable
    assert graph.complete
    # every edge is a genuine one-step relation
    for src, dst, _ in graph.edges:
        assert graph.nodes[dst] in set(one_step(graph.nodes[src], ALL_RULES))


def test_budget_exhaustion_is_flagged():
    growing = parse(r"(\x. x x x) (\x. x x x)")
    graph = build_graph(growing, ALL_RULES, budget=2)
    assert not graph.complete
    assert graph.budget_spent == 2


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        build_graph(OMEGA, budget=0)


def test_dot_output_contents():
    dot = graph_to_dot(build_graph(parse(r"(\x. x) a"), BETA_ONLY))
    assert dot.startswith("digraph")
    assert 'n0 -> n1 [label="beta@root"];' in dot
    assert "incomplete" not in dot
    partial = graph_to_dot(build_graph(parse(r"(\x. x x x) (\x. x x x)"),
                                       budget=1))
    assert "incomplete" in partial


def test_json_output_contents():
    doc = json.loads(graph_to_json(build_graph(parse(r"(\x. x) a"),
                                               BETA_ONLY)))
    assert doc["root"] == 0
    assert doc["complete"] is True
    assert doc["nodes"][1] == "a"
    assert doc["edges"] == [{"from": 0, "to": 1, "rule": "beta", "path": []}]
