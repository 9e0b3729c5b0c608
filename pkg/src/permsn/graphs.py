"""Reduction-graph construction and export as DOT or JSON.

Nodes are the reducts reachable from a root term, labeled by canonical
text; edges carry the rule and redex path that produced them.  Exploration
is breadth-first and budget-bounded, and the export records whether the
graph is complete.
"""

import json
from collections import deque
from dataclasses import dataclass

from permsn import kernel
from permsn.reduction import ALL_RULES, RedexOccurrence, Rule, rule_key
from permsn.sn import DEFAULT_BUDGET
from permsn.syntax import pretty


@dataclass(frozen=True)
class ReductionGraph:
    root: tuple
    nodes: tuple          # terms in discovery order, root first
    edges: tuple          # (source index, target index, RedexOccurrence)
    complete: bool        # every reachable reduct was expanded
    budget_spent: int


def build_graph(t, rules=ALL_RULES, budget=DEFAULT_BUDGET):
    """Breadth-first closure of one_step from t, expanding up to budget nodes."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    key = rule_key(rules)
    index = {t: 0}
    nodes = [t]
    edges = []
    queue = deque([t])
    expanded = 0
    complete = True
    while queue:
        if expanded >= budget:
            complete = False
            break
        u = queue.popleft()
        expanded += 1
        for v, path, r in kernel.one_step_labeled(u, key):
            if v not in index:
                index[v] = len(nodes)
                nodes.append(v)
                queue.append(v)
            edges.append((index[u], index[v],
                          RedexOccurrence(path, Rule(r))))
    return ReductionGraph(t, tuple(nodes), tuple(edges), complete, expanded)


def graph_to_dot(graph):
    """Render a ReductionGraph in DOT format."""
    lines = ["digraph reduction {"]
    if not graph.complete:
        lines.append('  graph [label="incomplete: budget %d exhausted"];'
                     % graph.budget_spent)
    for i, t in enumerate(graph.nodes):
        lines.append('  n%d [label="%s"];' % (i, pretty(t).replace('"', '\\"')))
    for src, dst, occ in graph.edges:
        lines.append('  n%d -> n%d [label="%s"];' % (src, dst, occ))
    lines.append("}")
    return "\n".join(lines)


def graph_to_json(graph):
    """Render a ReductionGraph as a JSON document mirroring the DOT output."""
    doc = {
        "root": 0,
        "complete": graph.complete,
        "budget_spent": graph.budget_spent,
        "nodes": [pretty(t) for t in graph.nodes],
        "edges": [{"from": src, "to": dst,
                   "rule": str(occ.rule), "path": list(occ.path)}
                  for src, dst, occ in graph.edges],
    }
    return json.dumps(doc, indent=2)
