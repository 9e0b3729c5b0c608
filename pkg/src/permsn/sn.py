"""Exhaustive reduction-graph exploration deciding strong normalization.

A term is strongly normalizing (SN) for a rule set when every reduction
sequence from it is finite; because reducts deduplicate structurally, that
holds iff the reachable reduct graph is finite and acyclic.  The explorer
walks that graph depth-first: a back edge to a node on the current path
yields a replayable non-SN witness, complete acyclic exploration yields the
longest-reduction length (computed as the DAG longest path during the same
traversal), and exceeding the node budget yields Unknown.
"""

import os
import sys
from dataclasses import dataclass, field

from permsn import kernel
from permsn.reduction import (ALL_RULES, RedexOccurrence, Rule, rule_key)
from permsn.syntax import default_free_names, parse, pretty
from permsn.terms import nb

DEFAULT_BUDGET = 50000

# the recursive kernel descends one frame per term level, and reduct graphs
# of duplicating terms reach depths well past CPython's default limit
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass(frozen=True)
class Sn:
    """Proven SN: longest reduction length and reachable-graph size."""

    height: int
    graph_nodes: int


@dataclass(frozen=True)
class NotSn:
    """Proven not SN: replaying cycle from the root revisits a term."""

    cycle: tuple  # RedexOccurrence steps, root term to the repeat
    cycle_length: int  # steps in the loop proper


@dataclass(frozen=True)
class Unknown:
    budget_spent: int


class SnCache:
    """Verdict memo keyed by (term, rule set).  Unknown is never stored.

    The file format keeps one record per line: canonical term text, sorted
    comma-separated rule list, SN/NOTSN tag, and the height (or cycle
    length).  Entries loaded from a file carry graph_nodes = 0 because the
    format does not record graph sizes; suite assertions never read that
    field from a cache hit.
    """

    def __init__(self):
        self.store = {}
        self.reducts = {}

    def get(self, t, key):
        return self.store.get((t, key))

    def put(self, t, key, verdict):
        if not isinstance(verdict, Unknown):
            self.store[(t, key)] = verdict

    def merge(self, other):
        """Merge a worker cache; overlapping entries must agree."""
        for (t, key), verdict in other.store.items():
            mine = self.store.get((t, key))
            if mine is not None:
                if isinstance(mine, Sn) != isinstance(verdict, Sn):
                    raise AssertionError("cache merge conflict for %s" % pretty(t))
                if isinstance(mine, Sn) and mine.height != verdict.height:
                    raise AssertionError("cache merge conflict for %s" % pretty(t))
            else:
                self.store[(t, key)] = verdict

    def save(self, path):
        with open(path, "w") as fh:
            for (t, key), verdict in self.store.items():
                rules = ",".join(str(Rule(r)) for r in key)
                if isinstance(verdict, Sn):
                    fh.write("%s\t%s\tSN\t%d\n" % (pretty(t), rules, verdict.height))
                else:
                    fh.write("%s\t%s\tNOTSN\t%d\n"
                             % (pretty(t), rules, verdict.cycle_length))

    def load(self, path):
        if not os.path.exists(path):
            return
        with open(path) as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                text, rules, tag, count = line.split("\t")
                t = parse(text, free_names=default_free_names_for(text))
                key = tuple(sorted(int(Rule[r.strip().upper()])
                                   for r in rules.split(",")))
                if tag == "SN":
                    self.put(t, key, Sn(int(count), 0))
                else:
                    self.put(t, key, NotSn((), int(count)))


def default_free_names_for(text):
    """Reconstruct the default free-name table a canonical text was printed
    with.

    Canonical text names free slot i by the default scheme regardless of
    occurrence order, so a plain first-occurrence parse could permute
    slots; seeding the table up to the largest default name present keeps
    the round trip exact.
    """
    import re

    from permsn.syntax import _FREE_POOL, free_name

    top = 0
    for name in re.findall(r"[a-zA-Z][a-zA-Z0-9_']*", text):
        base, _, num = name[0], name[1:], name[1:]
        if base in _FREE_POOL and (num == "" or num.isdigit()):
            slot = _FREE_POOL.index(base)
            if num:
                slot += int(num) * len(_FREE_POOL)
            top = max(top, slot + 1)
    return tuple(free_name(i) for i in range(top))


def sn_verdict(t, rules=ALL_RULES, budget=DEFAULT_BUDGET, cache=None,
               max_term_size=None):
    """Decide SN for t by exhaustive reduction-graph search.

    The budget bounds distinct expanded nodes, so verdicts do not depend on
    traversal order; a warmed cache returns the identical verdict it would
    have computed fresh (modulo graph_nodes on file-loaded entries).

    ``max_term_size`` optionally caps reduct sizes: meeting a larger reduct
    yields Unknown.  Terms that diverge by unbounded growth have no finite
    cycle witness, so without a cap the search would burn the whole node
    budget on ever-growing terms before giving up.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    key = rule_key(rules)
    if cache is not None:
        hit = cache.get(t, key)
        if hit is not None:
            return hit
    verdict = _explore(t, key, budget, cache, max_term_size)
    if cache is not None:
        cache.put(t, key, verdict)
    return verdict


def _reducts(t, key, cache):
    if cache is None:
        return kernel.one_step_labeled(t, key)
    hit = cache.reducts.get((t, key))
    if hit is None:
        hit = kernel.one_step_labeled(t, key)
        cache.reducts[(t, key)] = hit
    return hit


def _explore(root, key, budget, cache, max_term_size=None):
    heights = {}      # fully explored node -> longest path length
    onstack = {}      # node -> index in the current DFS path
    path_steps = []   # occurrence leading into the node at the same index
    # frame: [term, labeled reducts, next child index, best child height]
    stack = [[root, None, 0, -1]]
    onstack[root] = 0
    expanded = 0

    while stack:
        frame = stack[-1]
        t = frame[0]
        if frame[1] is None:
            if expanded >= budget:
                return Unknown(expanded)
            if (max_term_size is not None
                    and kernel.term_size(t) > max_term_size):
                return Unknown(expanded)
            expanded += 1
            frame[1] = _reducts(t, key, cache)
        children = frame[1]
        if frame[2] < len(children):
            child, cpath, crule = children[frame[2]]
            frame[2] += 1
            occ = RedexOccurrence(cpath, Rule(crule))
            if child in onstack:
                loop_start = onstack[child]
                witness = tuple(path_steps[loop_start:]) + (occ,)
                prefix = tuple(path_steps[:loop_start])
                return NotSn(prefix + witness, len(witness))
            if child in heights:
                if heights[child] > frame[3]:
                    frame[3] = heights[child]
                continue
            if cache is not None:
                hit = cache.get(child, key)
                # file-loaded NotSn entries have no witness steps and cannot
                # seed a replayable path, so only in-memory hits short-circuit
                if isinstance(hit, NotSn) and hit.cycle:
                    steps = tuple(path_steps) + (occ,) + hit.cycle
                    return NotSn(steps, hit.cycle_length)
            onstack[child] = len(stack)
            path_steps.append(occ)
            stack.append([child, None, 0, -1])
        else:
            heights[t] = frame[3] + 1
            del onstack[t]
            stack.pop()
            if path_steps:
                path_steps.pop()
            if stack and heights[t] > stack[-1][3]:
                stack[-1][3] = heights[t]

    return Sn(heights[root], len(heights))


def replay_cycle(t, verdict):
    """Apply a NotSn witness from t; returns the sequence of visited terms.

    Some visited term must repeat, which callers can assert.
    """
    seen = [t]
    for occ in verdict.cycle:
        t = kernel.apply_at(t, occ.path, int(occ.rule))
        seen.append(t)
    return seen


class NotProvenSn(RuntimeError):
    pass


def height(t, rules=ALL_RULES, budget=DEFAULT_BUDGET, cache=None):
    """Longest reduction length of t; raises unless t is proven SN."""
    verdict = sn_verdict(t, rules, budget, cache)
    if not isinstance(verdict, Sn):
        raise NotProvenSn("term not proven SN: %s" % pretty(t))
    return verdict.height


def height_weighted(sigma, t, rules=ALL_RULES, budget=DEFAULT_BUDGET,
                    cache=None):
    """Sum over the domain of sigma of nb(t, x) * height(sigma[x])."""
    return sum(nb(t, x) * height(u, rules, budget, cache)
               for x, u in sigma.items())


def substitution_measure(sigma, image_type_size, t, rules=ALL_RULES,
                         budget=DEFAULT_BUDGET, cache=None):
    """5-tuple induction measure for substitution arguments.

    Lexicographic components: common image-type size, height of t, size of
    t, occurrence-weighted height, occurrence-weighted size.  Requires t and
    every image proven SN for the rule set.
    """
    from permsn.terms import size, size_weighted

    return (image_type_size,
            height(t, rules, budget, cache),
            size(t),
            height_weighted(sigma, t, rules, budget, cache),
            size_weighted(sigma, t))


@dataclass
class HeadCriteria:
    """Verdicts for the head-position reducts of a spine term.

    When every recorded verdict is Sn the term itself must be SN.  The
    spine components (head and each argument) are always recorded, since
    the criterion's inductive measure assumes they terminate; the head and
    promoted verdicts appear only where the corresponding head class or
    redex argument exists.
    """

    head_verdicts: dict = field(default_factory=dict)
    promoted_verdicts: dict = field(default_factory=dict)
    component_verdicts: dict = field(default_factory=dict)
    all_hold: bool = True
    unknown: bool = False

    def record(self, slot, verdict, into):
        into[slot] = verdict
        if isinstance(verdict, Unknown):
            self.unknown = True
            self.all_hold = False
        elif not isinstance(verdict, Sn):
            self.all_hold = False


def sn_head_criteria(t, rules=ALL_RULES, budget=DEFAULT_BUDGET, cache=None):
    """Evaluate the head-reduct SN hypotheses for t = (H args), args nonempty."""
    from permsn.reduction import (HeadClass, head_arg, head_beta_reduct,
                                  head_class, head_delta_reduct,
                                  head_gamma_reduct, promote_arg_redex)
    from permsn.terms import spine

    sp = spine(t)
    if not sp.args:
        raise ValueError("term has no spine arguments")
    report = HeadCriteria()
    # the inductive measure behind the criterion assumes the spine
    # components themselves terminate, so their verdicts join the hypotheses
    report.record("head", sn_verdict(sp.head, rules, budget, cache),
                  report.component_verdicts)
    for i, m in enumerate(sp.args, start=1):
        report.record(i, sn_verdict(m, rules, budget, cache),
                      report.component_verdicts)
    classes = head_class(t)
    if HeadClass.DELTA_HEAD in classes:
        report.record("delta_head",
                      sn_verdict(head_delta_reduct(t), rules, budget, cache),
                      report.head_verdicts)
    if HeadClass.GAMMA_HEAD in classes:
        report.record("gamma_head",
                      sn_verdict(head_gamma_reduct(t), rules, budget, cache),
                      report.head_verdicts)
    if HeadClass.BETA_HEAD in classes:
        report.record("head_arg",
                      sn_verdict(head_arg(t), rules, budget, cache),
                      report.head_verdicts)
        report.record("beta_head",
                      sn_verdict(head_beta_reduct(t), rules, budget, cache),
                      report.head_verdicts)
    for i, m in enumerate(sp.args, start=1):
        if m[0] == kernel.APP and m[1][0] == kernel.LAM:
            report.record(i,
                          sn_verdict(promote_arg_redex(t, i), rules, budget,
                                     cache),
                          report.promoted_verdicts)
    return report


def expand_left_branch(t, path):
    r"""Eta-expand the subterm u on the left branch at path into (\x. u x).

    The left branch is the chain of application-function edges from the
    root; path must consist of those edges only.
    """
    if not path:
        return (kernel.LAM, (kernel.APP, kernel.shift(t, 1), (kernel.VAR, 0)))
    if t[0] != kernel.APP or path[0] != 0:
        raise ValueError("path leaves the left branch")
    return (kernel.APP, expand_left_branch(t[1], path[1:]), t[2])


def left_branch_paths(t):
    """All fun-edge paths from the root, root included."""
    out = []
    path = ()
    while True:
        out.append(path)
        if t[0] != kernel.APP:
            return out
        t = t[1]
        path = path + (0,)
