r"""Constructive type inference for beta-SN terms.

Every term whose beta reductions all terminate receives a checkable
derivation in the intersection type system.  The algorithm recurses on the
pair (longest beta reduction, term size), which strictly decreases
lexicographically at every recursive call; the recorded call trace makes
that executable and checkable.

The interesting case is a head redex ((\x. a) b c...): the term is first
contracted to (a[x := b] c...), that reduct is inferred, and the types its
derivation assigns to the residual copies of b are intersected to become
the type of both x and b when the redex is rebuilt.  The residual positions
are tracked through the substitution (an occurrence ledger), and the
ripped-out sub-derivations for the copies are reused verbatim to type b.
"""

from dataclasses import dataclass, field

from permsn.kernel import APP, LAM, VAR, shift
from permsn.reduction import ALL_RULES, BETA_ONLY
from permsn.sn import DEFAULT_BUDGET, Sn, height, sn_verdict
from permsn.terms import build_app, nb, size, spine
from permsn.typesys import (AND_E1, AND_E2, AND_I, ARROW_E, ARROW_I, AX,
                            Arrow, Atom, Derivation, Inter, check,
                            merge_many, strengthen, _eliminate)


class InferenceError(RuntimeError):
    """The produced derivation failed its own checker (must be impossible)."""


@dataclass
class TraceNode:
    term: tuple
    height_beta: int
    size: int
    children: list = field(default_factory=list)


@dataclass
class InferenceResult:
    ctx: dict
    type: object
    derivation: Derivation
    trace: TraceNode
    max_depth: int


def infer(t, budget=DEFAULT_BUDGET, cache=None):
    """Infer a context, type and checkable derivation for a beta-SN term.

    Raises NotProvenSn when the oracle cannot prove the precondition.
    """
    run = _Run(budget, cache)
    ctx, ty, deriv, trace = run.go(t, 1)
    bad = check(deriv)
    if bad is not None:
        raise InferenceError("internal: produced derivation is invalid: %s" % bad)
    if deriv.term != t or deriv.ctx != ctx or deriv.type != ty:
        raise InferenceError("internal: derivation concludes a different judgment")
    return InferenceResult(ctx, ty, deriv, trace, run.max_depth)


class _Run:
    def __init__(self, budget, cache):
        self.budget = budget
        self.cache = cache
        self.counter = 0
        self.max_depth = 0

    def fresh(self):
        atom = Atom("a%d" % self.counter)
        self.counter += 1
        return atom

    def go(self, t, depth):
        self.max_depth = max(self.max_depth, depth)
        trace = TraceNode(t, height(t, BETA_ONLY, self.budget, self.cache),
                          size(t))
        tag = t[0]
        if tag == VAR:
            ctx, ty, deriv = self._var(t)
        elif tag == LAM:
            ctx, ty, deriv = self._lam(t, depth, trace)
        else:
            sp = spine(t)
            if sp.head[0] == VAR:
                ctx, ty, deriv = self._var_head(sp, depth, trace)
            else:
                ctx, ty, deriv = self._head_redex(sp, depth, trace)
        return ctx, ty, deriv, trace

    def _sub(self, t, depth, trace):
        ctx, ty, deriv, child = self.go(t, depth + 1)
        trace.children.append(child)
        return ctx, ty, deriv

    def _var(self, t):
        atom = self.fresh()
        ctx = {t[1]: atom}
        return ctx, atom, Derivation(AX, ctx, t, atom)

    def _lam(self, t, depth, trace):
        body_ctx, body_ty, body = self._sub(t[1], depth, trace)
        if 0 in body_ctx:
            dom = body_ctx[0]
        else:
            dom = self.fresh()
            wide = dict(body_ctx)
            wide[0] = dom
            body = strengthen(body, wide)
        ctx = {i - 1: ty for i, ty in body_ctx.items() if i > 0}
        arrow = Arrow(dom, body_ty)
        return ctx, arrow, Derivation(ARROW_I, ctx, t, arrow, (body,))

    def _var_head(self, sp, depth, trace):
        # t = (x v1 ... vn): infer the arguments, merge their contexts, and
        # give x the intersection of its argument-side types with a fresh
        # arrow consuming the argument types
        h = sp.head[1]
        results = [self._sub(v, depth, trace) for v in sp.args]
        merged, plans = merge_many([ctx for ctx, _, _ in results])
        arg_types = [ty for _, ty, _ in results]
        result_atom = self.fresh()
        arrow = result_atom
        for ty in reversed(arg_types):
            arrow = Arrow(ty, arrow)
        if h in merged:
            head_ty = Inter(merged[h], arrow)
            for plan in plans:
                if h in plan:
                    plan[h] = (1,) + plan[h]
        else:
            head_ty = arrow
        final_ctx = dict(merged)
        final_ctx[h] = head_ty
        cur = Derivation(AX, final_ctx, sp.head, head_ty)
        if h in merged:
            cur = Derivation(AND_E2, final_ctx, sp.head, arrow, (cur,))
        cur_ty = arrow
        for (ctx_j, _, d_j), plan in zip(results, plans):
            arg = strengthen(d_j, final_ctx, plan)
            term = (APP, cur.term, arg.term)
            cur = Derivation(ARROW_E, final_ctx, term, cur_ty.cod, (cur, arg))
            cur_ty = cur_ty.cod
        return final_ctx, result_atom, cur

    def _head_redex(self, sp, depth, trace):
        # t = ((\x. a) b c...): contract the head beta redex and rebuild
        body = sp.head[1]
        b = sp.args[0]
        rest = sp.args[1:]
        if nb(body, 0) > 0:
            return self._head_redex_occurring(sp, body, b, rest, depth, trace)
        return self._head_redex_vacuous(sp, body, b, rest, depth, trace)

    def _head_redex_occurring(self, sp, body, b, rest, depth, trace):
        contracted, marks = _beta_marked(body, b)
        prefix = (0,) * len(rest)
        marks = {(prefix + path): mark_depth for path, mark_depth in marks}
        reduct = build_app(contracted, rest)
        ctx, ty, deriv = self._sub(reduct, depth, trace)

        rips = _collect_marked(deriv, marks)
        if not rips:
            raise InferenceError("internal: residual occurrences not found")
        parts = [node.type for node, _, _ in rips]
        var_ty = parts[0]
        for part in parts[1:]:
            var_ty = Inter(var_ty, part)
        n = len(rips)
        rip_plans = {}
        arg_derivs = []
        for idx, (node, _, mark_depth) in enumerate(rips, start=1):
            plan = (1,) * (n - idx) + ((2,) if idx > 1 else ())
            rip_plans[id(node)] = (mark_depth, plan)
            arg_derivs.append(_drop_binders(node, mark_depth))

        d_b = arg_derivs[0]
        for extra in arg_derivs[1:]:
            d_b = Derivation(AND_I, ctx, b, Inter(d_b.type, extra.type),
                             (d_b, extra))

        fun_path, d_fun = _find_spine_fun(deriv, len(rest))
        d_body = _open_binder(d_fun, rip_plans, var_ty)
        if d_body.term != body:
            raise InferenceError("internal: rebuilt body does not match")
        d_lam = Derivation(ARROW_I, ctx, sp.head, Arrow(var_ty, d_fun.type),
                           (d_body,))
        d_redex = Derivation(ARROW_E, ctx, (APP, sp.head, b), d_fun.type,
                             (d_lam, d_b))
        final = _replace(deriv, fun_path, d_redex)
        return ctx, ty, final

    def _head_redex_vacuous(self, sp, body, b, rest, depth, trace):
        reduct = build_app(shift(body, -1), rest)
        ctx1, ty, d1 = self._sub(reduct, depth, trace)
        ctx2, b_ty, d2 = self._sub(b, depth, trace)
        merged, plans = merge_many([ctx1, ctx2])
        d1 = strengthen(d1, merged, plans[0])
        d2 = strengthen(d2, merged, plans[1])

        fun_path, d_fun = _find_spine_fun(d1, len(rest))
        d_body = _open_binder(d_fun, {}, b_ty)
        if d_body.term != body:
            raise InferenceError("internal: rebuilt body does not match")
        d_lam = Derivation(ARROW_I, merged, sp.head, Arrow(b_ty, d_fun.type),
                           (d_body,))
        d_redex = Derivation(ARROW_E, merged, (APP, sp.head, b), d_fun.type,
                             (d_lam, d2))
        final = _replace(d1, fun_path, d_redex)
        return merged, ty, final


# ---------------------------------------------------------------------------
# derivation surgery

def _beta_marked(body, arg):
    """Head beta contraction that also reports where copies of arg land.

    Returns (body[0 := arg], [(path, binder depth)]); the residual at depth
    s is shift(arg, s).
    """
    marks = []

    def go(t, j, path):
        tag = t[0]
        if tag == VAR:
            i = t[1]
            if i == j:
                marks.append((path, j))
                return shift(arg, j)
            if i > j:
                return (VAR, i - 1)
            return t
        if tag == LAM:
            return (LAM, go(t[1], j + 1, path + (0,)))
        return (APP, go(t[1], j, path + (0,)), go(t[2], j, path + (1,)))

    return go(body, 0, ()), marks


def _collect_marked(d, marks):
    """Outermost derivation nodes sitting at marked term positions.

    An intersection introduction duplicates its subject, so one marked
    position can surface in several branches; all of them are collected,
    in derivation preorder.
    """
    found = []

    def walk(d, pos):
        if pos in marks:
            found.append((d, pos, marks[pos]))
            return
        if d.rule == ARROW_E:
            walk(d.children[0], pos + (0,))
            walk(d.children[1], pos + (1,))
        elif d.rule == ARROW_I:
            walk(d.children[0], pos + (0,))
        elif d.rule in (AND_E1, AND_E2):
            walk(d.children[0], pos)
        elif d.rule == AND_I:
            walk(d.children[0], pos)
            walk(d.children[1], pos)

    walk(d, ())
    return found


def _find_spine_fun(d, k):
    """Locate the outermost node at term position fun^k; returns its tree
    path and the node.  The spine of an inferred derivation carries only
    application eliminations and intersection eliminations."""
    path = ()
    pos = 0
    while pos < k:
        if d.rule == ARROW_E:
            d = d.children[0]
            path = path + (0,)
            pos += 1
        elif d.rule in (AND_E1, AND_E2):
            d = d.children[0]
            path = path + (0,)
        else:
            raise InferenceError("internal: unexpected %s on the spine" % d.rule)
    return path, d


def _recompute_term(rule, old, children):
    if rule == ARROW_E:
        return (APP, children[0].term, children[1].term)
    if rule == ARROW_I:
        return (LAM, children[0].term)
    if rule in (AND_E1, AND_E2, AND_I):
        return children[0].term
    return old


def _replace(d, path, repl):
    """Swap in repl at the tree path, recomputing subject terms upward."""
    if not path:
        return repl
    children = list(d.children)
    children[path[0]] = _replace(children[path[0]], path[1:], repl)
    children = tuple(children)
    return Derivation(d.rule, d.ctx, _recompute_term(d.rule, d.term, children),
                      d.type, children)


def _drop_binders(d, s, j=0):
    """Strip s enclosing binder slots (indices [j, j+s)) from a derivation
    whose subject provably never mentions them."""
    if s == 0:
        return d
    new_ctx = {}
    for i, ty in d.ctx.items():
        if i < j:
            new_ctx[i] = ty
        elif i >= j + s:
            new_ctx[i - s] = ty
    term = shift(d.term, -s, j)
    child_j = j + 1 if d.rule == ARROW_I else j
    children = tuple(_drop_binders(c, s, child_j) for c in d.children)
    return Derivation(d.rule, new_ctx, term, d.type, children)


def _ctx_insert(ctx, j, ty):
    out = {}
    for i, t in ctx.items():
        out[i if i < j else i + 1] = t
    out[j] = ty
    return out


def _open_binder(d, rip_plans, var_ty, j=0):
    """Insert a fresh binder slot at depth j; nodes registered in rip_plans
    become axiom leaves on the new variable followed by their elimination
    chain, everything else has the slot woven into its context."""
    info = rip_plans.get(id(d))
    new_ctx = _ctx_insert(d.ctx, j, var_ty)
    if info is not None:
        mark_depth, plan = info
        if mark_depth != j:
            raise InferenceError("internal: mark depth mismatch")
        leaf = Derivation(AX, new_ctx, (VAR, j), var_ty)
        chained = _eliminate(leaf, plan)
        if chained.type != d.type:
            raise InferenceError("internal: elimination chain misses the "
                                 "assigned type")
        return chained
    if d.rule == AX:
        i = d.term[1]
        term = (VAR, i + 1) if i >= j else d.term
        return Derivation(AX, new_ctx, term, d.type)
    child_j = j + 1 if d.rule == ARROW_I else j
    children = tuple(_open_binder(c, rip_plans, var_ty, child_j)
                     for c in d.children)
    return Derivation(d.rule, new_ctx, _recompute_term(d.rule, d.term, children),
                      d.type, children)


# ---------------------------------------------------------------------------
# diagnostics

@dataclass(frozen=True)
class MeasureViolation:
    parent: tuple
    child: tuple
    parent_measure: tuple
    child_measure: tuple


def measure_trace_check(result):
    """Every recursive call must strictly decrease (beta height, size)
    lexicographically; returns None or the first violation."""

    def walk(node):
        parent_measure = (node.height_beta, node.size)
        for child in node.children:
            child_measure = (child.height_beta, child.size)
            if not child_measure < parent_measure:
                return MeasureViolation(node.term, child.term,
                                        parent_measure, child_measure)
            bad = walk(child)
            if bad is not None:
                return bad
        return None

    return walk(result.trace)


@dataclass(frozen=True)
class ConsequenceReport:
    term: tuple
    height_beta: int
    height_all: int
    sn_for_all: bool


def typable_consequence(t, result=None, budget=DEFAULT_BUDGET, cache=None):
    """A term that infers a type must be SN for the full rule set."""
    if result is None:
        result = infer(t, budget, cache)
    verdict = sn_verdict(t, ALL_RULES, budget, cache)
    return ConsequenceReport(t,
                             result.trace.height_beta,
                             verdict.height if isinstance(verdict, Sn) else -1,
                             isinstance(verdict, Sn))
