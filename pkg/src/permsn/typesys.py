r"""Intersection types, typing contexts and explicit derivation trees.

Types are arrow/intersection trees over atoms; there is no normalization
(``A /\ B`` and ``B /\ A`` are distinct) and no subtyping.  A derivation
stores its full conclusion (context, term, type) at every node, so checking
is purely local: each node is validated against its rule's condition and
its children's conclusions.

Contexts map free slots (root-level de Bruijn indices of the node's own
term) to types.  Crossing a binder shifts the context and adds slot 0, so
sibling premises of an application or intersection introduction must carry
literally identical contexts.
"""

import json
import re
from dataclasses import dataclass, field

from permsn.kernel import APP, LAM, VAR
from permsn.syntax import ParseError
from permsn.terms import free_vars


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Arrow:
    dom: object
    cod: object


@dataclass(frozen=True)
class Inter:
    left: object
    right: object


def type_size(ty):
    """Node count: atoms, arrows and intersections each count 1."""
    if isinstance(ty, Atom):
        return 1
    if isinstance(ty, Arrow):
        return 1 + type_size(ty.dom) + type_size(ty.cod)
    return 1 + type_size(ty.left) + type_size(ty.right)


def pretty_type(ty):
    if isinstance(ty, Atom):
        return ty.name
    if isinstance(ty, Arrow):
        dom = pretty_type(ty.dom)
        if isinstance(ty.dom, Arrow):
            dom = "(%s)" % dom
        return "%s -> %s" % (dom, pretty_type(ty.cod))
    left = pretty_type(ty.left)
    if not isinstance(ty.left, Atom):
        left = "(%s)" % left
    right = pretty_type(ty.right)
    if not isinstance(ty.right, Atom):
        right = "(%s)" % right
    return r"%s /\ %s" % (left, right)


_TYPE_TOKEN = re.compile(r"\s*(->|/\\|∧|\(|\)|[a-zA-Z][a-zA-Z0-9_']*)")


def parse_type(text):
    r"""Parse the concrete type syntax: "->" right associative, "/\" (or the
    unicode wedge) binds tighter, parentheses allowed."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if m is None:
            if not text[pos:].strip():
                break
            raise ParseError("unexpected character %r" % text[pos:].strip()[0], pos)
        tokens.append(m.group(1))
        pos = m.end()
    out, rest = _parse_arrow(tokens)
    if rest:
        raise ParseError("trailing type tokens %r" % (rest,), len(text))
    return out


def _parse_arrow(tokens):
    left, tokens = _parse_inter(tokens)
    if tokens and tokens[0] == "->":
        right, tokens = _parse_arrow(tokens[1:])
        return Arrow(left, right), tokens
    return left, tokens


def _parse_inter(tokens):
    left, tokens = _parse_type_atom(tokens)
    while tokens and tokens[0] in ("/\\", "∧"):
        right, tokens = _parse_type_atom(tokens[1:])
        left = Inter(left, right)
    return left, tokens


def _parse_type_atom(tokens):
    if not tokens:
        raise ParseError("expected a type", 0)
    tok = tokens[0]
    if tok == "(":
        inner, tokens = _parse_arrow(tokens[1:])
        if not tokens or tokens[0] != ")":
            raise ParseError("expected ')'", 0)
        return inner, tokens[1:]
    if tok in (")", "->", "/\\", "∧"):
        raise ParseError("expected a type, found %r" % tok, 0)
    return Atom(tok), tokens[1:]


# rule tags
AX = "Ax"
ARROW_E = "ArrowE"
ARROW_I = "ArrowI"
AND_E1 = "AndE1"
AND_E2 = "AndE2"
AND_I = "AndI"

RULES = (AX, ARROW_E, ARROW_I, AND_E1, AND_E2, AND_I)


@dataclass(frozen=True, eq=False)
class Derivation:
    rule: str
    ctx: dict
    term: tuple
    type: object
    children: tuple = ()


@dataclass(frozen=True)
class Violation:
    path: tuple
    reason: str

    def __str__(self):
        where = ".".join(str(i) for i in self.path) if self.path else "root"
        return "%s: %s" % (where, self.reason)


def bind(ctx, ty):
    """Context seen under one more binder: slot 0 gets ty, the rest shift."""
    out = {i + 1: t for i, t in ctx.items()}
    out[0] = ty
    return out


def check(d):
    """Validate every node's local condition; None when valid, else the
    first violation in preorder (its path plus a reason)."""
    return _check(d, ())


def _check(d, path):
    bad = _check_node(d, path)
    if bad is not None:
        return bad
    for i, child in enumerate(d.children):
        bad = _check(child, path + (i,))
        if bad is not None:
            return bad
    return None


def _arity(rule):
    return {AX: 0, ARROW_E: 2, ARROW_I: 1, AND_E1: 1, AND_E2: 1, AND_I: 2}[rule]


def _check_node(d, path):
    def bad(reason):
        return Violation(path, reason)

    if d.rule not in RULES:
        return bad("unknown rule %r" % d.rule)
    if len(d.children) != _arity(d.rule):
        return bad("%s expects %d premises, has %d"
                   % (d.rule, _arity(d.rule), len(d.children)))
    if d.rule == AX:
        if d.term[0] != VAR:
            return bad("axiom subject is not a variable")
        ty = d.ctx.get(d.term[1])
        if ty is None:
            return bad("variable %d not bound in the context" % d.term[1])
        if ty != d.type:
            return bad("axiom type differs from the context binding")
        return None
    if d.rule == ARROW_E:
        fun, arg = d.children
        if d.term[0] != APP or d.term[1] != fun.term or d.term[2] != arg.term:
            return bad("subject is not the application of the premises")
        if fun.ctx != d.ctx or arg.ctx != d.ctx:
            return bad("premise contexts differ from the conclusion context")
        if not isinstance(fun.type, Arrow):
            return bad("function premise does not have an arrow type")
        if fun.type.dom != arg.type:
            return bad("argument type differs from the arrow domain")
        if fun.type.cod != d.type:
            return bad("conclusion type differs from the arrow codomain")
        return None
    if d.rule == ARROW_I:
        (body,) = d.children
        if d.term[0] != LAM or d.term[1] != body.term:
            return bad("subject is not the abstraction of the premise")
        if not isinstance(d.type, Arrow):
            return bad("conclusion of an abstraction must be an arrow")
        if body.type != d.type.cod:
            return bad("premise type differs from the arrow codomain")
        if body.ctx != bind(d.ctx, d.type.dom):
            return bad("premise context is not the bound extension")
        return None
    if d.rule in (AND_E1, AND_E2):
        (prem,) = d.children
        if prem.term != d.term:
            return bad("elimination changes the subject")
        if prem.ctx != d.ctx:
            return bad("elimination changes the context")
        if not isinstance(prem.type, Inter):
            return bad("premise is not an intersection")
        want = prem.type.left if d.rule == AND_E1 else prem.type.right
        if d.type != want:
            return bad("conclusion is not the selected component")
        return None
    # AND_I
    left, right = d.children
    if left.term != d.term or right.term != d.term:
        return bad("introduction premises type a different subject")
    if left.ctx != d.ctx or right.ctx != d.ctx:
        return bad("introduction premises carry a different context")
    if d.type != Inter(left.type, right.type):
        return bad("conclusion is not the intersection of the premises")
    return None


def merge_contexts(g1, g2):
    """Pointwise merge; shared slots intersect, left component first.

    Returns (merged, plan1, plan2): each plan maps a slot to the
    intersection-elimination path (1 = left, 2 = right) recovering the
    original binding from the merged type.
    """
    merged = dict(g1)
    plan1 = {x: () for x in g1}
    plan2 = {}
    for x, ty in g2.items():
        if x in merged:
            merged[x] = Inter(merged[x], ty)
            plan1[x] = (1,)
            plan2[x] = (2,)
        else:
            merged[x] = ty
            plan2[x] = ()
    return merged, plan1, plan2


def merge_many(ctxs):
    """Left fold of merge_contexts with composed plans."""
    merged = {}
    plans = []
    for g in ctxs:
        plan = {}
        for x, ty in g.items():
            if x in merged:
                merged[x] = Inter(merged[x], ty)
                for earlier in plans:
                    if x in earlier:
                        earlier[x] = (1,) + earlier[x]
                plan[x] = (2,)
            else:
                merged[x] = ty
                plan[x] = ()
        plans.append(plan)
    return merged, plans


def follow_plan(ty, plan):
    for step in plan:
        if not isinstance(ty, Inter):
            raise ValueError("plan step into a non-intersection")
        ty = ty.left if step == 1 else ty.right
    return ty


class StrengthenError(ValueError):
    pass


def strengthen(d, ctx2, plans=None):
    """Re-root d under ctx2, rewriting axiom leaves through their plans.

    Every free slot of d's contexts must be bound in ctx2 and reach its old
    type via the plan's elimination path (an empty path means the binding
    is unchanged, so pure weakening needs no plans).  Bindings for binders
    introduced inside d are untouched.
    """
    if plans is None:
        plans = {}
    return _strengthen(d, ctx2, plans, 0)


def _outer_ctx(ctx2, depth):
    return {x + depth: ty for x, ty in ctx2.items()}


def _strengthen(d, ctx2, plans, depth):
    inner = {x: ty for x, ty in d.ctx.items() if x < depth}
    new_ctx = dict(inner)
    new_ctx.update(_outer_ctx(ctx2, depth))
    if d.rule == AX:
        x = d.term[1]
        if x >= depth:
            slot = x - depth
            if slot not in ctx2:
                raise StrengthenError("slot %d missing from the target context"
                                      % slot)
            plan = plans.get(slot, ())
            try:
                reached = follow_plan(ctx2[slot], plan)
            except ValueError as exc:
                raise StrengthenError(str(exc))
            if reached != d.type:
                raise StrengthenError("plan for slot %d does not reach the "
                                      "assumed type" % slot)
            leaf = Derivation(AX, new_ctx, d.term, ctx2[slot])
            return _eliminate(leaf, plan)
        return Derivation(AX, new_ctx, d.term, d.type)
    child_depth = depth + 1 if d.rule == ARROW_I else depth
    children = tuple(_strengthen(c, ctx2, plans, child_depth)
                     for c in d.children)
    return Derivation(d.rule, new_ctx, d.term, d.type, children)


def _eliminate(d, plan):
    """Wrap d in the elimination chain selecting along plan."""
    for step in plan:
        rule = AND_E1 if step == 1 else AND_E2
        ty = d.type.left if step == 1 else d.type.right
        d = Derivation(rule, d.ctx, d.term, ty, (d,))
    return d


def conclusion_free_slots(d):
    return free_vars(d.term)


def derivations_equal(d1, d2):
    """Structural equality (Derivation identity is deliberately nominal)."""
    return (d1.rule == d2.rule and d1.ctx == d2.ctx and d1.term == d2.term
            and d1.type == d2.type and len(d1.children) == len(d2.children)
            and all(derivations_equal(a, b)
                    for a, b in zip(d1.children, d2.children)))


def derivation_nodes(d):
    """All nodes in preorder, paired with their tree path."""
    out = []

    def walk(d, path):
        out.append((path, d))
        for i, c in enumerate(d.children):
            walk(c, path + (i,))

    walk(d, ())
    return out


@dataclass(frozen=True)
class Fairness:
    """A substitution whose images all carry one common type.

    The weight of a fair substitution in induction measures is the size of
    that common type.
    """

    sigma: tuple  # sorted (slot, term) pairs
    common_type: object

    @staticmethod
    def of(sigma, common_type):
        return Fairness(tuple(sorted(sigma.items())), common_type)

    def weight(self):
        return type_size(self.common_type)

    def validate(self, ctx, derivations):
        """Valid iff a checked derivation assigns every image the common
        type under the supplied context."""
        for slot, image in self.sigma:
            d = derivations.get(slot)
            if d is None:
                return False
            if d.term != image or d.type != self.common_type or d.ctx != ctx:
                return False
            if check(d) is not None:
                return False
        return True


# ---------------------------------------------------------------------------
# serialization

def derivation_to_json(d, free_names=None):
    """Tree-of-records encoding: one object per node with rule, context
    (name -> type text), term text, type text, binder name for
    introductions, and children."""
    from permsn.syntax import free_name, pretty_in_scope

    if free_names is None:
        top = max(d.ctx, default=-1) + 1
        free_names = tuple(free_name(i) for i in range(top))

    def node(d, binders):
        ctx = {}
        for i in sorted(d.ctx):
            if i < len(binders):
                name = binders[i]
            else:
                name = free_names[i - len(binders)]
            ctx[name] = pretty_type(d.ctx[i])
        rec = {
            "rule": d.rule,
            "context": ctx,
            "term": _print_term(d.term, binders, free_names),
            "type": pretty_type(d.type),
        }
        if d.rule == ARROW_I:
            binder = "b%d" % len(binders)
            rec["binder"] = binder
            rec["children"] = [node(d.children[0], [binder] + binders)]
        else:
            rec["children"] = [node(c, binders) for c in d.children]
        return rec

    return {"free_names": list(free_names), "root": node(d, [])}


def _print_term(t, binders, free_names):
    from permsn.syntax import pretty_in_scope

    return pretty_in_scope(t, list(binders), free_names)


def derivation_from_json(doc):
    from permsn.syntax import parse_with_names

    free_names = list(doc["free_names"])

    def resolve(name, binders):
        if name in binders:
            return binders.index(name)
        if name not in free_names:
            raise ValueError("unknown context name %r" % name)
        return len(binders) + free_names.index(name)

    def node(rec, binders):
        ctx = {resolve(name, binders): parse_type(text)
               for name, text in rec["context"].items()}
        term = _parse_scoped(rec["term"], binders, free_names)
        ty = parse_type(rec["type"])
        if rec["rule"] == ARROW_I:
            binder = rec["binder"]
            children = tuple(node(c, [binder] + binders)
                             for c in rec["children"])
        else:
            children = tuple(node(c, binders) for c in rec["children"])
        return Derivation(rec["rule"], ctx, term, ty, children)

    return node(doc["root"], [])


def _parse_scoped(text, binders, free_names):
    from permsn import syntax

    parser = syntax._Parser(syntax._tokenize(text), len(text), free_names)
    t = parser.term(list(binders))
    if parser.peek() is not None:
        raise ParseError("trailing input in node term", parser.here())
    if list(parser.free) != list(free_names):
        raise ValueError("node term mentions a name outside the tables")
    return t


def save_derivation(d, path, free_names=None):
    with open(path, "w") as fh:
        json.dump(derivation_to_json(d, free_names), fh, indent=1)


def load_derivation(path):
    with open(path) as fh:
        return derivation_from_json(json.load(fh))
