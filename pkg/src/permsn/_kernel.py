"""Pure-Python rewrite kernel.

Terms are nested tuples with an integer tag in slot 0:

    (VAR, i)        de Bruijn index i
    (LAM, body)
    (APP, fun, arg)

Everything here is on the hot path of reduction-graph search, so the
representation stays primitive (hashable, structurally comparable) and the
functions avoid any object-layer indirection.  ``permsn._ckernel`` is a
compiled twin of this module with identical semantics; ``permsn.kernel``
selects one of the two at import time.

Paths are tuples of child selectors: 0 = lambda body / application function,
1 = application argument.
"""

VAR, LAM, APP = 0, 1, 2

BETA, DELTA, GAMMA, ASSOC = 0, 1, 2, 3
ALL_RULES = (BETA, DELTA, GAMMA, ASSOC)


def shift(t, d, cutoff=0):
    """Add d to every free index >= cutoff."""
    tag = t[0]
    if tag == VAR:
        if t[1] >= cutoff:
            return (VAR, t[1] + d)
        return t
    if tag == LAM:
        return (LAM, shift(t[1], d, cutoff + 1))
    return (APP, shift(t[1], d, cutoff), shift(t[2], d, cutoff))


def swap_adjacent(t, c=0):
    """Exchange the indices c and c+1 (used when two binders trade places)."""
    tag = t[0]
    if tag == VAR:
        i = t[1]
        if i == c:
            return (VAR, c + 1)
        if i == c + 1:
            return (VAR, c)
        return t
    if tag == LAM:
        return (LAM, swap_adjacent(t[1], c + 1))
    return (APP, swap_adjacent(t[1], c), swap_adjacent(t[2], c))


def beta_contract(body, arg):
    """Contract (\\. body) arg: substitute arg for index 0 and close the gap."""
    return _beta_go(body, 0, arg)


def _beta_go(t, j, arg):
    tag = t[0]
    if tag == VAR:
        i = t[1]
        if i == j:
            return shift(arg, j)
        if i > j:
            return (VAR, i - 1)
        return t
    if tag == LAM:
        return (LAM, _beta_go(t[1], j + 1, arg))
    return (APP, _beta_go(t[1], j, arg), _beta_go(t[2], j, arg))


def rule_matches(t, rule):
    """Does the left-hand pattern of rule match at the root of t?"""
    if t[0] != APP:
        return False
    f = t[1]
    if rule == BETA:
        return f[0] == LAM
    if rule == DELTA:
        return f[0] == LAM and f[1][0] == LAM
    if rule == GAMMA:
        return f[0] == APP and f[1][0] == LAM
    # ASSOC
    a = t[2]
    return a[0] == APP and a[1][0] == LAM


def contract(t, rule):
    """Root contractum for a matching rule.

    Side conditions of the permutation rules (the moved subterm must not
    capture the binder) hold by construction: anything pushed under a binder
    is shifted.
    """
    f = t[1]
    a = t[2]
    if rule == BETA:
        # (\. M) N  ->  M[0 := N]
        return beta_contract(f[1], a)
    if rule == DELTA:
        # (\.\. M) N  ->  \. ((\. M') N')  with the two binders of M swapped
        return (LAM, (APP, (LAM, swap_adjacent(f[1][1])), shift(a, 1)))
    if rule == GAMMA:
        # ((\. M) N) P  ->  (\. (M P')) N  with P shifted under the binder
        return (APP, (LAM, (APP, f[1][1], shift(a, 1))), f[2])
    # ASSOC: M ((\. N) P)  ->  (\. (M' N)) P  with M shifted under the binder
    return (APP, (LAM, (APP, shift(f, 1), a[1][1])), a[2])


def redexes(t, rules):
    """All (path, rule) pairs matching in t, preorder then rule order."""
    out = []
    _scan(t, rules, (), out)
    return out


def _scan(t, rules, path, out):
    tag = t[0]
    if tag == APP:
        for r in rules:
            if rule_matches(t, r):
                out.append((path, r))
        _scan(t[1], rules, path + (0,), out)
        _scan(t[2], rules, path + (1,), out)
    elif tag == LAM:
        _scan(t[1], rules, path + (0,), out)


def subterm(t, path):
    for step in path:
        tag = t[0]
        if tag == VAR:
            raise ValueError("path descends below a variable")
        if tag == LAM:
            if step != 0:
                raise ValueError("bad selector %d at a lambda" % step)
            t = t[1]
        else:
            t = t[step + 1]
    return t


def apply_at(t, path, rule):
    """Rewrite with rule at path; raises ValueError on pattern mismatch."""
    if not path:
        if not rule_matches(t, rule):
            raise ValueError("rule does not match at this position")
        return contract(t, rule)
    step = path[0]
    tag = t[0]
    if tag == VAR:
        raise ValueError("path descends below a variable")
    if tag == LAM:
        if step != 0:
            raise ValueError("bad selector %d at a lambda" % step)
        return (LAM, apply_at(t[1], path[1:], rule))
    if step == 0:
        return (APP, apply_at(t[1], path[1:], rule), t[2])
    if step == 1:
        return (APP, t[1], apply_at(t[2], path[1:], rule))
    raise ValueError("bad selector %d at an application" % step)


def one_step(t, rules):
    """Distinct one-step reducts, in redex enumeration order."""
    out = []
    seen = set()
    for path, rule in redexes(t, rules):
        u = apply_at(t, path, rule)
        if u not in seen:
            seen.add(u)
            out.append(u)
    return out


def one_step_labeled(t, rules):
    """Like one_step but keeps, per reduct, the first (path, rule) producing it."""
    out = []
    seen = set()
    for path, rule in redexes(t, rules):
        u = apply_at(t, path, rule)
        if u not in seen:
            seen.add(u)
            out.append((u, path, rule))
    return out


def term_size(t):
    """Constructor-node count (a variable counts 1)."""
    tag = t[0]
    if tag == VAR:
        return 1
    if tag == LAM:
        return 1 + term_size(t[1])
    return 1 + term_size(t[1]) + term_size(t[2])
