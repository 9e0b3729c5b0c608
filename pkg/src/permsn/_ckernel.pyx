# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewrite kernel: a Cython twin of ``permsn._kernel``.

Same tuple term representation and identical semantics; the win is static
typing of tags, indices and cutoffs plus compiled dispatch on the hot
reduction-graph path.  Backend agreement is asserted by the test suite.
"""

VAR, LAM, APP = 0, 1, 2

BETA, DELTA, GAMMA, ASSOC = 0, 1, 2, 3
ALL_RULES = (BETA, DELTA, GAMMA, ASSOC)


cpdef tuple shift(tuple t, long d, long cutoff=0):
    """Add d to every free index >= cutoff."""
    cdef long tag = t[0]
    if tag == 0:  # VAR
        if <long> t[1] >= cutoff:
            return (0, <long> t[1] + d)
        return t
    if tag == 1:  # LAM
        return (1, shift(t[1], d, cutoff + 1))
    return (2, shift(t[1], d, cutoff), shift(t[2], d, cutoff))


cpdef tuple swap_adjacent(tuple t, long c=0):
    """Exchange the indices c and c+1 (used when two binders trade places)."""
    cdef long tag = t[0]
    cdef long i
    if tag == 0:
        i = t[1]
        if i == c:
            return (0, c + 1)
        if i == c + 1:
            return (0, c)
        return t
    if tag == 1:
        return (1, swap_adjacent(t[1], c + 1))
    return (2, swap_adjacent(t[1], c), swap_adjacent(t[2], c))


cpdef tuple beta_contract(tuple body, tuple arg):
    """Contract (\\. body) arg: substitute arg for index 0 and close the gap."""
    return _beta_go(body, 0, arg)


cdef tuple _beta_go(tuple t, long j, tuple arg):
    cdef long tag = t[0]
    cdef long i
    if tag == 0:
        i = t[1]
        if i == j:
            return shift(arg, j)
        if i > j:
            return (0, i - 1)
        return t
    if tag == 1:
        return (1, _beta_go(t[1], j + 1, arg))
    return (2, _beta_go(t[1], j, arg), _beta_go(t[2], j, arg))


cpdef bint rule_matches(tuple t, long rule):
    """Does the left-hand pattern of rule match at the root of t?"""
    if <long> t[0] != 2:
        return False
    cdef tuple f = t[1]
    cdef tuple a
    if rule == 0:  # BETA
        return <long> f[0] == 1
    if rule == 1:  # DELTA
        return <long> f[0] == 1 and <long> (<tuple> f[1])[0] == 1
    if rule == 2:  # GAMMA
        return <long> f[0] == 2 and <long> (<tuple> f[1])[0] == 1
    a = t[2]
    return <long> a[0] == 2 and <long> (<tuple> a[1])[0] == 1


cpdef tuple contract(tuple t, long rule):
    """Root contractum for a matching rule.

    Side conditions of the permutation rules hold by construction: anything
    pushed under a binder is shifted.
    """
    cdef tuple f = t[1]
    cdef tuple a = t[2]
    if rule == 0:
        return beta_contract(f[1], a)
    if rule == 1:
        return (1, (2, (1, swap_adjacent((<tuple> f[1])[1])), shift(a, 1)))
    if rule == 2:
        return (2, (1, (2, (<tuple> f[1])[1], shift(a, 1))), f[2])
    return (2, (1, (2, shift(f, 1), (<tuple> a[1])[1])), a[2])


cpdef list redexes(tuple t, tuple rules):
    """All (path, rule) pairs matching in t, preorder then rule order."""
    cdef list out = []
    _scan(t, rules, (), out)
    return out


cdef void _scan(tuple t, tuple rules, tuple path, list out):
    cdef long tag = t[0]
    cdef long r
    if tag == 2:
        for r in rules:
            if rule_matches(t, r):
                out.append((path, r))
        _scan(t[1], rules, path + (0,), out)
        _scan(t[2], rules, path + (1,), out)
    elif tag == 1:
        _scan(t[1], rules, path + (0,), out)


cpdef tuple subterm(tuple t, tuple path):
    cdef long step, tag
    for step in path:
        tag = t[0]
        if tag == 0:
            raise ValueError("path descends below a variable")
        if tag == 1:
            if step != 0:
                raise ValueError("bad selector %d at a lambda" % step)
            t = t[1]
        else:
            t = t[step + 1]
    return t


cpdef tuple apply_at(tuple t, tuple path, long rule):
    """Rewrite with rule at path; raises ValueError on pattern mismatch."""
    if not path:
        if not rule_matches(t, rule):
            raise ValueError("rule does not match at this position")
        return contract(t, rule)
    cdef long step = path[0]
    cdef long tag = t[0]
    if tag == 0:
        raise ValueError("path descends below a variable")
    if tag == 1:
        if step != 0:
            raise ValueError("bad selector %d at a lambda" % step)
        return (1, apply_at(t[1], path[1:], rule))
    if step == 0:
        return (2, apply_at(t[1], path[1:], rule), t[2])
    if step == 1:
        return (2, t[1], apply_at(t[2], path[1:], rule))
    raise ValueError("bad selector %d at an application" % step)


cpdef list one_step(tuple t, tuple rules):
    """Distinct one-step reducts, in redex enumeration order."""
    cdef list out = []
    cdef set seen = set()
    cdef tuple u
    for path, rule in redexes(t, rules):
        u = apply_at(t, path, rule)
        if u not in seen:
            seen.add(u)
            out.append(u)
    return out


cpdef list one_step_labeled(tuple t, tuple rules):
    """Like one_step but keeps, per reduct, the first (path, rule) producing it."""
    cdef list out = []
    cdef set seen = set()
    cdef tuple u
    for path, rule in redexes(t, rules):
        u = apply_at(t, path, rule)
        if u not in seen:
            seen.add(u)
            out.append((u, path, rule))
    return out


cpdef long term_size(tuple t):
    """Constructor-node count (a variable counts 1)."""
    cdef long tag = t[0]
    if tag == 0:
        return 1
    if tag == 1:
        return 1 + term_size(t[1])
    return 1 + term_size(t[1]) + term_size(t[2])
