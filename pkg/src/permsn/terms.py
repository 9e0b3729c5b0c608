"""Nameless lambda terms and the basic structural operations.

The internal representation is de Bruijn: alpha-equivalence is structural
equality, so terms can be dict keys and reducts deduplicate for free.  Free
variables of a whole term are indices counted at the root (index k under j
binders refers to free slot k - j).  A substitution is a plain dict mapping
free slots to terms.
"""

from dataclasses import dataclass

from permsn.kernel import APP, LAM, VAR, shift, term_size


def Var(i):
    if i < 0:
        raise ValueError("negative de Bruijn index")
    return (VAR, i)


def Lam(body):
    return (LAM, body)


def App(fun, arg):
    return (APP, fun, arg)


def is_var(t):
    return t[0] == VAR


def is_lam(t):
    return t[0] == LAM


def is_app(t):
    return t[0] == APP


size = term_size


def free_vars(t):
    """Free slots of t, as indices seen at the root."""
    out = set()
    _free(t, 0, out)
    return out


def _free(t, depth, out):
    tag = t[0]
    if tag == VAR:
        if t[1] >= depth:
            out.add(t[1] - depth)
    elif tag == LAM:
        _free(t[1], depth + 1, out)
    else:
        _free(t[1], depth, out)
        _free(t[2], depth, out)


def nb(t, x):
    """Number of free occurrences of slot x in t."""
    tag = t[0]
    if tag == VAR:
        return 1 if t[1] == x else 0
    if tag == LAM:
        return nb(t[1], x + 1)
    return nb(t[1], x) + nb(t[2], x)


def subst(t, x, u):
    """Replace every free occurrence of slot x in t by u, capture-avoiding.

    The slot itself stays allocated (no index renumbering); images pushed
    under binders are shifted.
    """
    return _subst(t, x, u)


def _subst(t, x, u):
    tag = t[0]
    if tag == VAR:
        if t[1] == x:
            return u
        return t
    if tag == LAM:
        return (LAM, _subst(t[1], x + 1, shift(u, 1)))
    return (APP, _subst(t[1], x, u), _subst(t[2], x, u))


def apply_substitution(t, sigma):
    """Simultaneous application of a slot -> term map."""
    return _subst_many(t, sigma, 0)


def _subst_many(t, sigma, depth):
    tag = t[0]
    if tag == VAR:
        i = t[1]
        if i >= depth and (i - depth) in sigma:
            return shift(sigma[i - depth], depth)
        return t
    if tag == LAM:
        return (LAM, _subst_many(t[1], sigma, depth + 1))
    return (APP, _subst_many(t[1], sigma, depth), _subst_many(t[2], sigma, depth))


@dataclass(frozen=True)
class Spine:
    """Unique decomposition t = head applied to args, head not an App."""

    head: tuple
    args: tuple

    def rebuild(self):
        return build_app(self.head, self.args)


def spine(t):
    args = []
    while t[0] == APP:
        args.append(t[2])
        t = t[1]
    args.reverse()
    return Spine(t, tuple(args))


def build_app(head, args):
    t = head
    for a in args:
        t = (APP, t, a)
    return t


def size_weighted(sigma, t):
    """Sum over the domain of sigma of nb(t, x) * size(sigma[x])."""
    return sum(nb(t, x) * term_size(u) for x, u in sigma.items())
