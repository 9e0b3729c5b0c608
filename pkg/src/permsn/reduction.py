r"""The four rewrite rules, redex enumeration and normalization.

Rules::

    beta   (\x. M) N        ->  M[x := N]
    delta  ((\y.\x. M) N)   ->  \x. ((\y. M) N)        x not free in N
    gamma  ((\x. M) N P)    ->  ((\x. (M P)) N)        x not free in P
    assoc  (M ((\x. N) P))  ->  ((\x. (M N)) P)        x not free in M

The side conditions are discharged by construction: the de Bruijn kernel
shifts whatever moves under a binder.  Every structural pattern match is
therefore a legal redex.
"""

import enum
from dataclasses import dataclass

from permsn import kernel
from permsn.terms import Lam, App, build_app, is_lam, spine


class Rule(enum.IntEnum):
    BETA = kernel.BETA
    DELTA = kernel.DELTA
    GAMMA = kernel.GAMMA
    ASSOC = kernel.ASSOC

    def __str__(self):
        return self.name.lower()


ALL_RULES = frozenset(Rule)
BETA_ONLY = frozenset({Rule.BETA})

_RULE_BY_NAME = {r.name.lower(): r for r in Rule}


def parse_rules(text):
    """Parse a comma-separated rule list, e.g. "beta,gamma"."""
    rules = set()
    for part in text.split(","):
        part = part.strip().lower()
        if part not in _RULE_BY_NAME:
            raise ValueError("unknown rule %r" % part)
        rules.add(_RULE_BY_NAME[part])
    return frozenset(rules)


def rule_key(rules):
    """Canonical tuple for a rule set (sorted, deduplicated)."""
    return tuple(sorted(int(r) for r in rules))


@dataclass(frozen=True)
class RedexOccurrence:
    path: tuple
    rule: Rule

    def __str__(self):
        where = ".".join(str(s) for s in self.path) if self.path else "root"
        return "%s@%s" % (self.rule, where)


def redexes(t, rules=ALL_RULES):
    """Every applicable (path, rule) pair, preorder then rule order."""
    return [RedexOccurrence(path, Rule(r))
            for path, r in kernel.redexes(t, rule_key(rules))]


def apply(t, occ):
    """Rewrite at occ; raises ValueError if the pattern does not match."""
    return kernel.apply_at(t, occ.path, int(occ.rule))


def one_step(t, rules=ALL_RULES):
    """Distinct one-step reducts of t under the rule set."""
    return kernel.one_step(t, rule_key(rules))


def one_step_labeled(t, rules=ALL_RULES):
    """(reduct, occurrence) pairs, one per distinct reduct."""
    return [(u, RedexOccurrence(path, Rule(r)))
            for u, path, r in kernel.one_step_labeled(t, rule_key(rules))]


class HeadClass(enum.Enum):
    BETA_HEAD = "beta"
    GAMMA_HEAD = "gamma"
    DELTA_HEAD = "delta"


def head_class(t):
    """Head-reducibility classes of t (non-exclusive)."""
    sp = spine(t)
    out = set()
    if is_lam(sp.head) and len(sp.args) >= 1:
        out.add(HeadClass.BETA_HEAD)
        if len(sp.args) >= 2:
            out.add(HeadClass.GAMMA_HEAD)
        if is_lam(sp.head[1]):
            out.add(HeadClass.DELTA_HEAD)
    return frozenset(out)


def _require(t, cls):
    if cls not in head_class(t):
        raise ValueError("term is not %s reducible at the head" % cls.value)
    return spine(t)


def head_arg(t):
    """First spine argument of a beta-head-reducible term."""
    return _require(t, HeadClass.BETA_HEAD).args[0]


def head_beta_reduct(t):
    """Contract the head beta redex and reapply the remaining arguments."""
    sp = _require(t, HeadClass.BETA_HEAD)
    return build_app(kernel.beta_contract(sp.head[1], sp.args[0]), sp.args[1:])


def head_gamma_reduct(t):
    r"""Pull the second argument under the head binder: ((\x.(M P)) N) args."""
    sp = _require(t, HeadClass.GAMMA_HEAD)
    body = sp.head[1]
    first, second = sp.args[0], sp.args[1]
    rearranged = App(Lam(App(body, kernel.shift(second, 1))), first)
    return build_app(rearranged, sp.args[2:])


def head_delta_reduct(t):
    """Push the first argument under the outer of two head binders."""
    sp = _require(t, HeadClass.DELTA_HEAD)
    inner = sp.head[1][1]
    rearranged = Lam(App(Lam(kernel.swap_adjacent(inner)),
                         kernel.shift(sp.args[0], 1)))
    return build_app(rearranged, sp.args[1:])


def promote_arg_redex(t, i):
    r"""Put the beta redex at spine argument i (1-based) in head position.

    For t = (H M1 ... Mn) with Mi = ((\x. N) P) this builds
    ((\x. (H M1 ... M(i-1) N)) P M(i+1) ... Mn), shifting everything moved
    under the new binder.
    """
    sp = spine(t)
    if not 1 <= i <= len(sp.args):
        raise ValueError("argument position %d out of range" % i)
    m = sp.args[i - 1]
    if not (m[0] == kernel.APP and m[1][0] == kernel.LAM):
        raise ValueError("argument %d is not a beta redex" % i)
    inner_head = kernel.shift(sp.head, 1)
    inner_args = [kernel.shift(a, 1) for a in sp.args[:i - 1]] + [m[1][1]]
    inner = build_app(inner_head, inner_args)
    return build_app(Lam(inner), (m[2],) + sp.args[i:])


class Strategy(enum.Enum):
    LEFTMOST_OUTERMOST = "leftmost-outermost"
    RIGHTMOST_INNERMOST = "rightmost-innermost"


@dataclass(frozen=True)
class NormalForm:
    term: tuple
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    term: tuple


def normalize(t, rules=ALL_RULES, strategy=Strategy.LEFTMOST_OUTERMOST,
              fuel=1000):
    """Repeatedly contract the first redex under the strategy ordering."""
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    result = _reduce(t, rules, strategy, fuel, trace=None)
    return result


def normalize_trace(t, rules=ALL_RULES, strategy=Strategy.LEFTMOST_OUTERMOST,
                    fuel=1000):
    """Like normalize, but also returns the list of (occurrence, term) steps."""
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    trace = []
    result = _reduce(t, rules, strategy, fuel, trace)
    return result, trace


def _reduce(t, rules, strategy, fuel, trace):
    key = rule_key(rules)
    steps = 0
    while steps < fuel:
        occs = kernel.redexes(t, key)
        if not occs:
            return NormalForm(t, steps)
        if strategy is Strategy.LEFTMOST_OUTERMOST:
            path, r = occs[0]
        else:
            path, r = occs[-1]
        t = kernel.apply_at(t, path, r)
        steps += 1
        if trace is not None:
            trace.append((RedexOccurrence(path, Rule(r)), t))
    if kernel.redexes(t, key):
        return FuelExhausted(t)
    return NormalForm(t, steps)
