"""A lambda-calculus rewriting laboratory for beta plus permutation rules.

The package decides strong normalization by exhaustive reduction-graph
search, checks intersection-type derivations node by node, constructs
derivations for beta-SN terms, and machine-verifies on enumerated corpora
that beta-SN terms stay SN when the permutation rules are switched on.
"""

from permsn.kernel import BACKEND
from permsn.reduction import (ALL_RULES, BETA_ONLY, Rule, head_class,
                              normalize, one_step, redexes)
from permsn.sn import SnCache, sn_verdict, height
from permsn.syntax import parse, pretty
from permsn.terms import App, Lam, Var, free_vars, size, spine, subst
from permsn.infer import infer

__version__ = "0.1.0"

__all__ = [
    "ALL_RULES", "BACKEND", "BETA_ONLY", "App", "Lam", "Rule", "SnCache",
    "Var", "free_vars", "head_class", "height", "infer", "normalize",
    "one_step", "parse", "pretty", "redexes", "size", "sn_verdict",
    "spine", "subst", "__version__",
]
