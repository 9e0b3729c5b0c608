"""Backend selection for the rewrite kernel.

The compiled extension ``permsn._ckernel`` (built from the Cython twin of
``permsn._kernel``) is preferred when it imported cleanly.  Set the
environment variable ``PERMSN_PURE_KERNEL=1`` to force the pure-Python
kernel, e.g. for benchmarking or debugging.
"""

import os

from permsn import _kernel as _pure

if os.environ.get("PERMSN_PURE_KERNEL"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from permsn import _ckernel as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

VAR = _pure.VAR
LAM = _pure.LAM
APP = _pure.APP
BETA = _pure.BETA
DELTA = _pure.DELTA
GAMMA = _pure.GAMMA
ASSOC = _pure.ASSOC
ALL_RULES = _pure.ALL_RULES

shift = _impl.shift
swap_adjacent = _impl.swap_adjacent
beta_contract = _impl.beta_contract
rule_matches = _impl.rule_matches
contract = _impl.contract
redexes = _impl.redexes
subterm = _impl.subterm
apply_at = _impl.apply_at
one_step = _impl.one_step
one_step_labeled = _impl.one_step_labeled
term_size = _impl.term_size
