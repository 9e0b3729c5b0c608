"""The compiled and pure term kernels must agree on every operation."""

import os
import subprocess
import sys

from permsn import _kernel, kernel
from permsn.corpus import CorpusSpec, enumerate_terms

try:
    from permsn import _ckernel
except ImportError:
    _ckernel = None

ALL = (0, 1, 2, 3)


def test_backend_name_is_reported():
    assert kernel.BACKEND in ("pure", "compiled")


def test_selected_backend_matches_availability():
    if os.environ.get("PERMSN_PURE_KERNEL") == "1":
        assert kernel.BACKEND == "pure"
    elif _ckernel is not None:
        assert kernel.BACKEND == "compiled"
    else:
        assert kernel.BACKEND == "pure"


def test_backends_agree_on_the_corpus():
    if _ckernel is None:
        return
    for t in enumerate_terms(CorpusSpec(7, 2, closed_only=False)):
        assert _ckernel.term_size(t) == _kernel.term_size(t)
        assert _ckernel.shift(t, 1) == _kernel.shift(t, 1)
        assert _ckernel.redexes(t, ALL) == _kernel.redexes(t, ALL)
        assert _ckernel.one_step(t, ALL) == _kernel.one_step(t, ALL)
        assert (_ckernel.one_step_labeled(t, ALL)
                == _kernel.one_step_labeled(t, ALL))
        for path, r in _kernel.redexes(t, ALL):
            assert (_ckernel.apply_at(t, path, r)
                    == _kernel.apply_at(t, path, r))


def test_backends_agree_on_contractions():
    if _ckernel is None:
        return
    redex_body = (2, (0, 0), (0, 0))
    arg = (1, redex_body)
    assert (_ckernel.beta_contract(redex_body, arg)
            == _kernel.beta_contract(redex_body, arg))
    assert _ckernel.swap_adjacent(redex_body) == _kernel.swap_adjacent(redex_body)


def test_environment_variable_forces_the_pure_backend():
    env = dict(os.environ, PERMSN_PURE_KERNEL="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from permsn import kernel; print(kernel.BACKEND)"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"
