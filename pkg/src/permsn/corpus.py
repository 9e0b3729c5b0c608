"""Exhaustive enumeration of de Bruijn terms by size.

Size counts every constructor node (a variable is 1).  Enumeration is
duplicate-free and deterministic: ascending size, and within one size
variables first, then lambdas, then applications ordered by the size split
of the function part.
"""

from dataclasses import dataclass
from functools import lru_cache

from permsn.kernel import APP, LAM, VAR


@dataclass(frozen=True)
class CorpusSpec:
    max_size: int
    max_free_vars: int = 0
    closed_only: bool = True

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be >= 1")
        if self.max_free_vars < 0:
            raise ValueError("max_free_vars must be >= 0")


@lru_cache(maxsize=None)
def _terms_exact(n, k):
    """All terms of size exactly n with free indices < k, as a tuple."""
    if n < 1:
        return ()
    if n == 1:
        return tuple((VAR, i) for i in range(k))
    out = [(LAM, body) for body in _terms_exact(n - 1, k + 1)]
    for i in range(1, n - 1):
        for fun in _terms_exact(i, k):
            for arg in _terms_exact(n - 1 - i, k):
                out.append((APP, fun, arg))
    return tuple(out)


def enumerate_terms(spec):
    """Stream every term within the bounds of spec, each exactly once."""
    k = 0 if spec.closed_only else spec.max_free_vars
    for n in range(1, spec.max_size + 1):
        yield from _terms_exact(n, k)


@lru_cache(maxsize=None)
def count_terms_exact(n, k):
    """Independent counting recurrence used to cross-check enumeration."""
    if n < 1:
        return 0
    if n == 1:
        return k
    total = count_terms_exact(n - 1, k + 1)
    for i in range(1, n - 1):
        total += count_terms_exact(i, k) * count_terms_exact(n - 1 - i, k)
    return total


def count_terms(spec):
    k = 0 if spec.closed_only else spec.max_free_vars
    return sum(count_terms_exact(n, k) for n in range(1, spec.max_size + 1))


DEFAULT_SPECS = (CorpusSpec(max_size=9, max_free_vars=0, closed_only=True),
                 CorpusSpec(max_size=7, max_free_vars=2, closed_only=False))


def default_corpus(specs=DEFAULT_SPECS):
    """Deduplicated union of the given corpora, in enumeration order."""
    seen = set()
    for spec in specs:
        for t in enumerate_terms(spec):
            if t not in seen:
                seen.add(t)
                yield t
