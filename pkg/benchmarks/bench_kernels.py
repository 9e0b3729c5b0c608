"""Benchmark the pure-Python kernel against the compiled extension.

Workload: exhaustive SN exploration over the closed corpus, which spends
essentially all its time in redex scanning, rewriting and reduct
deduplication -- the functions both kernels implement.

Run:  python3 benchmarks/bench_kernels.py [--max-size N] [--repeat K]
"""

import argparse
import importlib
import time


def explore_all(kernel, max_size, budget=50000):
    """Minimal SN search over every closed term, using only kernel calls."""
    from permsn.corpus import CorpusSpec, enumerate_terms

    rules = kernel.ALL_RULES
    reducts = {}

    def children(t):
        if t not in reducts:
            reducts[t] = kernel.one_step(t, rules)
        return reducts[t]

    verdicts = 0
    for root in enumerate_terms(CorpusSpec(max_size)):
        heights = {}
        onstack = set()
        stack = [[root, None, 0, -1]]
        onstack.add(root)
        expanded = 0
        verdict = None
        while stack:
            frame = stack[-1]
            t = frame[0]
            if frame[1] is None:
                if expanded >= budget:
                    verdict = "unknown"
                    break
                expanded += 1
                frame[1] = children(t)
            if frame[2] < len(frame[1]):
                child = frame[1][frame[2]]
                frame[2] += 1
                if child in onstack:
                    verdict = "notsn"
                    break
                if child in heights:
                    frame[3] = max(frame[3], heights[child])
                    continue
                onstack.add(child)
                stack.append([child, None, 0, -1])
            else:
                heights[t] = frame[3] + 1
                onstack.discard(t)
                stack.pop()
                if stack:
                    stack[-1][3] = max(stack[-1][3], heights[t])
        verdicts += 1
    return verdicts


def bench(module_name, max_size, repeat):
    kernel = importlib.import_module(module_name)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        n = explore_all(kernel, max_size)
        best = min(best, time.perf_counter() - start)
    return n, best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=9)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    results = {}
    for label, module in (("pure", "permsn._kernel"),
                          ("compiled", "permsn._ckernel")):
        try:
            n, secs = bench(module, args.max_size, args.repeat)
        except ImportError:
            print("%-9s unavailable" % label)
            continue
        results[label] = secs
        print("%-9s %5d terms  best of %d: %.3fs"
              % (label, n, args.repeat, secs))
    if "pure" in results and "compiled" in results:
        print("speedup: %.2fx" % (results["pure"] / results["compiled"]))


if __name__ == "__main__":
    main()
