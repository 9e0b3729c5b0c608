r"""Command-line interface.

Subcommands operate on terms written in a lambda-calculus surface syntax
(``\x. x y``); the verify subcommands run the machine-checked suites over
enumerated corpora and exit nonzero unless every assertion passes with
zero Unknown verdicts.
"""

import argparse
import os
import random
import sys

from permsn.corpus import DEFAULT_SPECS, CorpusSpec, count_terms, enumerate_terms
from permsn.graphs import build_graph, graph_to_dot, graph_to_json
from permsn.infer import infer, measure_trace_check
from permsn.reduction import (ALL_RULES, Strategy, apply, normalize,
                              normalize_trace, parse_rules, redexes,
                              FuelExhausted)
from permsn.sn import (DEFAULT_BUDGET, NotSn, Sn, SnCache, Unknown,
                       replay_cycle, sn_verdict)
from permsn.suites import ALL_SUITES, run_suites
from permsn.syntax import parse, pretty
from permsn.typesys import check, load_derivation, pretty_type, save_derivation

CACHE_DIR_ENV = "PERMSN_CACHE_DIR"


def _default_cache_path(name="sn-cache.tsv"):
    base = os.environ.get(CACHE_DIR_ENV)
    if base is None:
        return None
    return os.path.join(base, name)


def _open_cache(args):
    cache = SnCache()
    path = args.cache or _default_cache_path()
    if path:
        cache.load(path)
    return cache, path


def _save_cache(cache, path):
    if path:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        cache.save(path)


def _term(args):
    return parse(args.term)


def _rules(args):
    return parse_rules(args.rules) if args.rules else ALL_RULES


def cmd_parse(args):
    t = parse(args.term)
    print(pretty(t))
    print(repr(t))
    return 0


def cmd_reduce(args):
    t = _term(args)
    occs = redexes(t, _rules(args))
    if args.at is not None:
        wanted = tuple(int(x) for x in args.at.split(".") if x != "")
        occs = [o for o in occs if o.path == wanted]
        if not occs:
            print("no redex at path", args.at, file=sys.stderr)
            return 1
    for occ in occs:
        print("%-24s %s" % (occ, pretty(apply(t, occ))))
    return 0


def cmd_normalize(args):
    t = _term(args)
    strategy = (Strategy.RIGHTMOST_INNERMOST if args.innermost
                else Strategy.LEFTMOST_OUTERMOST)
    result = normalize(t, _rules(args), strategy, args.fuel)
    if isinstance(result, FuelExhausted):
        print("fuel exhausted at", pretty(result.term))
        return 1
    print("%s  [%d steps]" % (pretty(result.term), result.steps))
    return 0


def cmd_trace(args):
    t = _term(args)
    strategy = (Strategy.RIGHTMOST_INNERMOST if args.innermost
                else Strategy.LEFTMOST_OUTERMOST)
    result, steps = normalize_trace(t, _rules(args), strategy, args.fuel)
    print("%4d %-20s %s" % (0, "start", pretty(t)))
    for i, (occ, u) in enumerate(steps, start=1):
        print("%4d %-20s %s" % (i, occ, pretty(u)))
    if isinstance(result, FuelExhausted):
        print("fuel exhausted")
        return 1
    return 0


def cmd_sn(args):
    t = _term(args)
    cache, path = _open_cache(args)
    verdict = sn_verdict(t, _rules(args), args.budget, cache)
    _save_cache(cache, path)
    if isinstance(verdict, Sn):
        print("SN eta=%d graph_nodes=%d" % (verdict.height, verdict.graph_nodes))
        return 0
    if isinstance(verdict, NotSn):
        print("NOT SN cycle_length=%d" % verdict.cycle_length)
        for u in replay_cycle(t, verdict):
            print("  " + pretty(u))
        return 0
    print("UNKNOWN budget_spent=%d" % verdict.budget_spent)
    return 1


def cmd_eta(args):
    t = _term(args)
    cache, path = _open_cache(args)
    verdict = sn_verdict(t, _rules(args), args.budget, cache)
    _save_cache(cache, path)
    if not isinstance(verdict, Sn):
        print("term not proven SN", file=sys.stderr)
        return 1
    print(verdict.height)
    return 0


def cmd_infer(args):
    t = _term(args)
    cache, path = _open_cache(args)
    result = infer(t, args.budget, cache)
    _save_cache(cache, path)
    names = {i: n for i, n in enumerate(_free_name_table(t))}
    ctx_text = ", ".join("%s: %s" % (names.get(i, "?%d" % i), pretty_type(ty))
                         for i, ty in sorted(result.ctx.items()))
    print("{%s} |- %s : %s" % (ctx_text, pretty(t), pretty_type(result.type)))
    violation = measure_trace_check(result)
    if violation is not None:
        print("measure violation:", violation, file=sys.stderr)
        return 1
    if args.emit_derivation:
        save_derivation(result.derivation, args.emit_derivation)
        print("derivation written to", args.emit_derivation)
    return 0


def _free_name_table(t):
    from permsn.syntax import default_free_names

    return default_free_names(t)


def cmd_check(args):
    deriv = load_derivation(args.file)
    violation = check(deriv)
    if violation is None:
        print("valid: %s : %s" % (pretty(deriv.term), pretty_type(deriv.type)))
        return 0
    print("invalid at %s: %s" % (list(violation.path), violation.reason))
    return 1


def cmd_graph(args):
    t = _term(args)
    graph = build_graph(t, _rules(args), args.budget)
    doc = graph_to_json(graph) if args.format == "json" else graph_to_dot(graph)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    return 0 if graph.complete else 1


def _specs(args):
    if args.max_size is None and args.free_vars is None:
        return DEFAULT_SPECS
    max_size = args.max_size if args.max_size is not None else 9
    free_vars = args.free_vars if args.free_vars is not None else 0
    if free_vars == 0:
        return (CorpusSpec(max_size),)
    return (CorpusSpec(max_size),
            CorpusSpec(max_size, free_vars, closed_only=False))


def cmd_enumerate(args):
    total = 0
    for spec in _specs(args):
        print("# corpus max_size=%d max_free_vars=%d (%d terms)"
              % (spec.max_size, spec.max_free_vars, count_terms(spec)))
        for t in enumerate_terms(spec):
            print(pretty(t))
            total += 1
    print("# total %d" % total, file=sys.stderr)
    return 0


def cmd_verify(args):
    random.seed(args.seed)
    names = list(ALL_SUITES) if args.suite == "all" else [args.suite]
    cache, path = _open_cache(args)
    reports = run_suites(names, _specs(args), args.budget, cache, args.jobs)
    _save_cache(cache, path)
    ok = True
    for report in reports:
        for example in report.counterexamples[:20]:
            print("  counterexample:", example)
        for key, (p, f) in sorted(report.breakdown.items()):
            print("  %-24s passed=%d failed=%d" % (key, p, f))
        print(report.summary_line())
        ok = ok and report.ok
    return 0 if ok else 1


def _global_flags(parser, suppress):
    """The global flags, attachable both before and after the subcommand."""
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--rules", default=default(None),
                        help="comma-separated rule subset "
                             "(beta,delta,gamma,assoc); default all")
    parser.add_argument("--budget", type=int, default=default(DEFAULT_BUDGET),
                        help="SN exploration budget in distinct nodes")
    parser.add_argument("--max-size", type=int, default=default(None),
                        help="corpus term size bound")
    parser.add_argument("--free-vars", type=int, default=default(None),
                        help="corpus free-variable bound (adds an open corpus)")
    parser.add_argument("--cache", default=default(None),
                        help="SN cache file (default: $%s/sn-cache.tsv)"
                             % CACHE_DIR_ENV)
    parser.add_argument("--jobs", type=int, default=default(1),
                        help="worker processes for the verify suites")
    parser.add_argument("--seed", type=int, default=default(0),
                        help="seed for any sampled pools")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="permsn",
        description="Lambda-calculus rewriting laboratory: beta plus "
                    "permutation rules, SN oracles, intersection types.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse a term and print it back")
    p.add_argument("term")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reduce", parents=[common], help="list one-step reducts")
    p.add_argument("term")
    p.add_argument("--at", default=None,
                   help="dot-separated redex path, e.g. 0.1")
    p.set_defaults(func=cmd_reduce)

    for name, func, help_text in (
            ("normalize", cmd_normalize, "reduce to normal form"),
            ("trace", cmd_trace, "print every reduction step")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("term")
        p.add_argument("--fuel", type=int, default=1000)
        p.add_argument("--innermost", action="store_true",
                       help="rightmost-innermost instead of leftmost-outermost")
        p.set_defaults(func=func)

    p = sub.add_parser("sn", parents=[common], help="decide strong normalization")
    p.add_argument("term")
    p.set_defaults(func=cmd_sn)

    p = sub.add_parser("eta", parents=[common], help="longest reduction length")
    p.add_argument("term")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("infer", parents=[common], help="infer an intersection type")
    p.add_argument("term")
    p.add_argument("--emit-derivation", default=None, metavar="FILE",
                   help="write the checked derivation as JSON")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("check", parents=[common], help="check a serialized derivation")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("graph", parents=[common], help="export the reduction graph")
    p.add_argument("term")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("enumerate", parents=[common], help="list the term corpus")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(ALL_SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
