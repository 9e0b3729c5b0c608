r"""Strong-normalization oracle: verdicts, cache, measures, criteria."""

import pytest

from permsn.corpus import CorpusSpec, enumerate_terms
from permsn.reduction import ALL_RULES, BETA_ONLY, Rule
from permsn.sn import (NotProvenSn, NotSn, Sn, SnCache, Unknown,
                       expand_left_branch, height, height_weighted,
                       left_branch_paths, replay_cycle, sn_head_criteria,
                       sn_verdict, substitution_measure)
from permsn.syntax import parse
from permsn.terms import size

OMEGA = parse(r"(\x. x x) (\x. x x)")


def test_normal_form_is_sn_with_zero_height():
    assert sn_verdict(parse(r"\x. x"), BETA_ONLY) == Sn(0, 1)


def test_omega_is_not_sn_with_a_one_step_cycle():
    verdict = sn_verdict(OMEGA, BETA_ONLY)
    assert isinstance(verdict, NotSn)
    assert verdict.cycle_length == 1


def test_notsn_witness_replays_to_a_repeat():
    verdict = sn_verdict(OMEGA)
    seen = replay_cycle(OMEGA, verdict)
    assert len(seen) > len(set(seen))


def test_embedded_cycle_is_found():
    t = parse(r"(\y. y) ((\x. x x) (\x. x x))")
    verdict = sn_verdict(t, BETA_ONLY)
    assert isinstance(verdict, NotSn)
    seen = replay_cycle(t, verdict)
    assert len(seen) > len(set(seen))


def test_height_of_a_two_step_chain():
    t = parse(r"(\x. x) ((\y. y) a)")
    verdict = sn_verdict(t, BETA_ONLY)
    assert isinstance(verdict, Sn)
    assert verdict.height == 2
    assert height(t, BETA_ONLY) == 2


def test_height_counts_the_longest_path():
    t = parse(r"(\x. x x) ((\y. y) a)")
    # duplicating first makes the longest route longer than reducing inside
    assert height(t, BETA_ONLY) == 3


def test_height_raises_without_a_proof():
    with pytest.raises(NotProvenSn):
        height(OMEGA, BETA_ONLY)


def test_budget_exhaustion_is_unknown():
    verdict = sn_verdict(parse(r"(\x. x) ((\y. y) a)"), BETA_ONLY, budget=1)
    assert isinstance(verdict, Unknown)


def test_size_cap_yields_unknown():
    verdict = sn_verdict(OMEGA, BETA_ONLY, max_term_size=8)
    assert isinstance(verdict, Unknown)


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        sn_verdict(OMEGA, BETA_ONLY, budget=0)


def test_verdicts_do_not_depend_on_the_cache():
    cold = {}
    warm = {}
    cache = SnCache()
    terms = list(enumerate_terms(CorpusSpec(7)))
    for t in terms:
        cold[t] = sn_verdict(t, ALL_RULES)
    for t in reversed(terms):
        warm[t] = sn_verdict(t, ALL_RULES, cache=cache)
    for t in terms:
        assert type(cold[t]) is type(warm[t])
        if isinstance(cold[t], Sn):
            assert cold[t] == warm[t]


def test_rule_set_monotonicity():
    for t in enumerate_terms(CorpusSpec(7)):
        vb = sn_verdict(t, BETA_ONLY)
        va = sn_verdict(t, ALL_RULES)
        if isinstance(vb, Sn) and isinstance(va, Sn):
            assert vb.height <= va.height
        if isinstance(vb, NotSn):
            # a beta cycle is a cycle for the full rule set
            assert not isinstance(va, Sn)


def test_cache_round_trips_through_a_file(tmp_path):
    cache = SnCache()
    terms = [parse(r"(\x. x) ((\y. y) a)"), OMEGA, parse(r"\x. x")]
    for t in terms:
        sn_verdict(t, BETA_ONLY, cache=cache)
    path = tmp_path / "sn.tsv"
    cache.save(path)
    loaded = SnCache()
    loaded.load(path)
    for t in terms:
        direct = sn_verdict(t, BETA_ONLY)
        hit = loaded.get(t, (int(Rule.BETA),))
        assert type(hit) is type(direct)
        if isinstance(direct, Sn):
            assert hit.height == direct.height
        else:
            assert hit.cycle_length == direct.cycle_length


def test_cache_never_stores_unknown():
    cache = SnCache()
    sn_verdict(parse(r"(\x. x) ((\y. y) a)"), BETA_ONLY, budget=1, cache=cache)
    assert not cache.store


def test_cache_merge_requires_agreement():
    a, b = SnCache(), SnCache()
    t = parse(r"\x. x")
    key = (int(Rule.BETA),)
    a.put(t, key, Sn(0, 1))
    b.put(t, key, Sn(3, 1))
    with pytest.raises(AssertionError):
        a.merge(b)


def test_cache_merge_unions_disjoint_entries():
    a, b = SnCache(), SnCache()
    key = (int(Rule.BETA),)
    a.put(parse(r"\x. x"), key, Sn(0, 1))
    b.put(parse("a"), key, Sn(0, 1))
    a.merge(b)
    assert len(a.store) == 2


def test_height_weighted():
    sigma = {0: parse(r"(\z. z) c"), 1: parse("c")}
    t = parse("a a b")
    assert height_weighted(sigma, t, BETA_ONLY) == 2 * 1 + 1 * 0


def test_substitution_measure_components():
    sigma = {0: parse(r"\z. z")}
    t = parse("a a")
    measure = substitution_measure(sigma, 3, t, BETA_ONLY)
    assert measure == (3, height(t, BETA_ONLY), size(t), 0, 4)


def test_measure_comparison_is_lexicographic():
    assert (2, 9, 9, 9, 9) < (3, 0, 0, 0, 0)


def test_head_criteria_vacuous_case_forces_sn():
    report = sn_head_criteria(parse("a b"))
    assert report.all_hold
    assert not report.head_verdicts
    assert not report.promoted_verdicts
    assert isinstance(sn_verdict(parse("a b")), Sn)


def test_head_criteria_simple_beta_head():
    report = sn_head_criteria(parse(r"(\x. x) a"))
    assert report.all_hold
    assert isinstance(report.head_verdicts["head_arg"], Sn)
    assert isinstance(report.head_verdicts["beta_head"], Sn)


def test_head_criteria_fail_on_a_cycling_argument():
    t = parse(r"a ((\x. x x) (\x. x x))")
    report = sn_head_criteria(t)
    assert not report.all_hold
    assert isinstance(report.promoted_verdicts[1], NotSn)


def test_head_criteria_cover_the_spine_components():
    t = parse(r"a (\y. (\x. x x) (\x. x x))")
    # the argument is no redex and the head is a variable, yet the term
    # cannot terminate; the spine-component verdicts catch it
    report = sn_head_criteria(t)
    assert not report.all_hold
    assert isinstance(report.component_verdicts[1], NotSn)


def test_head_criteria_require_arguments():
    with pytest.raises(ValueError):
        sn_head_criteria(parse(r"\x. x"))


def test_expand_left_branch_at_the_root():
    assert expand_left_branch(parse("a"), ()) == parse(r"\x. a x")


def test_expand_left_branch_inside():
    t = parse("a b c")
    assert expand_left_branch(t, (0,)) == parse(r"(\x. a b x) c",
                                                free_names=("a", "b", "c"))
    assert expand_left_branch(t, (0, 0)) == parse(r"(\x. a x) b c",
                                                  free_names=("a", "b", "c"))


def test_expand_left_branch_rejects_argument_edges():
    with pytest.raises(ValueError):
        expand_left_branch(parse("a b"), (1,))


def test_left_branch_paths():
    assert left_branch_paths(parse("a")) == [()]
    assert left_branch_paths(parse("a b c")) == [(), (0,), (0, 0)]


def test_left_branch_expansion_preserves_sn_on_samples():
    for text in ("a", "a b", r"(\x. x) a", r"(\x. x) a b"):
        t = parse(text)
        assert isinstance(sn_verdict(t), Sn)
        for path in left_branch_paths(t):
            assert isinstance(sn_verdict(expand_left_branch(t, path)), Sn)
