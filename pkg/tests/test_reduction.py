r"""The four rewrite rules, redex enumeration, head constructors."""

import pytest

from permsn.corpus import CorpusSpec, enumerate_terms
from permsn.reduction import (ALL_RULES, BETA_ONLY, FuelExhausted, HeadClass,
                              NormalForm, RedexOccurrence, Rule, Strategy,
                              apply, head_arg, head_beta_reduct, head_class,
                              head_delta_reduct, head_gamma_reduct, normalize,
                              normalize_trace, one_step, parse_rules,
                              promote_arg_redex, redexes)
from permsn.syntax import parse, pretty
from permsn.terms import free_vars


OMEGA = parse(r"(\x. x x) (\x. x x)")


def at_root(t, rule):
    return apply(t, RedexOccurrence((), rule))


def test_beta_contracts_by_substitution():
    assert at_root(parse(r"(\x. x) a"), Rule.BETA) == parse("a")
    assert at_root(parse(r"(\x. x x) a"), Rule.BETA) == parse("a a")
    assert at_root(OMEGA, Rule.BETA) == OMEGA


def test_beta_closes_the_index_gap():
    # the binder disappears, so deeper free slots move down by one
    assert at_root(parse(r"(\x. a) b"), Rule.BETA) == parse("a")


def test_delta_pushes_the_argument_under_a_binder():
    t = parse(r"(\y. \x. y x) a")
    expect = parse(r"\x. (\y. y x) a", free_names=("a",))
    assert at_root(t, Rule.DELTA) == expect


def test_gamma_moves_the_second_argument_inside():
    t = parse(r"(\x. x) a b")
    expect = parse(r"(\x. x b) a", free_names=("a", "b"))
    assert at_root(t, Rule.GAMMA) == expect


def test_assoc_lifts_a_redex_argument():
    t = parse(r"a ((\x. x) b)")
    expect = parse(r"(\x. a x) b", free_names=("a", "b"))
    assert at_root(t, Rule.ASSOC) == expect


def test_permutation_rules_preserve_free_vars():
    t_delta = parse(r"(\y. \x. y x) a")
    t_gamma = parse(r"(\x. x) a b")
    t_assoc = parse(r"a ((\x. x) b)")
    for t, rule in ((t_delta, Rule.DELTA), (t_gamma, Rule.GAMMA),
                    (t_assoc, Rule.ASSOC)):
        assert free_vars(at_root(t, rule)) == free_vars(t)


def test_beta_can_only_shrink_free_vars():
    t = parse(r"(\x. a) b")
    assert free_vars(at_root(t, Rule.BETA)) <= free_vars(t)


def test_redex_enumeration_order():
    # preorder on paths, Beta < Delta < Gamma < Assoc at one position
    t = parse(r"(\y. \x. y x) a b")
    occs = redexes(t)
    assert occs == [RedexOccurrence((), Rule.GAMMA),
                    RedexOccurrence((0,), Rule.BETA),
                    RedexOccurrence((0,), Rule.DELTA)]


def test_beta_redexes_are_a_subset_of_all():
    for t in enumerate_terms(CorpusSpec(7)):
        assert set(redexes(t, BETA_ONLY)) <= set(redexes(t))


def test_no_spurious_identity_reducts():
    for t in enumerate_terms(CorpusSpec(7)):
        for u in one_step(t):
            if u == t:
                # only a rule that genuinely maps t to itself may do this
                assert t == OMEGA or any(apply(t, occ) == t
                                         for occ in redexes(t))


def test_apply_rejects_a_mismatched_rule():
    with pytest.raises(ValueError):
        apply(parse("a b"), RedexOccurrence((), Rule.BETA))
    with pytest.raises(ValueError):
        apply(parse(r"\x. x"), RedexOccurrence((1,), Rule.BETA))


def test_parse_rules():
    assert parse_rules("beta") == BETA_ONLY
    assert parse_rules("beta,gamma,delta,assoc") == ALL_RULES
    with pytest.raises(ValueError):
        parse_rules("beta,zeta")


def test_head_classes():
    assert head_class(parse("a b")) == frozenset()
    assert head_class(parse(r"(\x. x) a")) == {HeadClass.BETA_HEAD}
    assert head_class(parse(r"(\x. x) a b")) == {HeadClass.BETA_HEAD,
                                                 HeadClass.GAMMA_HEAD}
    assert head_class(parse(r"(\y. \x. y) a")) == {HeadClass.BETA_HEAD,
                                                   HeadClass.DELTA_HEAD}


def test_head_constructors_match_root_contractions():
    t = parse(r"(\x. x) a b")
    assert head_arg(t) == parse("a")
    assert head_beta_reduct(t) == parse("a b", free_names=("a", "b"))
    assert head_gamma_reduct(t) == at_root(t, Rule.GAMMA)
    t2 = parse(r"(\y. \x. y x) a")
    assert head_delta_reduct(t2) == at_root(t2, Rule.DELTA)


def test_head_constructors_require_the_class():
    with pytest.raises(ValueError):
        head_beta_reduct(parse("a b"))
    with pytest.raises(ValueError):
        head_gamma_reduct(parse(r"(\x. x) a"))
    with pytest.raises(ValueError):
        head_delta_reduct(parse(r"(\x. x) a"))


def test_promote_arg_redex_first_position():
    t = parse(r"c ((\x. x) a) b", free_names=("c", "a", "b"))
    expect = parse(r"(\x. c x) a b", free_names=("c", "a", "b"))
    assert promote_arg_redex(t, 1) == expect


def test_promote_arg_redex_second_position():
    t = parse(r"c a ((\x. x) b)", free_names=("c", "a", "b"))
    expect = parse(r"(\x. c a x) b", free_names=("c", "a", "b"))
    assert promote_arg_redex(t, 2) == expect


def test_promote_arg_redex_coincides_with_assoc():
    # for (H ((\x. N) P)) promoting the single argument is the assoc step
    t = parse(r"a ((\x. x b) c)")
    assert promote_arg_redex(t, 1) == at_root(t, Rule.ASSOC)


def test_promote_arg_redex_rejects_non_redex_arguments():
    with pytest.raises(ValueError):
        promote_arg_redex(parse("a b"), 1)
    with pytest.raises(ValueError):
        promote_arg_redex(parse(r"a ((\x. x) b)"), 2)


def test_normalize_simple():
    result = normalize(parse(r"(\x. x) a"), BETA_ONLY)
    assert result == NormalForm(parse("a"), 1)


def test_normalize_fuel_exhaustion_is_a_value():
    result = normalize(OMEGA, BETA_ONLY, fuel=100)
    assert isinstance(result, FuelExhausted)
    assert result.term == OMEGA


def test_normalize_all_rules_reaches_the_same_normal_form():
    t = parse(r"(\x. x) a b")
    result = normalize(t)
    assert isinstance(result, NormalForm)
    assert result.term == parse("a b", free_names=("a", "b"))
    assert result.steps <= 3


def test_normalize_trace_lists_every_step():
    t = parse(r"(\x. x) ((\y. y) a)")
    result, steps = normalize_trace(t, BETA_ONLY)
    assert isinstance(result, NormalForm)
    assert len(steps) == result.steps == 2
    assert steps[-1][1] == parse("a")


def test_strategies_can_disagree_on_the_route():
    t = parse(r"(\x. x) ((\y. y) a)")
    lo, lo_steps = normalize_trace(t, BETA_ONLY, Strategy.LEFTMOST_OUTERMOST)
    ri, ri_steps = normalize_trace(t, BETA_ONLY, Strategy.RIGHTMOST_INNERMOST)
    assert lo.term == ri.term == parse("a")
    assert lo_steps[0][0].path == ()
    assert ri_steps[0][0].path == (1,)


def test_occurrence_strings_name_rule_and_path():
    assert str(RedexOccurrence((), Rule.BETA)) == "beta@root"
    assert str(RedexOccurrence((0, 1), Rule.GAMMA)) == "gamma@0.1"
