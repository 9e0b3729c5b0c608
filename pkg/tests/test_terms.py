"""Structural term operations: constructors, free variables, substitution."""

import pytest

from permsn.corpus import CorpusSpec, enumerate_terms
from permsn.syntax import parse
from permsn.terms import (App, Lam, Spine, Var, apply_substitution, build_app,
                          free_vars, is_app, is_lam, is_var, nb, size,
                          size_weighted, spine, subst)


def test_constructors_and_predicates():
    t = App(Lam(Var(0)), Var(3))
    assert is_app(t)
    assert is_lam(t[1])
    assert is_var(t[2])
    assert t == (2, (1, (0, 0)), (0, 3))


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        Var(-1)


def test_size_counts_every_node():
    assert size(Var(0)) == 1
    assert size(Lam(Var(0))) == 2
    assert size(parse(r"(\x. x x) (\x. x x)")) == 9


def test_free_vars_at_the_root():
    assert free_vars(parse(r"\x. x")) == set()
    assert free_vars(parse("a b a")) == {0, 1}
    # an index under a binder refers to the slot minus the binder depth
    assert free_vars(Lam(Var(3))) == {2}


def test_nb_counts_occurrences():
    t = parse("a (a b)")
    assert nb(t, 0) == 2
    assert nb(t, 1) == 1
    assert nb(t, 2) == 0
    assert nb(parse(r"\x. x a"), 0) == 1


def test_subst_replaces_free_occurrences():
    t = parse("a a")
    u = parse(r"\z. z")
    assert subst(t, 0, u) == parse(r"(\z. z) (\z. z)")


def test_subst_shifts_under_binders():
    # substituting an open image under a binder must not capture
    t = parse(r"\x. a")          # Lam(Var 1)
    u = Var(0)                   # the free slot 0 itself
    assert subst(t, 0, u) == Lam(Var(1))


def test_subst_leaves_other_slots_alone():
    t = parse("a b")
    assert subst(t, 0, Var(5)) == App(Var(5), Var(1))


def test_apply_substitution_is_simultaneous():
    # sequential substitution would rewrite the image of slot 0 again
    t = App(Var(0), Var(1))
    sigma = {0: Var(1), 1: Var(0)}
    assert apply_substitution(t, sigma) == App(Var(1), Var(0))


def test_spine_decomposition_round_trips():
    for t in enumerate_terms(CorpusSpec(6, 2, closed_only=False)):
        sp = spine(t)
        assert sp.head[0] != 2
        assert sp.rebuild() == t


def test_spine_of_saturated_application():
    t = parse("a b c")
    sp = spine(t)
    assert sp == Spine(Var(0), (Var(1), Var(2)))
    assert build_app(sp.head, sp.args) == t


def test_size_weighted_sums_occurrences():
    t = parse("a a b")
    sigma = {0: parse(r"\z. z"), 1: parse("c")}
    assert size_weighted(sigma, t) == 2 * 2 + 1 * 1
