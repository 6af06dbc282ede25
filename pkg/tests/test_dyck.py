"""Bracket words: the two independent membership routes, the stretch
predicates, and trace words read off parse trees two different ways."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

import dycknf as d
from dycknf.corpus import random_bracket_words


def brackets(s):
    return d.parse_dyck_text(s)


# ---- text form ----

def test_parse_and_render():
    w = brackets("[1 ]1 [2 ]2")
    assert w == (1, -1, 2, -2)
    assert d.render_dyck_word(w) == "[1 ]1 [2 ]2"
    assert brackets("") == ()
    for bad in ["[0", "1", "[x", "[1]", "(1"]:
        with pytest.raises(ValueError):
            brackets(bad)


@given(st.lists(st.integers(1, 9).flatmap(
    lambda k: st.sampled_from([k, -k])), max_size=30))
def test_render_round_trips(letters):
    w = tuple(letters)
    assert brackets(d.render_dyck_word(w)) == w


# ---- membership, both routes ----

def test_membership_examples():
    yes = ["[1 ]1", "[1 ]1 [2 ]2", "[1 [2 ]2 ]1", "[1 [2 ]2 [3 ]3 ]1"]
    no = ["", "[1", "]1", "]1 [1", "[1 ]2", "[1 [2 ]1 ]2", "[1 ]1 [2"]
    for s in yes:
        assert d.in_dk_stack(brackets(s)), s
        assert d.in_dk_lemma(brackets(s)), s
    for s in no:
        assert not d.in_dk_stack(brackets(s)), s
        assert not d.in_dk_lemma(brackets(s)), s


def test_routes_agree_exhaustively_small():
    # every word over two pairs up to length 6
    for n in range(1, 7):
        for w in itertools.product((1, -1, 2, -2), repeat=n):
            assert d.in_dk_stack(w) == d.in_dk_lemma(w), w


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_routes_agree_on_samples(seed):
    for w in random_bracket_words(4, 24, 40, seed):
        assert d.in_dk_stack(w) == d.in_dk_lemma(w), w


def test_k_bound_handling():
    w = brackets("[3 ]3")
    assert d.in_dk_stack(w, k=3)
    assert not d.in_dk_stack(w, k=2)
    with pytest.raises(ValueError):
        d.in_dk_lemma(w, k=2)
    with pytest.raises(ValueError):
        d.in_dk_stack((0, 1))


def test_balance_and_projections():
    w = brackets("[1 [2 ]1 ]2")
    assert d.is_balanced(w)
    assert d.is_balanced(())
    assert not d.in_dk_stack(w)
    assert d.h_projection(w) == (1, 1, -1, -1)
    assert d.pair_projection(w, 1) == (1, -1)
    assert d.pair_projection(w, 3) == ()


# ---- matched / nested / reducible ----

def test_stretch_predicates():
    w = brackets("[1 ]1 [2 [3 ]3 ]2")
    assert d.matched(w, 1, 2) and d.matched(w, 1, 6) and d.matched(w, 3, 6)
    assert not d.matched(w, 2, 3) and not d.matched(w, 1, 3)
    assert not d.matched(w, 0, 2) and not d.matched(w, 2, 2)
    assert d.nested(w, 3, 6) and d.nested(w, 1, 2)
    assert not d.nested(w, 1, 6)
    assert d.reducible(w, 1, 6)
    assert not d.reducible(w, 3, 6)


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_nested_is_never_reducible(seed):
    for w in random_bracket_words(3, 12, 15, seed):
        n = len(w)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if d.nested(w, i, j):
                    assert not d.reducible(w, i, j), (w, i, j)


# ---- traces ----

def test_trace_of_golden_tree(expr_converted):
    gd, _ = expr_converted
    tree = d.extract_tree(gd, "a*a*a+a")
    tr = d.trace_word(gd, tree)
    assert len(tr) == 12  # 2n-2 for n=7
    assert tr == d.trace_from_rewriting(gd, tree)
    word = d.trace_as_brackets(gd, tr)
    assert d.in_dk_stack(word)


def test_trace_undefined_for_short_derivations(expr_converted):
    gd, _ = expr_converted
    tree = d.extract_tree(gd, "a")
    with pytest.raises(d.TraceUndefinedError):
        d.trace_word(gd, tree)
    with pytest.raises(d.TraceUndefinedError):
        d.trace_from_rewriting(gd, tree)


def test_trace_routes_agree_on_corpus(dyck_corpus):
    for _, gd, _ in dyck_corpus:
        for w in d.enumerate_words(gd, 6):
            if len(w) < 2:
                continue
            for tree in d.all_trees(gd, w):
                assert (d.trace_word(gd, tree)
                        == d.trace_from_rewriting(gd, tree))


def test_trace_language_members_are_dyck(expr_converted):
    gd, _ = expr_converted
    code = {}
    for k, (left, right) in enumerate(d.pairing_of(gd), start=1):
        code[left], code[right] = k, -k
    traces = d.trace_language(gd, 6)
    assert traces
    for tr in traces:
        assert d.in_dk_stack([code[x] for x in tr]), tr


def test_trace_length_is_2n_minus_2(dyck_corpus):
    for _, gd, _ in dyck_corpus:
        for w in d.enumerate_words(gd, 6):
            if len(w) < 2:
                continue
            for tree in d.all_trees(gd, w):
                assert len(d.trace_word(gd, tree)) == 2 * len(w) - 2
