"""Parse table membership, tree extraction and the word enumerator.

The enumerator and the parse table are independent routes to the same
language, so they get held against each other here.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

import dycknf as d
from dycknf.corpus import random_cnf_grammar


def test_member_basics(expr_cnf):
    assert d.member(expr_cnf, "a")
    assert d.member(expr_cnf, "a*a+a")
    assert not d.member(expr_cnf, "")
    assert not d.member(expr_cnf, "aa")
    assert not d.member(expr_cnf, "a$")  # outside the alphabet


def test_member_needs_cnf(expr):
    with pytest.raises(d.GrammarError):
        d.member(expr, "a")


def test_member_agrees_with_enumeration(expr_cnf):
    words = set(d.enumerate_words(expr_cnf, 5))
    for n in range(1, 6):
        for letters in itertools.product(expr_cnf.terminals, repeat=n):
            w = "".join(letters)
            assert d.member(expr_cnf, w) == (w in words), w


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_member_agrees_with_enumeration_random(seed):
    g = random_cnf_grammar(seed)
    words = set(d.enumerate_words(g, 5))
    for n in range(1, 6):
        for letters in itertools.product(g.terminals, repeat=n):
            w = "".join(letters)
            assert d.member(g, w) == (w in words), w


def test_extract_tree_is_canonical_and_valid(expr_cnf):
    for w in d.enumerate_words(expr_cnf, 6):
        tree = d.extract_tree(expr_cnf, w)
        d.validate_tree(expr_cnf, tree)
        assert d.tree_yield(tree) == w
    with pytest.raises(d.NotAMemberError):
        d.extract_tree(expr_cnf, "aa")


def test_all_trees_match_count(expr_cnf):
    for w in d.enumerate_words(expr_cnf, 7):
        trees = d.all_trees(expr_cnf, w)
        assert len(trees) == d.count_trees(expr_cnf, w)
        assert len(set(trees)) == len(trees)
        for t in trees:
            d.validate_tree(expr_cnf, t)
            assert d.tree_yield(t) == w
        assert d.extract_tree(expr_cnf, w) in trees


def test_ambiguous_grammar_counts_every_tree():
    # two bracketings of aaa: (aa)a and a(aa)
    g = d.parse_grammar("start: S\nS -> S_ S_\nS_ -> S_ S_ | 'a'")
    assert d.count_trees(g, "aaa") == 2
    assert d.count_trees(g, "aaaa") == 5  # Catalan growth


def test_tree_cap_is_enforced():
    g = d.parse_grammar("start: S\nS -> S_ S_\nS_ -> S_ S_ | 'a'")
    with pytest.raises(d.ResourceLimitError):
        d.all_trees(g, "a" * 18, cap=100)


def test_word_cap_is_enforced():
    g = d.parse_grammar("start: S\nS -> S_ S_\nS_ -> S_ S_ | 'a' | 'b'")
    with pytest.raises(d.ResourceLimitError):
        d.enumerate_words(g, 24, cap=1000)


def test_format_table(expr_cnf):
    text = d.format_table(expr_cnf, "a+a")
    assert "1,1:" in text and "1,3:" in text
    assert "E0" in text.splitlines()[-1]  # full span derives the start


def test_empty_language_cleanup_raises():
    g = d.parse_grammar("start: S\nS -> A S\nA -> 'a'")
    with pytest.raises(d.GrammarError):
        d.cleanup(g)
