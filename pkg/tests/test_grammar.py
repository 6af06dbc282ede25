"""Core grammar type: text format, validation, normal form predicates,
trees and derivations."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

import dycknf as d
from dycknf.corpus import random_cnf_grammar


# ---- parsing and serialization ----

def test_parse_basic(expr):
    assert expr.start == "E"
    assert expr.nonterminals == ["E", "T", "R"]
    assert expr.terminals == ["a", "*", "+"]
    assert d.Rule("E", ("T", "*", "R")) in expr.rules
    assert len(expr.rules) == 6


def test_parse_lambda_spelling():
    g = d.parse_grammar("start: S\nS -> 'a' | eps")
    assert d.Rule("S", ()) in g.rules
    d.validate(g, allow_lambda=True)
    with pytest.raises(d.GrammarError):
        d.validate(g)


def test_parse_errors_carry_position():
    with pytest.raises(d.ParseError) as e:
        d.parse_grammar("start: S\nS -> 'a'\nS 'b'")
    assert e.value.line == 3

    for bad in ["S -> 'a'",                       # no start line
                "start: S\nstart: S\nS -> 'a'",   # duplicate start
                "start: S\nS -> T",               # undeclared symbol
                "start: S\nS -> 'a'\nS -> 'a'",   # duplicate rule
                "start: S\nS -> 'a' S\na -> 'a'",  # name collision
                ]:
        with pytest.raises(d.GrammarError):
            d.parse_grammar(bad)


def test_rhs_length_bound():
    long_rhs = " ".join("'a'" for _ in range(9))
    with pytest.raises(d.ParseError):
        d.parse_grammar(f"start: S\nS -> {long_rhs}")
    assert d.parse_grammar(f"start: S\nS -> {long_rhs}", max_rhs_len=9)


def test_serialize_round_trip(expr, expr_cnf, expr_dyck_expected):
    for g in [expr, expr_cnf, expr_dyck_expected]:
        assert d.parse_grammar(d.serialize(g)) == g


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_serialize_round_trip_random(seed):
    g = random_cnf_grammar(seed)
    assert d.parse_grammar(d.serialize(g)) == g


# ---- normal form predicates ----

def test_is_cnf(expr, expr_cnf):
    assert not d.is_cnf(expr)
    assert d.is_cnf(expr_cnf)


def test_dyck_violations_name_the_problem(expr_cnf, expr_dyck_expected):
    codes = {v[0] for v in d.dyck_nf_violations(expr_cnf)}
    # T heads a terminal rule and binary rules, and sits on both sides
    assert "mixed-terminal" in codes
    assert "both-sides" in codes
    assert d.dyck_nf_violations(expr_dyck_expected) == []


def test_start_on_rhs_is_a_violation():
    g = d.parse_grammar("start: S\nS -> A B | 'a'\nA -> S B\nB -> 'b'")
    assert any(v[0] == "start-on-rhs" for v in d.dyck_nf_violations(g))


def test_pairing_of(expr_dyck_expected):
    pairs = d.pairing_of(expr_dyck_expected)
    assert pairs == [("T", "T1"), ("E", "E1"), ("E3", "E5"), ("T3", "T5"),
                     ("E2", "Tp"), ("E4", "T4"), ("T2", "R")]
    with pytest.raises(d.GrammarError):
        d.pairing_of(d.parse_grammar("start: S\nS -> 'a' 'b'"))


# ---- trees and derivations ----

def test_tree_utilities(expr_cnf):
    tree = d.extract_tree(expr_cnf, "a+a")
    assert d.tree_yield(tree) == "a+a"
    d.validate_tree(expr_cnf, tree)
    bad = ("E0", (("E", ("a",)), ("E1", ("+",))))
    with pytest.raises(d.GrammarError):
        d.validate_tree(expr_cnf, bad)


def test_leftmost_derivation_replays(expr_cnf):
    tree = d.extract_tree(expr_cnf, "a*a+a")
    steps = d.leftmost_derivation(expr_cnf, tree)
    forms = d.derivation_forms(expr_cnf, tree)
    assert forms[0] == ("E0",)
    assert forms[-1] == tuple("a*a+a")
    assert len(steps) == len(forms) - 1
    # each step rewrites the leftmost nonterminal of the previous form
    for before, after, rule in zip(forms, forms[1:], steps):
        at = next(i for i, s in enumerate(before)
                  if expr_cnf.is_nonterminal(s))
        assert before[at] == rule.lhs
        assert after == before[:at] + rule.rhs + before[at + 1:]


def test_fresh_name():
    used = {"A", "A_2"}
    assert d.fresh_name("B", used) == "B"
    assert d.fresh_name("A", used) == "A_3"


# ---- isomorphism checker ----

def test_isomorphism_finds_renaming(expr_dyck_expected):
    text = d.serialize(expr_dyck_expected)
    renamed = d.parse_grammar(
        text.replace("E5", "X9").replace("T5", "Y9").replace("Tp", "Z9"))
    iso = d.find_isomorphism(expr_dyck_expected, renamed)
    assert iso is not None
    assert iso["E5"] == "X9" and iso["T5"] == "Y9" and iso["Tp"] == "Z9"


def test_isomorphism_rejects_different_language(expr_cnf, expr_dyck_expected):
    assert d.find_isomorphism(expr_cnf, expr_dyck_expected) is None
    g1 = d.parse_grammar("start: S\nS -> 'a'")
    g2 = d.parse_grammar("start: S\nS -> 'b'")
    assert d.find_isomorphism(g1, g2) is None
