"""Context-free grammars with ordered symbols and a small text format.

A Grammar keeps its nonterminals and terminals in declaration order because
several constructions in this package (fresh-name generation, canonical
bracket numbering, golden conversions) must be reproducible run to run.
Nonterminals are identifiers, terminals are single characters, and words are
ordinary strings with one character per terminal.

The text format, one grammar per file:

    # comment lines start with '#'
    start: E
    E -> 'a' | T '*' R | E '+' T
    T -> 'a' | T '*' R
    R -> 'a'

Quoted single characters are terminals, bare identifiers are nonterminals,
and the reserved word `eps` denotes an empty right-hand side.  A nonterminal
is declared by appearing on the left of some rule; using an identifier that
is never declared is an error.  Repeating a left-hand side on several lines
appends alternatives.

Parse trees are plain tuples: an internal node is (label, children) where
children is a tuple of subtrees, and a leaf is the bare terminal string.
Tuples keep trees hashable, which the tree-enumeration code relies on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class GrammarError(ValueError):
    """A grammar is structurally unusable for the requested operation."""


class ParseError(GrammarError):
    """Bad grammar text.  Carries 1-based line and column of the offense."""

    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class ResourceLimitError(RuntimeError):
    """An exhaustive computation outgrew its configured budget."""


@dataclass(frozen=True)
class Rule:
    """One production.  rhs is a tuple of symbol names; () is a lambda rule."""

    lhs: str
    rhs: tuple

    def __str__(self):
        return f"{self.lhs} -> {' '.join(self.rhs) if self.rhs else 'eps'}"


class Grammar:
    """A context-free grammar with declaration-ordered symbol lists."""

    def __init__(self, nonterminals, terminals, start, rules):
        self.nonterminals = list(nonterminals)
        self.terminals = list(terminals)
        self.start = start
        self.rules = list(rules)
        self._nt_set = set(self.nonterminals)
        self._t_set = set(self.terminals)

    def is_nonterminal(self, name):
        return name in self._nt_set

    def is_terminal(self, name):
        return name in self._t_set

    def rules_for(self, nt):
        return [r for r in self.rules if r.lhs == nt]

    def has_rule(self, rule):
        return rule in self.rules

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return (self.nonterminals == other.nonterminals
                and self.terminals == other.terminals
                and self.start == other.start
                and self.rules == other.rules)

    def __hash__(self):
        return hash((tuple(self.nonterminals), tuple(self.terminals),
                     self.start, tuple(self.rules)))

    def __repr__(self):
        return (f"Grammar(start={self.start!r}, |N|={len(self.nonterminals)}, "
                f"|T|={len(self.terminals)}, |P|={len(self.rules)})")


# ---- text format ----

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN = re.compile(r"'([^'\n])'|([A-Za-z][A-Za-z0-9_]*)|(\S)")

DEFAULT_MAX_RHS = 8


def _strip_comment(line):
    # '#' starts a comment anywhere outside a quoted terminal
    i = 0
    while i < len(line):
        if line[i] == "'":
            closing = line.find("'", i + 1)
            if closing == -1:
                break
            i = closing + 1
        elif line[i] == "#":
            return line[:i]
        else:
            i += 1
    return line


def parse_grammar(text, max_rhs_len=DEFAULT_MAX_RHS):
    """Parse grammar text.  Raises ParseError with line/col on bad input."""
    start = None
    # (lhs, rhs_tokens, line, col) where rhs tokens are ('t'|'n', name)
    raw_rules = []
    declared_order = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(line)
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("start:"):
            if start is not None:
                raise ParseError("duplicate start declaration", lineno,
                                 line.index("start:") + 1)
            name = stripped[len("start:"):].strip()
            if not _IDENT.fullmatch(name):
                raise ParseError(f"bad start symbol {name!r}", lineno, 1)
            start = name
            continue
        if "->" not in line:
            raise ParseError("expected 'start:' or a rule with '->'",
                             lineno, 1)
        lhs_text, rhs_text = line.split("->", 1)
        lhs = lhs_text.strip()
        if not _IDENT.fullmatch(lhs):
            raise ParseError(f"bad rule head {lhs!r}", lineno, 1)
        if lhs == "eps":
            raise ParseError("'eps' is reserved and cannot name a nonterminal",
                             lineno, 1)
        if lhs not in declared_order:
            declared_order.append(lhs)
        rhs_base = line.index("->") + 3
        for alt in rhs_text.split("|"):
            tokens = _tokenize_alt(alt, lineno, rhs_base)
            rhs_base += len(alt) + 1
            if len(tokens) > max_rhs_len:
                raise ParseError(
                    f"rule body has {len(tokens)} symbols, limit is "
                    f"{max_rhs_len}", lineno, 1)
            raw_rules.append((lhs, tokens, lineno))

    if start is None:
        raise ParseError("missing 'start:' declaration", 1, 1)
    if start not in declared_order:
        raise ParseError(f"start symbol {start!r} has no rules", 1, 1)

    nonterminals = declared_order
    nt_set = set(nonterminals)
    terminals = []
    rules = []
    for lhs, tokens, lineno in raw_rules:
        rhs = []
        for kind, name, col in tokens:
            if kind == "n":
                if name not in nt_set:
                    raise ParseError(f"undeclared symbol {name!r}", lineno,
                                     col)
            else:
                if name in nt_set:
                    raise ParseError(
                        f"terminal {name!r} collides with a nonterminal of "
                        f"the same name", lineno, col)
                if name not in terminals:
                    terminals.append(name)
            rhs.append(name)
        rule = Rule(lhs, tuple(rhs))
        if rule in rules:
            raise ParseError(f"duplicate rule {rule}", lineno, 1)
        rules.append(rule)

    return Grammar(nonterminals, terminals, start, rules)


def _tokenize_alt(alt, lineno, base_col):
    """Tokenize one alternative into [(kind, name, col)]; kind 't' or 'n'."""
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(alt):
        between = alt[pos:m.start()]
        if between.strip():
            raise ParseError(f"stray text {between.strip()!r}", lineno,
                             base_col + pos)
        pos = m.end()
        col = base_col + m.start()
        if m.group(1) is not None:
            tokens.append(("t", m.group(1), col))
        elif m.group(2) is not None:
            tokens.append(("n", m.group(2), col))
        else:
            raise ParseError(f"unexpected character {m.group(3)!r}", lineno,
                             col)
    if alt[pos:].strip():
        raise ParseError(f"stray text {alt[pos:].strip()!r}", lineno,
                         base_col + pos)
    if len(tokens) == 1 and tokens[0][1] == "eps" and tokens[0][0] == "n":
        return []
    for kind, name, col in tokens:
        if kind == "n" and name == "eps":
            raise ParseError("'eps' cannot be mixed with other symbols",
                             lineno, col)
    if not tokens:
        raise ParseError("empty alternative (write 'eps' for a lambda rule)",
                         lineno, base_col)
    return tokens


def serialize(g):
    """Render a grammar in the text format.

    Consecutive rules with the same head are folded into one line, so a
    parsed grammar serializes back to an equivalent file and
    parse(serialize(g)) == g structurally.
    """
    heads = {r.lhs for r in g.rules}
    for nt in g.nonterminals:
        if nt not in heads:
            raise GrammarError(
                f"cannot serialize: nonterminal {nt} has no rules")
    lines = [f"start: {g.start}"]
    i = 0
    while i < len(g.rules):
        j = i
        while j < len(g.rules) and g.rules[j].lhs == g.rules[i].lhs:
            j += 1
        alts = " | ".join(_render_rhs(g, r.rhs) for r in g.rules[i:j])
        lines.append(f"{g.rules[i].lhs} -> {alts}")
        i = j
    return "\n".join(lines) + "\n"


def _render_rhs(g, rhs):
    if not rhs:
        return "eps"
    return " ".join(s if g.is_nonterminal(s) else f"'{s}'" for s in rhs)


def validate(g, allow_lambda=False):
    """Raise GrammarError on structural defects; return None when sound.

    Checks symbol well-formedness, declaredness, single-character terminals,
    terminal/nonterminal name disjointness, duplicate rules, and (unless
    allow_lambda) the absence of lambda rules.
    """
    seen_nt = set()
    for nt in g.nonterminals:
        if not _IDENT.fullmatch(nt) or nt == "eps":
            raise GrammarError(f"bad nonterminal name {nt!r}")
        if nt in seen_nt:
            raise GrammarError(f"nonterminal {nt} declared twice")
        seen_nt.add(nt)
    seen_t = set()
    for t in g.terminals:
        if len(t) != 1 or t == "\n":
            raise GrammarError(f"terminal {t!r} is not a single character")
        if t in seen_nt:
            raise GrammarError(
                f"terminal {t!r} collides with a nonterminal name")
        if t in seen_t:
            raise GrammarError(f"terminal {t!r} declared twice")
        seen_t.add(t)
    if g.start not in seen_nt:
        raise GrammarError(f"start symbol {g.start!r} is not declared")
    seen_rules = set()
    for r in g.rules:
        if r.lhs not in seen_nt:
            raise GrammarError(f"rule head {r.lhs!r} is not declared")
        if not r.rhs and not allow_lambda:
            raise GrammarError(f"lambda rule {r} is not allowed here")
        for s in r.rhs:
            if s not in seen_nt and s not in seen_t:
                raise GrammarError(f"undeclared symbol {s!r} in rule {r}")
        if r in seen_rules:
            raise GrammarError(f"duplicate rule {r}")
        seen_rules.add(r)


# ---- structural predicates ----

def is_cnf(g):
    """True when every rule is head -> terminal or head -> pair of heads."""
    for r in g.rules:
        if len(r.rhs) == 1 and g.is_terminal(r.rhs[0]):
            continue
        if (len(r.rhs) == 2 and g.is_nonterminal(r.rhs[0])
                and g.is_nonterminal(r.rhs[1])):
            continue
        return False
    return True


def dyck_nf_violations(g):
    """All reasons g fails to be in Dyck normal form, as (code, *info) tuples.

    Dyck normal form: Chomsky normal form where additionally
      * a non-start nonterminal with a terminal rule has no other rule
        ("mixed-terminal"),
      * no nonterminal occurs both as a left child and as a right child of
        binary rules ("both-sides"),
      * co-occurrence in binary bodies is a perfect pairing: a right child
        determines its left child and vice versa ("left-conflict",
        "right-conflict"),
      * the start symbol stays off every right-hand side ("start-on-rhs"),
        so that the bracket structure below covers the whole parse tree.
    """
    violations = []
    for r in g.rules:
        if len(r.rhs) == 1 and g.is_terminal(r.rhs[0]):
            continue
        if (len(r.rhs) == 2 and g.is_nonterminal(r.rhs[0])
                and g.is_nonterminal(r.rhs[1])):
            continue
        violations.append(("not-cnf", str(r)))
    if violations:
        return violations

    lefts = {}
    rights = {}
    occurs_left = set()
    occurs_right = set()
    for r in g.rules:
        if len(r.rhs) != 2:
            continue
        b, c = r.rhs
        if g.start in (b, c):
            violations.append(("start-on-rhs", str(r)))
        occurs_left.add(b)
        occurs_right.add(c)
        if b in lefts and lefts[b] != c:
            violations.append(("left-conflict", b, lefts[b], c))
        lefts.setdefault(b, c)
        if c in rights and rights[c] != b:
            violations.append(("right-conflict", c, rights[c], b))
        rights.setdefault(c, b)
    for nt in occurs_left & occurs_right:
        violations.append(("both-sides", nt))

    for nt in g.nonterminals:
        if nt == g.start:
            continue
        nt_rules = g.rules_for(nt)
        if any(len(r.rhs) == 1 for r in nt_rules) and len(nt_rules) > 1:
            violations.append(("mixed-terminal", nt))
    return violations


def is_dyck_nf(g):
    return not dyck_nf_violations(g)


def pairing_of(g):
    """The bracket pairs of a Dyck normal form grammar.

    Returns [(left, right), ...] in order of each pair's first binary rule,
    which is the canonical pair numbering used everywhere in this package
    (pair k of the list is written `[k` / `]k` in Dyck-word text).
    """
    bad = dyck_nf_violations(g)
    if bad:
        raise GrammarError(
            f"pairing is only defined in Dyck normal form; violations: {bad}")
    pairs = []
    seen = set()
    for r in g.rules:
        if len(r.rhs) == 2 and tuple(r.rhs) not in seen:
            seen.add(tuple(r.rhs))
            pairs.append((r.rhs[0], r.rhs[1]))
    return pairs


# ---- parse trees and derivations ----

def tree_yield(tree):
    """The terminal word a parse tree spells out, left to right."""
    if isinstance(tree, str):
        return tree
    label, children = tree
    return "".join(tree_yield(c) for c in children)


def tree_label(tree):
    return tree if isinstance(tree, str) else tree[0]


def validate_tree(g, tree, root=None):
    """Check a parse tree applies only rules of g; raise GrammarError if not."""
    if root is None:
        root = g.start
    if isinstance(tree, str):
        raise GrammarError(f"root of a parse tree must be a nonterminal node,"
                           f" got leaf {tree!r}")
    label, children = tree
    if label != root:
        raise GrammarError(f"tree root is {label}, expected {root}")
    _validate_node(g, tree)


def _validate_node(g, node):
    label, children = node
    rhs = tuple(tree_label(c) for c in children)
    if Rule(label, rhs) not in g.rules:
        raise GrammarError(f"tree applies {Rule(label, rhs)}, "
                           f"which is not a rule of the grammar")
    for c in children:
        if isinstance(c, tuple):
            _validate_node(g, c)
        elif not g.is_terminal(c):
            raise GrammarError(f"leaf {c!r} is not a terminal")


def leftmost_derivation(g, tree):
    """The leftmost derivation a parse tree encodes, as a list of Rules.

    Simulates actual sentential-form rewriting: keep the current form as a
    mixed list of terminals and pending subtrees, always expand the leftmost
    pending nonterminal.  (The result is the preorder rule sequence, but we
    run the rewriting for real so tests can compare it against independent
    tree walks.)
    """
    validate_tree(g, tree)
    steps = []
    form = [tree]
    while True:
        idx = next((i for i, x in enumerate(form) if isinstance(x, tuple)),
                   None)
        if idx is None:
            return steps
        label, children = form[idx]
        steps.append(Rule(label, tuple(tree_label(c) for c in children)))
        form[idx:idx + 1] = list(children)


def derivation_forms(g, tree):
    """Sentential forms of the leftmost derivation, starting at (start,)."""
    validate_tree(g, tree)
    form = [tree]
    forms = [(tree_label(tree),)]
    while True:
        idx = next((i for i, x in enumerate(form) if isinstance(x, tuple)),
                   None)
        if idx is None:
            return forms
        _, children = form[idx]
        form[idx:idx + 1] = list(children)
        forms.append(tuple(tree_label(x) for x in form))


# ---- fresh names and isomorphism ----

def fresh_name(base, used):
    """base itself if unused, else base_2, base_3, ... deterministic."""
    if base not in used:
        return base
    k = 2
    while f"{base}_{k}" in used:
        k += 1
    return f"{base}_{k}"


def find_isomorphism(g1, g2):
    """A nonterminal renaming that turns g1 into g2, or None.

    The renaming must map start to start, fix all terminals, and carry the
    rule set of g1 exactly onto the rule set of g2.  Rule order and symbol
    declaration order are ignored.  Color refinement prunes the search, so
    this is fast for the grammar sizes this package deals in.
    """
    if sorted(g1.terminals) != sorted(g2.terminals):
        return None
    if len(g1.nonterminals) != len(g2.nonterminals):
        return None
    if len(g1.rules) != len(g2.rules):
        return None

    def refine(g):
        color = {}
        for nt in g.nonterminals:
            terminal_rules = sorted(
                r.rhs[0] for r in g.rules if r.lhs == nt and len(r.rhs) == 1)
            n_binary = sum(
                1 for r in g.rules if r.lhs == nt and len(r.rhs) == 2)
            color[nt] = (nt == g.start, tuple(terminal_rules), n_binary)
        for _ in range(len(g.nonterminals) + 1):
            new = {}
            for nt in g.nonterminals:
                own_bodies = sorted(
                    (color[r.rhs[0]], color[r.rhs[1]])
                    for r in g.rules if r.lhs == nt and len(r.rhs) == 2)
                as_left = sorted(
                    (color[r.lhs], color[r.rhs[1]])
                    for r in g.rules if len(r.rhs) == 2 and r.rhs[0] == nt)
                as_right = sorted(
                    (color[r.lhs], color[r.rhs[0]])
                    for r in g.rules if len(r.rhs) == 2 and r.rhs[1] == nt)
                new[nt] = (color[nt], tuple(own_bodies), tuple(as_left),
                           tuple(as_right))
            if len(set(new.values())) == len(set(color.values())):
                color = new
                break
            color = new
        return color

    c1, c2 = refine(g1), refine(g2)
    if sorted(c1.values()) != sorted(c2.values()):
        return None

    by_color = {}
    for nt in g2.nonterminals:
        by_color.setdefault(c2[nt], []).append(nt)

    order = sorted(g1.nonterminals, key=lambda nt: len(by_color[c1[nt]]))
    rules2 = set(g2.rules)

    def extend(mapping, used, i):
        if i == len(order):
            mapped = {Rule(mapping[r.lhs],
                           tuple(mapping.get(s, s) for s in r.rhs))
                      for r in g1.rules}
            return mapped == rules2
        a = order[i]
        for b in by_color.get(c1[a], []):
            if b in used:
                continue
            if (a == g1.start) != (b == g2.start):
                continue
            mapping[a] = b
            used.add(b)
            if extend(mapping, used, i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    mapping = {}
    if extend(mapping, set(), 0):
        return mapping
    return None
