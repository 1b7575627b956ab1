"""Propositional NFAs: tableau construction, stream chains, product, emptiness."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import AlphabetError, NotPnfError
from .prop import PropClass, PropQueryClass, _atom_masks, full_mask, to_dnf_string, to_snf
from .semantics import DataStream
from .syntax import (
    Alphabet,
    And,
    Atom,
    FalseConst,
    Formula,
    Next,
    Not,
    Or,
    Release,
    TrueConst,
    Until,
    Var,
    WeakNext,
    check_alphabet,
    conj,
    eps_projection,
    has_var,
    is_pnf,
    to_text,
)


@dataclass(frozen=True)
class Pnfa:
    """NFA over assignments whose transitions carry propositional classes.

    Every stored label is satisfiable.  ``tags`` optionally names each
    state (for tableau automata, the obligations it stands for).
    """

    alphabet: Alphabet
    num_states: int
    start: int
    transitions: tuple[tuple[int, PropClass, int], ...]
    accepting: frozenset[int]
    tags: tuple[str, ...] = ()

    @cached_property
    def _succ(self) -> list[list[tuple[int, int]]]:
        succ: list[list[tuple[int, int]]] = [[] for _ in range(self.num_states)]
        for src, label, dst in self.transitions:
            succ[src].append((label.bits, dst))
        return succ

    def accepts(self, steps) -> bool:
        if isinstance(steps, DataStream):
            steps = steps.steps
        succ = self._succ
        current = {self.start}
        for a in steps:
            nxt = set()
            for q in current:
                for bits, dst in succ[q]:
                    if bits >> a & 1:
                        nxt.add(dst)
            if not nxt:
                return False
            current = nxt
        return not current.isdisjoint(self.accepting)


def _check_same(a1: Alphabet, a2: Alphabet) -> None:
    if a1 != a2:
        raise AlphabetError(f"alphabet mismatch: {list(a1.props)} vs {list(a2.props)}")


def reachable(num_states: int, start: int, edges: Iterable[tuple[int, int]]) -> set[int]:
    succ: list[list[int]] = [[] for _ in range(num_states)]
    for src, dst in edges:
        succ[src].append(dst)
    seen = {start}
    todo = [start]
    while todo:
        q = todo.pop()
        for r in succ[q]:
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def is_empty(m: Pnfa) -> bool:
    """No accepting state reachable through (live) transitions."""
    seen = reachable(m.num_states, m.start, ((s, d) for s, lbl, d in m.transitions if lbl.is_sat()))
    return seen.isdisjoint(m.accepting)


# ---------------------------------------------------------------------------
# Tableau


def _complement(lit: Formula) -> Formula:
    return lit.arg if isinstance(lit, Not) else Not(lit)


def expand(obligations: Iterable[Formula]) -> set[tuple[frozenset[Formula], frozenset[Formula]]]:
    """Split a set of PNF obligations into ``(literals, next-obligations)`` alternatives.

    Uses ``a U b == b | (a & X(a U b))`` and ``a R b == b & (a | WX(a R b))``.
    On a transition a symbol has been consumed, so ``X`` and ``WX``
    obligations both simply move to the next state.
    """
    out: set[tuple[frozenset[Formula], frozenset[Formula]]] = set()

    def go(todo: tuple[Formula, ...], lits: frozenset[Formula], nxt: frozenset[Formula]) -> None:
        while todo:
            f, todo = todo[0], todo[1:]
            if isinstance(f, TrueConst):
                continue
            if isinstance(f, FalseConst):
                return
            if isinstance(f, (Atom, Var, Not)):
                if _complement(f) in lits:
                    return
                lits = lits | {f}
            elif isinstance(f, And):
                todo = (f.left, f.right) + todo
            elif isinstance(f, Or):
                go((f.left,) + todo, lits, nxt)
                todo = (f.right,) + todo
            elif isinstance(f, (Next, WeakNext)):
                if isinstance(f.arg, FalseConst):
                    return
                if not isinstance(f.arg, TrueConst):
                    nxt = nxt | {f.arg}
            elif isinstance(f, Until):
                go((f.right,) + todo, lits, nxt)
                todo = (f.left,) + todo
                nxt = nxt | {f}
            elif isinstance(f, Release):
                go((f.right, f.left) + todo, lits, nxt)
                todo = (f.right,) + todo
                nxt = nxt | {f}
            else:
                raise TypeError(f"unexpected node {f!r}")
        out.add((lits, nxt))

    go(tuple(obligations), frozenset(), frozenset())
    return out


def literal_label(lits: Iterable[Formula], alphabet: Alphabet) -> PropQueryClass:
    """Conjunction of literals (atoms, ``var`` and their negations) as a query class."""
    masks = _atom_masks(alphabet)
    full = full_mask(alphabet)
    bits = full
    pos_var = neg_var = False
    for lit in lits:
        if isinstance(lit, Var):
            pos_var = True
        elif isinstance(lit, Not) and isinstance(lit.arg, Var):
            neg_var = True
        elif isinstance(lit, Atom):
            bits &= masks[alphabet.index(lit.name)]
        else:
            bits &= masks[alphabet.index(lit.arg.name)] ^ full
    return PropQueryClass(alphabet, 0 if neg_var else bits, 0 if pos_var else bits)


def _state_tag(state: frozenset[Formula]) -> str:
    if not state:
        return "{}"
    return "{" + ", ".join(sorted(to_text(f) for f in state)) + "}"


@dataclass
class TableauGraph:
    """Reachable tableau states with query-class labels, before specialisation."""

    alphabet: Alphabet
    states: list[frozenset[Formula]]
    transitions: dict[tuple[int, int], PropQueryClass]
    acceptance: list[PropQueryClass]

    def tags(self) -> tuple[str, ...]:
        return tuple(_state_tag(s) for s in self.states)


def build_tableau(f: Formula, alphabet: Alphabet) -> TableauGraph:
    """Tableau over obligation sets; ``f`` must be in PNF (``var`` allowed)."""
    if not is_pnf(f):
        raise NotPnfError(f"not in positive normal form: {to_text(f)}")
    check_alphabet(f, alphabet)
    start = frozenset() if isinstance(f, TrueConst) else frozenset({f})
    index = {start: 0}
    states = [start]
    transitions: dict[tuple[int, int], PropQueryClass] = {}
    acceptance: list[PropQueryClass] = []
    todo = deque([start])
    while todo:
        state = todo.popleft()
        src = index[state]
        acceptance.append(to_snf(eps_projection(conj(sorted(state, key=to_text))), alphabet))
        for lits, nxt in expand(sorted(state, key=to_text)):
            label = literal_label(lits, alphabet)
            if label.is_dead():
                continue
            dst = index.get(nxt)
            if dst is None:
                dst = index[nxt] = len(states)
                states.append(nxt)
                todo.append(nxt)
            key = (src, dst)
            transitions[key] = transitions[key] | label if key in transitions else label
    return TableauGraph(alphabet, states, transitions, acceptance)


def tableau(f: Formula, alphabet: Alphabet) -> Pnfa:
    """PNFA accepting exactly the streams satisfying PNF formula ``f``."""
    if has_var(f):
        raise ValueError("tableau() takes a var-free formula; use fqa.query_tableau for queries")
    g = build_tableau(f, alphabet)
    transitions = tuple(
        (src, PropClass(alphabet, label.if_true), dst) for (src, dst), label in g.transitions.items()
    )
    accepting = frozenset(i for i, acc in enumerate(g.acceptance) if acc.eps_holds(True))
    return Pnfa(alphabet, len(g.states), 0, transitions, accepting, g.tags())


def stream_automaton(pi: DataStream) -> Pnfa:
    """Chain ``q0 -<A0>-> q1 ... -> qn`` accepting exactly ``pi``."""
    n = len(pi)
    transitions = tuple(
        (i, PropClass.characteristic(pi.alphabet, a), i + 1) for i, a in enumerate(pi.steps)
    )
    return Pnfa(pi.alphabet, n + 1, 0, transitions, frozenset({n}), tuple(f"q{i}" for i in range(n + 1)))


def product(m1: Pnfa, m2: Pnfa) -> Pnfa:
    """Synchronous product; language is the intersection."""
    _check_same(m1.alphabet, m2.alphabet)
    succ1, succ2 = m1._succ, m2._succ
    index = {(m1.start, m2.start): 0}
    pairs = [(m1.start, m2.start)]
    transitions = []
    todo = deque(pairs)
    while todo:
        p = todo.popleft()
        src = index[p]
        for b1, d1 in succ1[p[0]]:
            for b2, d2 in succ2[p[1]]:
                bits = b1 & b2
                if not bits:
                    continue
                q = (d1, d2)
                dst = index.get(q)
                if dst is None:
                    dst = index[q] = len(pairs)
                    pairs.append(q)
                    todo.append(q)
                transitions.append((src, PropClass(m1.alphabet, bits), dst))
    accepting = frozenset(i for i, (a, b) in enumerate(pairs) if a in m1.accepting and b in m2.accepting)
    tags = tuple(f"({a},{b})" for a, b in pairs)
    return Pnfa(m1.alphabet, len(pairs), 0, tuple(transitions), accepting, tags)


# ---------------------------------------------------------------------------
# Dumps


def to_json(m: Pnfa) -> str:
    data = {
        "alphabet": list(m.alphabet.props),
        "start": m.start,
        "states": [
            {"id": i, "tag": m.tags[i] if m.tags else str(i), "accepting": i in m.accepting}
            for i in range(m.num_states)
        ],
        "transitions": [
            {"src": s, "label": to_dnf_string(lbl), "dst": d} for s, lbl, d in m.transitions
        ],
    }
    return json.dumps(data, indent=2)


def to_dot(m: Pnfa, name: str = "pnfa") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
    for i in range(m.num_states):
        shape = "doublecircle" if i in m.accepting else "circle"
        tag = m.tags[i] if m.tags else str(i)
        lines.append(f"  s{i} [shape={shape}, label={json.dumps(tag)}];")
    lines.append(f"  __start -> s{m.start};")
    for s, lbl, d in m.transitions:
        lines.append(f"  s{s} -> s{d} [label={json.dumps(to_dnf_string(lbl))}];")
    lines.append("}")
    return "\n".join(lines)
