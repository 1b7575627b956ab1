"""Finite query automata: PNFAs whose labels and acceptance depend on ``var``."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .automata import Pnfa, _check_same, build_tableau
from .prop import PropClass, PropQueryClass
from .syntax import Alphabet, Formula


@dataclass(frozen=True)
class Fqa:
    """Query automaton.

    ``acceptance[q]`` is a propositional query; state ``q`` accepts in the
    instantiation at ``g`` iff the empty stream satisfies it with ``var := g``.
    Because the empty stream only sees whether ``g`` contains the empty
    assignment, there are just two possible accepting sets.
    """

    alphabet: Alphabet
    num_states: int
    start: int
    transitions: tuple[tuple[int, PropQueryClass, int], ...]
    acceptance: tuple[PropQueryClass, ...]
    tags: tuple[str, ...] = ()

    def accepting_set(self, var_eps: bool) -> frozenset[int]:
        return self.accepting_true if var_eps else self.accepting_false

    @cached_property
    def accepting_true(self) -> frozenset[int]:
        return frozenset(i for i, acc in enumerate(self.acceptance) if acc.eps_holds(True))

    @cached_property
    def accepting_false(self) -> frozenset[int]:
        return frozenset(i for i, acc in enumerate(self.acceptance) if acc.eps_holds(False))

    def labels(self) -> list[PropQueryClass]:
        """Distinct transition labels in first-occurrence order."""
        return list(dict.fromkeys(lbl for _, lbl, _ in self.transitions))


def query_tableau(q: Formula, alphabet: Alphabet) -> Fqa:
    """Query automaton for a PNF query; ``var`` literals ride along in the labels."""
    g = build_tableau(q, alphabet)
    transitions = tuple((src, label, dst) for (src, dst), label in g.transitions.items())
    return Fqa(alphabet, len(g.states), 0, transitions, tuple(g.acceptance), g.tags())


def instantiate(m: Fqa, g: PropClass) -> Pnfa:
    _check_same(m.alphabet, g.alphabet)
    transitions = []
    for src, label, dst in m.transitions:
        c = label.instantiate(g)
        if c.is_sat():
            transitions.append((src, c, dst))
    return Pnfa(m.alphabet, m.num_states, m.start, tuple(transitions), m.accepting_set(g.eps_satisfies()), m.tags)


def product_pnfa_fqa(m1: Pnfa, m2: Fqa) -> Fqa:
    """Product of a PNFA with a query automaton.

    Pair ``(q1, q2)`` gets the acceptance query of ``q2`` when ``q1`` is
    accepting and the constant-false query otherwise.  When ``m1``'s labels
    are single assignments, every composed label is automatically one of
    ``<A>``, ``false``, ``<A> & var`` or ``<A> & !var``.
    """
    _check_same(m1.alphabet, m2.alphabet)
    succ2: list[list[tuple[PropQueryClass, int]]] = [[] for _ in range(m2.num_states)]
    for src, label, dst in m2.transitions:
        succ2[src].append((label, dst))
    succ1 = m1._succ
    index = {(m1.start, m2.start): 0}
    pairs = [(m1.start, m2.start)]
    merged: dict[tuple[int, int], PropQueryClass] = {}
    todo = deque(pairs)
    while todo:
        p = todo.popleft()
        src = index[p]
        for bits, d1 in succ1[p[0]]:
            for label, d2 in succ2[p[1]]:
                composed = PropQueryClass(m1.alphabet, label.if_true & bits, label.if_false & bits)
                if composed.is_dead():
                    continue
                q = (d1, d2)
                dst = index.get(q)
                if dst is None:
                    dst = index[q] = len(pairs)
                    pairs.append(q)
                    todo.append(q)
                key = (src, dst)
                merged[key] = merged[key] | composed if key in merged else composed
    never = PropQueryClass.dead(m1.alphabet)
    acceptance = tuple(m2.acceptance[b] if a in m1.accepting else never for a, b in pairs)
    tags = tuple(f"({a},{b})" for a, b in pairs)
    transitions = tuple((s, lbl, d) for (s, d), lbl in merged.items())
    return Fqa(m1.alphabet, len(pairs), 0, transitions, acceptance, tags)


def to_json(m: Fqa) -> str:
    data = {
        "alphabet": list(m.alphabet.props),
        "start": m.start,
        "states": [
            {"id": i, "tag": m.tags[i] if m.tags else str(i), "acceptance": str(m.acceptance[i])}
            for i in range(m.num_states)
        ],
        "transitions": [{"src": s, "label": str(lbl), "dst": d} for s, lbl, d in m.transitions],
    }
    return json.dumps(data, indent=2)


def to_dot(m: Fqa, name: str = "fqa") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  __start [shape=point];"]
    for i in range(m.num_states):
        tag = m.tags[i] if m.tags else str(i)
        label = f"{tag}\nacc: {m.acceptance[i]}"
        lines.append(f"  s{i} [shape=box, label={json.dumps(label)}];")
    lines.append(f"  __start -> s{m.start};")
    for s, lbl, d in m.transitions:
        lines.append(f"  s{s} -> s{d} [label={json.dumps(str(lbl))}];")
    lines.append("}")
    return "\n".join(lines)
