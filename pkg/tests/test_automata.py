from __future__ import annotations

import json
import random

import pytest

from gen import AB, A, all_streams, exhaustive, random_formula
from ltlqc.automata import is_empty, product, stream_automaton, tableau, to_dot, to_json
from ltlqc.errors import AlphabetError, NotPnfError
from ltlqc.prop import PropClass
from ltlqc.semantics import DataStream, evaluate
from ltlqc.syntax import Not, parse, to_pnf

STREAMS_A = all_streams(A, 4)
STREAMS_AB = all_streams(AB, 4)
EPS_AB = DataStream(AB, ())


def lang(m, streams):
    return {pi.steps for pi in streams if m.accepts(pi)}


def sat(f, streams):
    return {pi.steps for pi in streams if evaluate(pi, f)}


class TestTableau:
    def test_atom(self):
        m = tableau(parse("a", A), A)
        assert m.num_states == 2
        assert m.start not in m.accepting
        sink = 1 - m.start
        assert set(m.transitions) == {(m.start, PropClass.atom(A, "a"), sink), (sink, PropClass.true(A), sink)}
        assert sink in m.accepting
        assert lang(m, STREAMS_A) == sat(parse("a", A), STREAMS_A)

    def test_false(self):
        m = tableau(parse("false"), A)
        assert is_empty(m)
        assert m.start not in m.accepting

    def test_weak_next_false(self):
        m = tableau(parse("WX false"), A)
        assert lang(m, STREAMS_A) == {()}

    def test_requires_pnf(self):
        with pytest.raises(NotPnfError):
            tableau(parse("!(a & a)", A), A)

    def test_language_depth3_over_a(self):
        for f in exhaustive(A, 3)[::3]:
            assert lang(tableau(to_pnf(f), A), STREAMS_A) == sat(f, STREAMS_A), f

    def test_language_random_over_ab(self):
        rng = random.Random(5)
        for _ in range(200):
            f = random_formula(rng, AB, 4)
            m = tableau(to_pnf(f), AB)
            assert lang(m, STREAMS_AB) == sat(f, STREAMS_AB), f
            assert (m.start in m.accepting) == evaluate(EPS_AB, f)
            assert all(lbl.is_sat() for _, lbl, _ in m.transitions)
            assert len({(s, d) for s, _, d in m.transitions}) == len(m.transitions)


class TestStreamAutomaton:
    def test_chain(self):
        pi = DataStream.from_sets(AB, [["a"], []])
        m = stream_automaton(pi)
        assert m.num_states == 3
        assert m.accepting == frozenset({2})
        assert [(s, lbl.sat(), d) for s, lbl, d in m.transitions] == [(0, {1}, 1), (1, {0}, 2)]
        assert m.accepts(pi)
        assert not m.accepts(DataStream.from_sets(AB, [["a"], ["b"]]))

    def test_empty_stream(self):
        m = stream_automaton(EPS_AB)
        assert m.num_states == 1 and m.transitions == () and m.start in m.accepting

    def test_accepts_only_itself(self):
        pi = DataStream(AB, (3, 0, 2))
        assert lang(stream_automaton(pi), STREAMS_AB) == {pi.steps}


class TestProduct:
    def test_examples(self):
        pi = DataStream(AB, (1, 2))
        assert lang(product(stream_automaton(pi), tableau(to_pnf(parse("G true")), AB)), STREAMS_AB) == {pi.steps}
        assert is_empty(product(stream_automaton(pi), tableau(parse("false"), AB)))
        assert not is_empty(stream_automaton(DataStream(AB, (1,))))
        m = product(tableau(parse("a"), AB), tableau(to_pnf(parse("!a & WX false")), AB))
        assert is_empty(m)

    def test_intersection(self):
        rng = random.Random(9)
        for _ in range(50):
            f1, f2 = random_formula(rng, AB, 4), random_formula(rng, AB, 4)
            m = product(tableau(to_pnf(f1), AB), tableau(to_pnf(f2), AB))
            assert lang(m, STREAMS_AB) == sat(f1, STREAMS_AB) & sat(f2, STREAMS_AB)

    def test_qc1_reduction_var_free(self):
        rng = random.Random(10)
        for _ in range(50):
            f = random_formula(rng, AB, 4)
            pi = DataStream(AB, tuple(rng.randrange(4) for _ in range(rng.randint(0, 4))))
            m = product(stream_automaton(pi), tableau(to_pnf(Not(f)), AB))
            assert is_empty(m) == evaluate(pi, f)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetError):
            product(tableau(parse("a"), A), tableau(parse("a"), AB))


class TestDumps:
    def test_json(self):
        data = json.loads(to_json(tableau(parse("a", A), A)))
        assert data["alphabet"] == ["a"]
        assert len(data["states"]) == 2
        assert data["transitions"][0]["label"] == "a"

    def test_dot(self):
        text = to_dot(stream_automaton(DataStream(AB, (1,))))
        assert text.startswith("digraph")
        assert '"a & !b"' in text
        assert "doublecircle" in text
