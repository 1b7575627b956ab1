from __future__ import annotations

import pytest
from hypothesis import given, settings

from gen import AB, A, all_streams, formulas, queries
from ltlqc.errors import AlphabetError, NotPnfError, ParseError, UnknownAtomError
from ltlqc.prop import PropClass, all_classes
from ltlqc.semantics import DataStream, evaluate
from ltlqc.syntax import (
    FALSE,
    TRUE,
    VAR,
    Alphabet,
    And,
    Atom,
    F,
    G,
    Next,
    Not,
    Or,
    Polarity,
    Release,
    Until,
    WeakNext,
    depth,
    eps_projection,
    has_var,
    implies,
    is_pnf,
    parse,
    polarity,
    substitute,
    to_pnf,
    to_text,
)

a, b, c = Atom("a"), Atom("b"), Atom("c")
ABC = Alphabet(["a", "b", "c"])
STREAMS_AB = all_streams(AB, 3)
EPS = DataStream(AB, ())


class TestAlphabet:
    def test_index_and_subset(self):
        ab = Alphabet(["x", "y", "z"])
        assert ab.index("z") == 2
        assert ab.subset({"z", "x"}).props == ("x", "z")

    @pytest.mark.parametrize("props", [[], ["a", "a"], ["1a"], ["var"], ["X"], ["true"]])
    def test_rejects(self, props):
        with pytest.raises(AlphabetError):
            Alphabet(props)


class TestParse:
    def test_phi1_shape(self):
        want = G(implies(a, F(And(VAR, Next(TRUE)))))
        assert parse("G(a -> F(var & X true))") == want

    def test_constants(self):
        assert parse("true") == TRUE
        assert parse("false") == FALSE
        assert parse("var") == VAR

    def test_nested_release(self):
        assert parse("a U (b R c)", ABC) == Until(a, Release(b, c))

    def test_until_right_assoc(self):
        assert parse("a U b R c") == Until(a, Release(b, c))

    def test_precedence(self):
        assert parse("a | b & c") == Or(a, And(b, c))
        assert parse("a & b U c") == And(a, Until(b, c))
        assert parse("!a U b") == Until(Not(a), b)
        assert parse("a -> b -> c") == implies(a, implies(b, c))
        assert parse("a | b -> c") == implies(Or(a, b), c)
        assert parse("X WX a") == Next(WeakNext(a))

    def test_desugaring(self):
        assert parse("F a") == Until(TRUE, a)
        assert parse("G a") == Not(Until(TRUE, Not(a)))
        assert parse("a -> b") == Or(Not(a), b)

    @pytest.mark.parametrize("text, pos", [("a &", 3), ("(a", 2), ("a b", 2), ("a $ b", 2), ("", 0), (")", 0)])
    def test_syntax_errors_report_position(self, text, pos):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.pos == pos
        assert f"position {pos}" in str(err.value)

    def test_unknown_atom(self):
        with pytest.raises(UnknownAtomError) as err:
            parse("a & d", AB)
        assert "'d'" in str(err.value)
        assert err.value.pos == 4

    @given(formulas(AB, 5, with_var=True))
    def test_round_trip(self, f):
        assert parse(to_text(f)) == f


class TestPnf:
    def test_examples(self):
        assert to_pnf(Not(Until(a, b))) == Release(Not(a), Not(b))
        assert to_pnf(Not(Next(a))) == WeakNext(Not(a))
        assert to_pnf(Not(WeakNext(a))) == Next(Not(a))
        assert to_pnf(Not(Not(VAR))) == VAR
        assert to_pnf(Not(TRUE)) == FALSE

    def test_is_pnf(self):
        assert is_pnf(parse("!a U (WX !var)"))
        assert not is_pnf(parse("!(a & b)"))

    @settings(max_examples=150, deadline=None)
    @given(queries(AB, 5))
    def test_pnf_soundness(self, q):
        p = to_pnf(q)
        assert is_pnf(p)
        for g in all_classes(AB):
            for pi in STREAMS_AB:
                assert evaluate(pi, q, var=g) == evaluate(pi, p, var=g)

    @given(queries(AB, 5))
    def test_polarity_preserved(self, q):
        pol = polarity(q)
        if pol is not Polarity.MIXED:
            assert polarity(to_pnf(q)) is pol


class TestPolarity:
    @pytest.mark.parametrize(
        "text, want",
        [
            ("var & a", Polarity.POSITIVE),
            ("!var | (a & !var)", Polarity.NEGATIVE),
            ("var | !var", Polarity.MIXED),
            ("a U b", Polarity.ABSENT),
            ("var -> a", Polarity.NEGATIVE),
            ("!!var", Polarity.POSITIVE),
        ],
    )
    def test_examples(self, text, want):
        assert polarity(parse(text)) is want


class TestSubstitute:
    def test_examples(self):
        t = PropClass.true(A)
        assert substitute(G(VAR), t) == G(TRUE)
        assert substitute(parse("var & !var"), PropClass.atom(A, "a")) == parse("(a) & !(a)")

    def test_replaces_with_class_formula(self):
        g = ~PropClass.atom(AB, "a") & PropClass.atom(AB, "b")
        out = substitute(parse("G(a -> F var)"), g)
        assert not has_var(out)
        assert out == G(implies(a, F(g.to_formula())))

    def test_formula_argument(self):
        assert substitute(parse("var U var"), b) == Until(b, b)


class TestEpsProjection:
    def test_examples(self):
        assert eps_projection(to_pnf(G(a))) == a
        assert eps_projection(parse("WX var")) == TRUE
        proj = eps_projection(parse("F(var & X true)"))
        assert proj == And(VAR, FALSE)

    def test_requires_pnf(self):
        with pytest.raises(NotPnfError):
            eps_projection(parse("!(a & b)"))

    @settings(max_examples=150, deadline=None)
    @given(queries(AB, 5))
    def test_soundness(self, q):
        proj = eps_projection(to_pnf(q))
        assert depth(proj) <= depth(to_pnf(q))
        for g in all_classes(AB):
            assert evaluate(EPS, q, var=g) == evaluate(EPS, proj, var=g)
