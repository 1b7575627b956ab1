"""Finite LTL formulas and queries: AST, parser, printer and rewrites.

A query is an ordinary formula tree that may contain the placeholder
``Var``.  Formulas without ``Var`` are just queries with zero occurrences,
so both share one node hierarchy.

Derived operators are expanded while parsing::

    F p    ->  true U p
    G p    ->  !(true U !p)
    p -> q ->  !p | q

``|``, ``WX`` and ``R`` stay first-class because positive normal form
needs them.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import AlphabetError, NotPnfError, ParseError, UnknownAtomError

KEYWORDS = frozenset({"X", "WX", "U", "R", "F", "G", "true", "false", "var"})
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of atomic propositions.

    The position of a name fixes its bit in assignment encodings.
    """

    props: tuple[str, ...]

    def __init__(self, props):
        props = tuple(props)
        object.__setattr__(self, "props", props)
        if not props:
            raise AlphabetError("alphabet must be non-empty")
        if len(set(props)) != len(props):
            raise AlphabetError(f"duplicate proposition names in {props!r}")
        for name in props:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise AlphabetError(f"invalid proposition name {name!r}")
            if name in KEYWORDS:
                raise AlphabetError(f"{name!r} is a reserved word")

    def __len__(self) -> int:
        return len(self.props)

    def __iter__(self):
        return iter(self.props)

    def __contains__(self, name) -> bool:
        return name in self.props

    def index(self, name: str) -> int:
        try:
            return self.props.index(name)
        except ValueError:
            raise AlphabetError(f"{name!r} is not in alphabet {list(self.props)}") from None

    def subset(self, names) -> Alphabet:
        """Sub-alphabet keeping this alphabet's order."""
        keep = set(names)
        for n in keep:
            self.index(n)
        return Alphabet(p for p in self.props if p in keep)


# ---------------------------------------------------------------------------
# AST


class Formula:
    """Base class of all AST nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class TrueConst(Formula):
    def __repr__(self):
        return "TRUE"


@dataclass(frozen=True)
class FalseConst(Formula):
    def __repr__(self):
        return "FALSE"


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Var(Formula):
    def __repr__(self):
        return "VAR"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula


@dataclass(frozen=True)
class WeakNext(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


TRUE = TrueConst()
FALSE = FalseConst()
VAR = Var()

Query = Formula
UNARY = (Not, Next, WeakNext)
BINARY = (And, Or, Until, Release)
MODAL = (Next, WeakNext, Until, Release)


def F(f: Formula) -> Formula:
    return Until(TRUE, f)


def G(f: Formula) -> Formula:
    return Not(Until(TRUE, Not(f)))


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def conj(items) -> Formula:
    items = list(items)
    if not items:
        return TRUE
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def disj(items) -> Formula:
    items = list(items)
    if not items:
        return FALSE
    out = items[0]
    for f in items[1:]:
        out = Or(out, f)
    return out


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY):
        return (f.arg,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def rebuild(f: Formula, kids) -> Formula:
    return type(f)(*kids) if kids else f


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order traversal (children before parents, duplicates included)."""
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        if done:
            yield node
            continue
        stack.append((node, True))
        for k in reversed(children(node)):
            stack.append((k, False))


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(n.name for n in subformulas(f) if isinstance(n, Atom))


def has_var(f: Formula) -> bool:
    return any(isinstance(n, Var) for n in subformulas(f))


def is_propositional(f: Formula) -> bool:
    return not any(isinstance(n, MODAL) for n in subformulas(f))


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def depth(f: Formula) -> int:
    kids = children(f)
    return 1 + max((depth(k) for k in kids), default=0)


def check_alphabet(f: Formula, alphabet: Alphabet) -> None:
    missing = sorted(atoms(f) - set(alphabet.props))
    if missing:
        raise AlphabetError(f"propositions {missing} are not in alphabet {list(alphabet.props)}")


# ---------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(r"(\s+)|(->|[!&|()]|[A-Za-z_][A-Za-z0-9_]*)|(.)", re.S)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        if m.group(3) is not None:
            raise ParseError(f"unexpected character {m.group(3)!r}", m.start(), text)
        if m.group(2) is not None:
            tokens.append((m.group(2), m.start()))
    tokens.append(("<eof>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.text = text
        self.alphabet = alphabet
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}, found {self.peek()!r}", self.pos(), self.text)
        self.i += 1

    def parse(self) -> Formula:
        f = self.implication()
        if self.peek() != "<eof>":
            raise ParseError(f"unexpected token {self.peek()!r}", self.pos(), self.text)
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.temporal()
        while self.peek() == "&":
            self.take()
            left = And(left, self.temporal())
        return left

    def temporal(self) -> Formula:
        left = self.unary()
        tok = self.peek()
        if tok == "U":
            self.take()
            return Until(left, self.temporal())
        if tok == "R":
            self.take()
            return Release(left, self.temporal())
        return left

    def unary(self) -> Formula:
        pos = self.pos()
        tok = self.take()
        if tok == "!":
            return Not(self.unary())
        if tok == "X":
            return Next(self.unary())
        if tok == "WX":
            return WeakNext(self.unary())
        if tok == "F":
            return F(self.unary())
        if tok == "G":
            return G(self.unary())
        if tok == "(":
            inner = self.implication()
            self.expect(")")
            return inner
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        if tok == "var":
            return VAR
        if tok in ("U", "R", "<eof>", ")", "&", "|", "->"):
            raise ParseError(f"unexpected token {tok!r}", pos, self.text)
        if self.alphabet is not None and tok not in self.alphabet:
            raise UnknownAtomError(tok, pos, self.text)
        return Atom(tok)


def parse(text: str, alphabet: Alphabet | None = None) -> Formula:
    """Parse query text.

    Precedence, tightest first: unary (``! X WX F G``), ``U``/``R``
    (right-associative), ``&``, ``|``, ``->`` (right-associative).
    When ``alphabet`` is given, identifiers outside it are rejected.
    """
    return _Parser(text, alphabet).parse()


# ---------------------------------------------------------------------------
# Printer

_LEVEL = {Or: 1, And: 2, Until: 3, Release: 3}
_SYMBOL = {Or: "|", And: "&", Until: "U", Release: "R", Not: "!", Next: "X", WeakNext: "WX"}


def _level(f: Formula) -> int:
    return _LEVEL.get(type(f), 4)


def to_text(f: Formula) -> str:
    """Print ``f`` in the concrete grammar; ``parse`` inverts this exactly."""
    if isinstance(f, TrueConst):
        return "true"
    if isinstance(f, FalseConst):
        return "false"
    if isinstance(f, Var):
        return "var"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, UNARY):
        inner = to_text(f.arg)
        if _level(f.arg) < 4:
            inner = f"({inner})"
        sep = "" if isinstance(f, Not) else " "
        return f"{_SYMBOL[type(f)]}{sep}{inner}"
    lvl = _level(f)
    left, right = to_text(f.left), to_text(f.right)
    if isinstance(f, (Until, Release)):
        # right-associative
        if _level(f.left) <= lvl:
            left = f"({left})"
        if _level(f.right) < lvl:
            right = f"({right})"
    else:
        if _level(f.left) < lvl:
            left = f"({left})"
        if _level(f.right) <= lvl:
            right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# ---------------------------------------------------------------------------
# Rewrites


def to_pnf(f: Formula) -> Formula:
    """Push negations down to atoms and ``var``."""
    return _pnf(f, False)


def _pnf(f: Formula, neg: bool) -> Formula:
    if isinstance(f, Not):
        return _pnf(f.arg, not neg)
    if isinstance(f, TrueConst):
        return FALSE if neg else TRUE
    if isinstance(f, FalseConst):
        return TRUE if neg else FALSE
    if isinstance(f, (Atom, Var)):
        return Not(f) if neg else f
    if isinstance(f, Next):
        return (WeakNext if neg else Next)(_pnf(f.arg, neg))
    if isinstance(f, WeakNext):
        return (Next if neg else WeakNext)(_pnf(f.arg, neg))
    dual = {And: Or, Or: And, Until: Release, Release: Until}
    ctor = dual[type(f)] if neg else type(f)
    return ctor(_pnf(f.left, neg), _pnf(f.right, neg))


def is_pnf(f: Formula) -> bool:
    return all(
        isinstance(n.arg, (Atom, Var)) for n in subformulas(f) if isinstance(n, Not)
    )


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"
    ABSENT = "absent"


def polarity(f: Formula) -> Polarity:
    seen = set()
    stack = [(f, 0)]
    while stack:
        node, negs = stack.pop()
        if isinstance(node, Var):
            seen.add(negs % 2)
        elif isinstance(node, Not):
            stack.append((node.arg, negs + 1))
        else:
            stack.extend((k, negs) for k in children(node))
    if not seen:
        return Polarity.ABSENT
    if seen == {0}:
        return Polarity.POSITIVE
    if seen == {1}:
        return Polarity.NEGATIVE
    return Polarity.MIXED


def substitute(f: Formula, g: Union[Formula, object]) -> Formula:
    """Replace every ``var`` by ``g``.

    ``g`` is either a propositional formula or any object with a
    ``to_formula()`` method (a ``PropClass``, which contributes its
    canonical minterm DNF).
    """
    if not isinstance(g, Formula):
        g = g.to_formula()
    if has_var(g):
        raise ValueError("substituted formula must not contain var")
    return _subst(f, g)


def _subst(f: Formula, g: Formula) -> Formula:
    if isinstance(f, Var):
        return g
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_subst(k, g) for k in kids])


def eps_projection(f: Formula) -> Formula:
    """Propositional query that the empty stream satisfies exactly when ``f`` does.

    The input must be in PNF.  Modal operators collapse to what they
    mean on an empty stream: ``X`` is false, ``WX`` is true, and both
    ``U`` and ``R`` reduce to their right operand.
    """
    if not is_pnf(f):
        raise NotPnfError(f"not in positive normal form: {to_text(f)}")
    return _eps(f)


def _eps(f: Formula) -> Formula:
    if isinstance(f, (Atom, Var, TrueConst, FalseConst, Not)):
        return f
    if isinstance(f, Next):
        return FALSE
    if isinstance(f, WeakNext):
        return TRUE
    if isinstance(f, (Until, Release)):
        return _eps(f.right)
    return type(f)(_eps(f.left), _eps(f.right))
