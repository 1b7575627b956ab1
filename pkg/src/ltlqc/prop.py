"""Propositional classes, queries and intervals, all as truth-table bitsets.

An *assignment* is an int whose bit ``i`` says whether the ``i``-th
proposition of the alphabet holds.  A ``PropClass`` stores the set of
satisfying assignments of a propositional formula as one int with bit
``A`` set iff assignment ``A`` satisfies it, so logical equivalence is
plain equality and the lattice operations are bitwise.

Order follows the weaker/stronger reading: ``c1 <= c2`` iff every model
of ``c2`` is a model of ``c1``.  ``true`` is the bottom of the lattice,
``false`` the top, conjunction is join and disjunction is meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import AlphabetError, NotPropositionalError
from .syntax import (
    FALSE,
    TRUE,
    Alphabet,
    And,
    Atom,
    FalseConst,
    Formula,
    Not,
    Or,
    TrueConst,
    Var,
    conj,
    disj,
    to_text,
)


@lru_cache(maxsize=None)
def _atom_masks(alphabet: Alphabet) -> tuple[int, ...]:
    n = len(alphabet)
    size = 1 << n
    masks = []
    for i in range(n):
        half = 1 << i
        # one period: `half` zeros then `half` ones, replicated by doubling
        mask = ((1 << half) - 1) << half
        width = half << 1
        while width < size:
            mask |= mask << width
            width <<= 1
        masks.append(mask)
    return tuple(masks)


def full_mask(alphabet: Alphabet) -> int:
    return (1 << (1 << len(alphabet))) - 1


def assignment_of(alphabet: Alphabet, names: Iterable[str]) -> int:
    bits = 0
    for name in names:
        bits |= 1 << alphabet.index(name)
    return bits


def props_of(alphabet: Alphabet, assignment: int) -> frozenset[str]:
    return frozenset(p for i, p in enumerate(alphabet.props) if assignment >> i & 1)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _same_alphabet(x, y) -> None:
    if x.alphabet != y.alphabet:
        raise AlphabetError(
            f"alphabet mismatch: {list(x.alphabet.props)} vs {list(y.alphabet.props)}"
        )


@dataclass(frozen=True)
class PropClass:
    """Equivalence class of propositional formulas over ``alphabet``."""

    alphabet: Alphabet
    bits: int

    @classmethod
    def true(cls, alphabet: Alphabet) -> PropClass:
        return cls(alphabet, full_mask(alphabet))

    @classmethod
    def false(cls, alphabet: Alphabet) -> PropClass:
        return cls(alphabet, 0)

    @classmethod
    def atom(cls, alphabet: Alphabet, name: str) -> PropClass:
        return cls(alphabet, _atom_masks(alphabet)[alphabet.index(name)])

    @classmethod
    def characteristic(cls, alphabet: Alphabet, assignment) -> PropClass:
        """``<A>``: the class satisfied by exactly the assignment ``A``."""
        if not isinstance(assignment, int):
            assignment = assignment_of(alphabet, assignment)
        return cls(alphabet, 1 << assignment)

    @classmethod
    def from_assignments(cls, alphabet: Alphabet, assignments: Iterable[int]) -> PropClass:
        bits = 0
        for a in assignments:
            bits |= 1 << a
        return cls(alphabet, bits)

    def sat(self) -> frozenset[int]:
        return frozenset(iter_bits(self.bits))

    def __contains__(self, assignment: int) -> bool:
        return bool(self.bits >> assignment & 1)

    def is_sat(self) -> bool:
        return self.bits != 0

    def is_valid(self) -> bool:
        return self.bits == full_mask(self.alphabet)

    def eps_satisfies(self) -> bool:
        """Whether the empty stream satisfies the class (it behaves like the empty assignment)."""
        return bool(self.bits & 1)

    def __and__(self, other: PropClass) -> PropClass:
        _same_alphabet(self, other)
        return PropClass(self.alphabet, self.bits & other.bits)

    def __or__(self, other: PropClass) -> PropClass:
        _same_alphabet(self, other)
        return PropClass(self.alphabet, self.bits | other.bits)

    def __invert__(self) -> PropClass:
        return PropClass(self.alphabet, self.bits ^ full_mask(self.alphabet))

    join = __and__
    meet = __or__

    def __le__(self, other: PropClass) -> bool:
        # weaker-or-equal: every model of other is a model of self
        _same_alphabet(self, other)
        return other.bits & ~self.bits == 0

    def __ge__(self, other: PropClass) -> bool:
        return other.__le__(self)

    def to_formula(self) -> Formula:
        """Canonical minterm DNF as an AST."""
        if self.bits == 0:
            return FALSE
        if self.is_valid():
            return TRUE
        return disj(_minterm(self.alphabet, a) for a in iter_bits(self.bits))

    def __str__(self) -> str:
        return to_dnf_string(self)


def _minterm(alphabet: Alphabet, assignment: int) -> Formula:
    lits = [
        Atom(p) if assignment >> i & 1 else Not(Atom(p))
        for i, p in enumerate(alphabet.props)
    ]
    return conj(lits)


def to_dnf_string(c: PropClass) -> str:
    if c.bits == 0:
        return "false"
    if c.is_valid():
        return "true"
    terms = []
    for a in iter_bits(c.bits):
        lits = [p if a >> i & 1 else f"!{p}" for i, p in enumerate(c.alphabet.props)]
        terms.append(" & ".join(lits))
    if len(terms) == 1:
        return terms[0]
    return " | ".join(f"({t})" if len(c.alphabet) > 1 else t for t in terms)


def all_classes(alphabet: Alphabet) -> Iterator[PropClass]:
    """Every equivalence class; there are ``2 ** 2 ** |AP|`` of them."""
    for bits in range(full_mask(alphabet) + 1):
        yield PropClass(alphabet, bits)


def _bits(f: Formula, alphabet: Alphabet, var_bits: int | None) -> int:
    masks = _atom_masks(alphabet)
    full = full_mask(alphabet)
    memo: dict[int, int] = {}

    def go(node: Formula) -> int:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, TrueConst):
            out = full
        elif isinstance(node, FalseConst):
            out = 0
        elif isinstance(node, Atom):
            out = masks[alphabet.index(node.name)]
        elif isinstance(node, Var):
            if var_bits is None:
                raise NotPropositionalError("formula contains var")
            out = var_bits
        elif isinstance(node, Not):
            out = go(node.arg) ^ full
        elif isinstance(node, And):
            out = go(node.left) & go(node.right)
        elif isinstance(node, Or):
            out = go(node.left) | go(node.right)
        else:
            raise NotPropositionalError(f"modal operator in {to_text(node)}")
        memo[key] = out
        return out

    return go(f)


def class_of(f: Formula, alphabet: Alphabet) -> PropClass:
    """Class of a propositional, ``var``-free formula."""
    return PropClass(alphabet, _bits(f, alphabet, None))


@dataclass(frozen=True)
class PropQueryClass:
    """Semantic form of a propositional query ``q[var]``.

    Stored as the satisfying sets of ``q[true]`` and ``q[false]``; the
    instantiation at any class ``c`` is then
    ``(if_true & c) | (if_false & ~c)``.  This pair is equivalent to the
    shattering normal form ``g1 | (var & g2) | (!var & g3)`` with
    ``g1 = if_true & if_false``, ``g2 = if_true - g1``, ``g3 = if_false - g1``.
    """

    alphabet: Alphabet
    if_true: int
    if_false: int

    @classmethod
    def constant(cls, c: PropClass) -> PropQueryClass:
        return cls(c.alphabet, c.bits, c.bits)

    @classmethod
    def from_snf(cls, g1: PropClass, g2: PropClass, g3: PropClass) -> PropQueryClass:
        _same_alphabet(g1, g2)
        _same_alphabet(g1, g3)
        return cls(g1.alphabet, g1.bits | g2.bits, g1.bits | g3.bits)

    @classmethod
    def var(cls, alphabet: Alphabet) -> PropQueryClass:
        return cls(alphabet, full_mask(alphabet), 0)

    @classmethod
    def dead(cls, alphabet: Alphabet) -> PropQueryClass:
        return cls(alphabet, 0, 0)

    @property
    def g1(self) -> PropClass:
        return PropClass(self.alphabet, self.if_true & self.if_false)

    @property
    def g2(self) -> PropClass:
        return PropClass(self.alphabet, self.if_true & ~self.if_false)

    @property
    def g3(self) -> PropClass:
        return PropClass(self.alphabet, self.if_false & ~self.if_true)

    def instantiate(self, c: PropClass) -> PropClass:
        _same_alphabet(self, c)
        return PropClass(self.alphabet, (self.if_true & c.bits) | (self.if_false & ~c.bits))

    def eps_holds(self, var_eps: bool) -> bool:
        """Truth at the empty stream, given whether ``var``'s instance holds there."""
        return bool((self.if_true if var_eps else self.if_false) & 1)

    def is_dead(self) -> bool:
        return self.if_true == 0 and self.if_false == 0

    def is_var_free(self) -> bool:
        return self.if_true == self.if_false

    def __and__(self, other: PropQueryClass) -> PropQueryClass:
        _same_alphabet(self, other)
        return PropQueryClass(self.alphabet, self.if_true & other.if_true, self.if_false & other.if_false)

    def __or__(self, other: PropQueryClass) -> PropQueryClass:
        _same_alphabet(self, other)
        return PropQueryClass(self.alphabet, self.if_true | other.if_true, self.if_false | other.if_false)

    def __invert__(self) -> PropQueryClass:
        full = full_mask(self.alphabet)
        return PropQueryClass(self.alphabet, self.if_true ^ full, self.if_false ^ full)

    def restrict(self, c: PropClass) -> PropQueryClass:
        """Conjunction with a var-free class."""
        _same_alphabet(self, c)
        return PropQueryClass(self.alphabet, self.if_true & c.bits, self.if_false & c.bits)

    def __str__(self) -> str:
        return f"{self.g1} | (var & {self.g2}) | (!var & {self.g3})"


def to_snf(q: Formula, alphabet: Alphabet) -> PropQueryClass:
    """Evaluate ``q`` at ``var = true`` and ``var = false``."""
    full = full_mask(alphabet)
    return PropQueryClass(alphabet, _bits(q, alphabet, full), _bits(q, alphabet, 0))


@dataclass(frozen=True)
class PropInterval:
    """All classes ``c`` with ``lower <= c <= upper``.

    Since ``true`` is the bottom, ``[true, false]`` is the whole lattice.
    """

    lower: PropClass
    upper: PropClass

    def __post_init__(self):
        _same_alphabet(self.lower, self.upper)

    @property
    def alphabet(self) -> Alphabet:
        return self.lower.alphabet

    @classmethod
    def full(cls, alphabet: Alphabet) -> PropInterval:
        return cls(PropClass.true(alphabet), PropClass.false(alphabet))

    @classmethod
    def from_assignment_sets(cls, alphabet: Alphabet, excluded: Iterable[int], required: Iterable[int]) -> PropInterval:
        """Interval of classes avoiding every assignment in ``excluded``
        and containing every assignment in ``required``.

        This is ``[!<A1> & ... & !<Ak>, <B1> | ... | <Bl>]`` for
        ``excluded = {A1..Ak}`` and ``required = {B1..Bl}``.
        """
        e = PropClass.from_assignments(alphabet, excluded)
        f = PropClass.from_assignments(alphabet, required)
        return cls(~e, f)

    def assignment_sets(self) -> tuple[frozenset[int], frozenset[int]]:
        """Inverse of ``from_assignment_sets``: the (excluded, required) pair."""
        return (~self.lower).sat(), self.upper.sat()

    def is_empty(self) -> bool:
        return self.upper.bits & ~self.lower.bits != 0

    def is_full(self) -> bool:
        return self.lower.is_valid() and self.upper.bits == 0

    def __contains__(self, c: PropClass) -> bool:
        return self.lower <= c <= self.upper

    def __and__(self, other: PropInterval) -> PropInterval:
        return interval_and(self, other)

    def __str__(self) -> str:
        return f"[{self.lower}, {self.upper}]"


def interval_and(i1: PropInterval, i2: PropInterval) -> PropInterval:
    """Intersection ``[l1 & l2, u1 | u2]``."""
    return PropInterval(i1.lower & i2.lower, i1.upper | i2.upper)


def shattering_interval(pq: PropQueryClass) -> PropInterval | None:
    """Classes ``c`` making ``pq[c]`` unsatisfiable, or ``None`` if there are none."""
    g1, g2, g3 = pq.g1, pq.g2, pq.g3
    if g1.is_sat() or not (~g2 <= g3):
        return None
    return PropInterval(~g2, g3)


def eps_class_intervals(alphabet: Alphabet) -> tuple[PropInterval, PropInterval]:
    """The classes the empty stream satisfies, and those it does not.

    ``[true, !a1 & ... & !an]`` and ``[a1 | ... | an, false]``.
    """
    empty = PropClass.characteristic(alphabet, 0)
    t = PropClass.true(alphabet)
    f = PropClass.false(alphabet)
    return PropInterval(t, empty), PropInterval(~empty, f)
