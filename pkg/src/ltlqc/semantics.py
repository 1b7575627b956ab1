"""Data streams and direct evaluation of Finite LTL over them.

Streams are finite and may be empty.  Suffix ``i`` of a stream of length
``n`` is defined for ``0 <= i <= n``; suffix ``n`` is the empty stream,
and it takes part in ``U``/``R`` like any other position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlphabetError, NotPropositionalError, StreamError
from .prop import PropClass, all_classes, assignment_of, props_of
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
    substitute,
)


@dataclass(frozen=True)
class RawStream:
    """Timestamped observations ``(t, A)`` with non-decreasing ``t``."""

    alphabet: Alphabet
    observations: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "observations", tuple(self.observations))


@dataclass(frozen=True)
class DataStream:
    """Normalized stream: a sequence of assignments (ints over ``alphabet``)."""

    alphabet: Alphabet
    steps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        limit = 1 << len(self.alphabet)
        for a in self.steps:
            if not 0 <= a < limit:
                raise StreamError(f"assignment {a} out of range for {len(self.alphabet)} propositions")

    @classmethod
    def from_sets(cls, alphabet: Alphabet, steps: Iterable[Iterable[str]]) -> DataStream:
        try:
            return cls(alphabet, tuple(assignment_of(alphabet, s) for s in steps))
        except AlphabetError as exc:
            raise StreamError(str(exc)) from None

    def __len__(self) -> int:
        return len(self.steps)

    def suffix(self, i: int) -> DataStream:
        if not 0 <= i <= len(self.steps):
            raise IndexError(i)
        return DataStream(self.alphabet, self.steps[i:])

    def as_sets(self) -> list[frozenset[str]]:
        return [props_of(self.alphabet, a) for a in self.steps]

    def project(self, alphabet: Alphabet) -> DataStream:
        """Restrict to a sub-alphabet, dropping the other propositions."""
        idx = [self.alphabet.index(p) for p in alphabet.props]
        steps = []
        for a in self.steps:
            b = 0
            for j, i in enumerate(idx):
                if a >> i & 1:
                    b |= 1 << j
            steps.append(b)
        return DataStream(alphabet, tuple(steps))


def normalize(raw: RawStream) -> DataStream:
    prev = None
    for i, (t, _) in enumerate(raw.observations):
        if prev is not None and t < prev:
            raise StreamError(f"timestamp decreases at observation {i} ({prev} -> {t})")
        prev = t
    return DataStream(raw.alphabet, tuple(a for _, a in raw.observations))


def _truth_table(pi: DataStream, f: Formula, var: PropClass | None) -> list[bool]:
    """Truth value of ``f`` at every suffix ``0..n``, bottom-up over subformulas."""
    steps = pi.steps
    n = len(steps)
    memo: dict[Formula, list[bool]] = {}

    def go(node: Formula) -> list[bool]:
        hit = memo.get(node)
        if hit is not None:
            return hit
        if isinstance(node, TrueConst):
            out = [True] * (n + 1)
        elif isinstance(node, FalseConst):
            out = [False] * (n + 1)
        elif isinstance(node, Atom):
            bit = pi.alphabet.index(node.name)
            out = [bool(a >> bit & 1) for a in steps] + [False]
        elif isinstance(node, Var):
            if var is None:
                raise NotPropositionalError("cannot evaluate a query with an unbound var")
            out = [a in var for a in steps] + [var.eps_satisfies()]
        elif isinstance(node, Not):
            out = [not v for v in go(node.arg)]
        elif isinstance(node, And):
            out = [x and y for x, y in zip(go(node.left), go(node.right))]
        elif isinstance(node, Or):
            out = [x or y for x, y in zip(go(node.left), go(node.right))]
        elif isinstance(node, Next):
            sub = go(node.arg)
            out = sub[1:] + [False]
        elif isinstance(node, WeakNext):
            sub = go(node.arg)
            out = sub[1:] + [True]
        elif isinstance(node, Until):
            s1, s2 = go(node.left), go(node.right)
            out = [False] * (n + 1)
            out[n] = s2[n]
            for i in range(n - 1, -1, -1):
                out[i] = s2[i] or (s1[i] and out[i + 1])
        elif isinstance(node, Release):
            s1, s2 = go(node.left), go(node.right)
            out = [False] * (n + 1)
            out[n] = s2[n]
            for i in range(n - 1, -1, -1):
                out[i] = s2[i] and (s1[i] or out[i + 1])
        else:
            raise TypeError(f"unknown formula node {node!r}")
        memo[node] = out
        return out

    return go(f)


def evaluate(pi: DataStream, f: Formula, var: PropClass | None = None) -> bool:
    """``pi |= f``.

    ``var`` optionally binds the unknown directly to a class, which is
    equivalent to evaluating ``substitute(f, var)``.
    """
    check_alphabet(f, pi.alphabet)
    return _truth_table(pi, f, var)[0]


def evaluate_all_suffixes(pi: DataStream, f: Formula) -> list[bool]:
    check_alphabet(f, pi.alphabet)
    return _truth_table(pi, f, None)


ORACLE_MAX_AP = 4


def brute_force_solutions(streams: Sequence[DataStream], q: Formula, alphabet: Alphabet | None = None) -> set[PropClass]:
    """Every class ``g`` with ``pi |= q[g]`` for all streams, by enumeration.

    Substitutes the canonical DNF of each class literally; this is the
    reference that the automaton pipeline is tested against.
    """
    if alphabet is None:
        if not streams:
            raise ValueError("alphabet required when no streams are given")
        alphabet = streams[0].alphabet
    if len(alphabet) > ORACLE_MAX_AP:
        raise AlphabetError(f"oracle limited to {ORACLE_MAX_AP} propositions")
    for pi in streams:
        if pi.alphabet != alphabet:
            raise AlphabetError("streams use different alphabets")
    out = set()
    for g in all_classes(alphabet):
        f = substitute(q, g)
        if all(evaluate(pi, f) for pi in streams):
            out.add(g)
    return out
