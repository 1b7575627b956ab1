"""Shattering query automata: which instantiations of ``var`` empty the language.

Intervals are handled inside the subset loop as a pair of assignment
bitsets ``(excluded, required)``: a class ``c`` lies in the interval iff
it contains no excluded assignment and every required one.  The pair
for ``[lower, upper]`` is ``(~lower, upper)``, so this form is exact for
every interval.  Conjunction becomes union on both sides and an interval
is empty iff the two sets meet.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable

from .fqa import Fqa
from .prop import PropClass, PropInterval, PropQueryClass, all_classes, full_mask, shattering_interval
from .errors import QcTimeout
from .syntax import Alphabet


class LabelKind(enum.Enum):
    UNSHATTERABLE = "unshatterable"
    DEAD = "dead"
    SURVIVING = "surviving"


@dataclass(frozen=True)
class LabelInfo:
    label: PropQueryClass
    interval: PropInterval | None
    kind: LabelKind


def classify(label: PropQueryClass) -> LabelInfo:
    interval = shattering_interval(label)
    if interval is None:
        kind = LabelKind.UNSHATTERABLE
    elif interval.is_full():
        kind = LabelKind.DEAD
    else:
        kind = LabelKind.SURVIVING
    return LabelInfo(label, interval, kind)


@dataclass(frozen=True)
class SolutionSet:
    """Finite union of non-empty intervals."""

    alphabet: Alphabet
    intervals: tuple[PropInterval, ...] = ()

    def __contains__(self, g: PropClass) -> bool:
        return membership(self, g)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def members(self) -> set[PropClass]:
        """All member classes; enumerates the whole lattice, small alphabets only."""
        return {g for g in all_classes(self.alphabet) if g in self}

    @classmethod
    def everything(cls, alphabet: Alphabet) -> SolutionSet:
        return cls(alphabet, (PropInterval.full(alphabet),))

    @classmethod
    def of(cls, alphabet: Alphabet, intervals: Iterable[PropInterval]) -> SolutionSet:
        """Drop empty intervals and exact duplicates, keeping first-seen order."""
        kept = dict.fromkeys(i for i in intervals if not i.is_empty())
        return cls(alphabet, tuple(kept))


def membership(sc: SolutionSet, g: PropClass) -> bool:
    return any(g in i for i in sc.intervals)


@dataclass
class ShatterOptions:
    prune: bool = True
    deadline: float | None = None  # time.monotonic() value


@dataclass
class ShatterStats:
    transition_labels: int = 0
    surviving_labels: int = 0
    shatterable_edges: int = 0
    subsets_examined: int = 0
    subsets_pruned: int = 0
    emptiness_checks: int = 0
    labels: list[LabelInfo] = field(default_factory=list)


def preprocess(m: Fqa) -> tuple[Fqa, list[LabelInfo]]:
    """Drop dead transitions, relabel unshatterable ones ``true``.

    Returns the reduced automaton and the surviving labels in
    first-occurrence order.  Shattering conditions are unchanged.
    """
    infos = {lbl: classify(lbl) for lbl in m.labels()}
    true_label = PropQueryClass.constant(PropClass.true(m.alphabet))
    transitions = []
    for src, lbl, dst in m.transitions:
        kind = infos[lbl].kind
        if kind is LabelKind.DEAD:
            continue
        if kind is LabelKind.UNSHATTERABLE:
            lbl = true_label
        transitions.append((src, lbl, dst))
    reduced = Fqa(m.alphabet, m.num_states, m.start, tuple(transitions), m.acceptance, m.tags)
    surviving = [info for info in infos.values() if info.kind is LabelKind.SURVIVING]
    return reduced, surviving


def _reach(succ: list[list[tuple[int, int]]], start: int, removed: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        q = todo.pop()
        for dst, bit in succ[q]:
            if bit & removed or dst in seen:
                continue
            seen.add(dst)
            todo.append(dst)
    return seen


def shatter_fqa(m: Fqa, opts: ShatterOptions | None = None, stats: ShatterStats | None = None) -> SolutionSet:
    """All classes ``g`` with ``L(m[g])`` empty, as a set of intervals.

    Enumerates subsets ``S`` of the surviving labels by increasing size.
    Labels in ``S`` are removed (they are dead for every ``g`` in the
    joint interval ``I_S``), all others are treated as live, and the
    two possible accepting sets are checked for reachability.  With
    ``prune`` on, supersets of a subset whose whole interval already
    shattered are skipped.
    """
    opts = opts or ShatterOptions()
    stats = stats if stats is not None else ShatterStats()
    alphabet = m.alphabet
    full = full_mask(alphabet)

    reduced, surviving = preprocess(m)
    stats.transition_labels = len(m.labels())
    stats.surviving_labels = len(surviving)
    stats.labels = surviving
    slot = {info.label: i for i, info in enumerate(surviving)}
    # (excluded, required) per surviving label
    pairs = [(full & ~info.interval.lower.bits, info.interval.upper.bits) for info in surviving]

    succ: list[list[tuple[int, int]]] = [[] for _ in range(reduced.num_states)]
    for src, lbl, dst in reduced.transitions:
        i = slot.get(lbl)
        if i is not None:
            stats.shatterable_edges += 1
        succ[src].append((dst, 0 if i is None else 1 << i))
    acc_true = reduced.accepting_true
    acc_false = reduced.accepting_false

    recorded: list[tuple[int, int]] = []
    covered: list[int] = []
    n = len(surviving)
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            if opts.deadline is not None and time.monotonic() > opts.deadline:
                raise QcTimeout("shattering exceeded the time limit")
            mask = 0
            for i in combo:
                mask |= 1 << i
            if opts.prune and any(c & mask == c for c in covered):
                stats.subsets_pruned += 1
                continue
            stats.subsets_examined += 1

            excl = req = 0
            for i in combo:
                excl |= pairs[i][0]
                req |= pairs[i][1]
            # I_S restricted to classes the empty stream satisfies / falsifies
            t_pair = (excl, req | 1)
            f_pair = (excl | 1, req)
            t_open = not (t_pair[0] & t_pair[1])
            f_open = not (f_pair[0] & f_pair[1])

            found = []
            if t_open or f_open:
                seen = _reach(succ, reduced.start, mask)
                if t_open:
                    stats.emptiness_checks += 1
                    if seen.isdisjoint(acc_true):
                        found.append(t_pair)
                if f_open:
                    stats.emptiness_checks += 1
                    if seen.isdisjoint(acc_false):
                        found.append(f_pair)
            if len(found) == 2:
                recorded.append((excl, req))
            else:
                recorded.extend(found)
            if len(found) == t_open + f_open:
                covered.append(mask)

    intervals = (_pair_interval(alphabet, e, r) for e, r in recorded)
    return SolutionSet.of(alphabet, intervals)


def _pair_interval(alphabet: Alphabet, excluded: int, required: int) -> PropInterval:
    full = full_mask(alphabet)
    return PropInterval(PropClass(alphabet, full & ~excluded), PropClass(alphabet, required))
