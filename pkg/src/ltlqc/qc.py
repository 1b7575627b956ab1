"""Query checking over one stream or a set of streams."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .automata import stream_automaton
from .errors import AlphabetCapError, AlphabetError, IntervalCapError
from .fqa import Fqa, product_pnfa_fqa, query_tableau
from .prop import PropInterval
from .semantics import DataStream
from .shatter import ShatterOptions, ShatterStats, SolutionSet, shatter_fqa
from .syntax import Alphabet, Formula, Not, atoms, check_alphabet, to_pnf, to_text

DEFAULT_MAX_AP = 16
DEFAULT_MAX_INTERVALS = 10_000


@dataclass
class QcOptions:
    prune: bool = True
    sort_streams: bool = True
    max_ap: int = DEFAULT_MAX_AP
    max_intervals: int = DEFAULT_MAX_INTERVALS
    timeout_secs: float | None = None
    jobs: int = 1


@dataclass
class StreamStats:
    index: int
    length: int
    transition_labels: int
    surviving_labels: int
    shatterable_edges: int
    subsets_examined: int
    emptiness_checks: int
    intervals: int
    seconds: float


@dataclass
class QcReport:
    query: str
    solutions: SolutionSet
    solvable: bool
    streams_total: int
    stream_stats: list[StreamStats] = field(default_factory=list)
    early_exit: bool = False
    seconds: float = 0.0

    @property
    def streams_processed(self) -> int:
        return len(self.stream_stats)

    def stats_dict(self) -> dict:
        return {
            "streams": self.streams_total,
            "streams_processed": self.streams_processed,
            "labels": sum(s.surviving_labels for s in self.stream_stats),
            "edges": sum(s.shatterable_edges for s in self.stream_stats),
            "subsets": sum(s.subsets_examined for s in self.stream_stats),
            "emptiness_checks": sum(s.emptiness_checks for s in self.stream_stats),
            "early_exit": self.early_exit,
            "millis": round(self.seconds * 1000, 3),
            "per_stream": [asdict(s) for s in self.stream_stats],
        }


def effective_alphabet(q: Formula, alphabet: Alphabet, project: Iterable[str] | None = None) -> Alphabet:
    """The alphabet to solve over: all of ``alphabet``, or the query's
    atoms plus ``project`` when a projection is requested."""
    if project is None:
        return alphabet
    keep = set(atoms(q)) | set(project)
    if not keep:
        raise AlphabetError("projection leaves no propositions")
    return alphabet.subset(keep)


def _check_cap(alphabet: Alphabet, max_ap: int) -> None:
    if len(alphabet) > max_ap:
        raise AlphabetCapError(
            f"{len(alphabet)} propositions exceed the cap of {max_ap} (raise --max-ap or use --project)"
        )


def negated_query_automaton(q: Formula, alphabet: Alphabet) -> Fqa:
    """Query automaton for ``!q``; shattering it is solving ``q``."""
    check_alphabet(q, alphabet)
    return query_tableau(to_pnf(Not(q)), alphabet)


def _solve_stream(neg: Fqa, pi: DataStream, prune: bool, deadline: float | None) -> tuple[SolutionSet, ShatterStats, float]:
    t0 = time.perf_counter()
    composed = product_pnfa_fqa(stream_automaton(pi), neg)
    stats = ShatterStats()
    sc = shatter_fqa(composed, ShatterOptions(prune=prune, deadline=deadline), stats)
    return sc, stats, time.perf_counter() - t0


def qc1(pi: DataStream, q: Formula, opts: QcOptions | None = None, stats: ShatterStats | None = None) -> SolutionSet:
    """Classes ``g`` with ``pi |= q[g]``."""
    opts = opts or QcOptions()
    _check_cap(pi.alphabet, opts.max_ap)
    neg = negated_query_automaton(q, pi.alphabet)
    deadline = None if opts.timeout_secs is None else time.monotonic() + opts.timeout_secs
    composed = product_pnfa_fqa(stream_automaton(pi), neg)
    return shatter_fqa(composed, ShatterOptions(prune=opts.prune, deadline=deadline), stats)


def _intersect(sc: SolutionSet, other: SolutionSet, cap: int) -> SolutionSet:
    out: dict[PropInterval, None] = {}
    for i in sc.intervals:
        for j in other.intervals:
            k = i & j
            if k.is_empty():
                continue
            out[k] = None
            if len(out) > cap:
                raise IntervalCapError(f"more than {cap} intervals in the running solution set")
    return SolutionSet(sc.alphabet, tuple(out))


def qc_multi(
    streams: Sequence[DataStream],
    q: Formula,
    opts: QcOptions | None = None,
    alphabet: Alphabet | None = None,
) -> QcReport:
    """Classes ``g`` with ``pi |= q[g]`` for every stream.

    The automaton for ``!q`` is built once.  Per-stream interval sets
    are intersected pairwise into a running set; processing stops as
    soon as that set is empty.
    """
    opts = opts or QcOptions()
    t0 = time.perf_counter()
    if alphabet is None:
        if not streams:
            raise AlphabetError("alphabet required when no streams are given")
        alphabet = streams[0].alphabet
    for pi in streams:
        if pi.alphabet != alphabet:
            raise AlphabetError("all streams must share one alphabet")
    _check_cap(alphabet, opts.max_ap)
    neg = negated_query_automaton(q, alphabet)
    deadline = None if opts.timeout_secs is None else time.monotonic() + opts.timeout_secs

    order = list(range(len(streams)))
    if opts.sort_streams:
        order.sort(key=lambda i: len(streams[i]))

    report = QcReport(to_text(q), SolutionSet.everything(alphabet), True, len(streams))

    def absorb(i: int, sc: SolutionSet, st: ShatterStats, secs: float) -> bool:
        report.stream_stats.append(
            StreamStats(
                index=i,
                length=len(streams[i]),
                transition_labels=st.transition_labels,
                surviving_labels=st.surviving_labels,
                shatterable_edges=st.shatterable_edges,
                subsets_examined=st.subsets_examined,
                emptiness_checks=st.emptiness_checks,
                intervals=len(sc),
                seconds=secs,
            )
        )
        report.solutions = _intersect(report.solutions, sc, opts.max_intervals)
        return report.solutions.is_empty()

    if opts.jobs > 1 and len(order) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            futures = [(i, pool.submit(_solve_stream, neg, streams[i], opts.prune, deadline)) for i in order]
            for pos, (i, fut) in enumerate(futures):
                if absorb(i, *fut.result()):
                    report.early_exit = pos < len(futures) - 1
                    for _, rest in futures[pos + 1:]:
                        rest.cancel()
                    break
    else:
        for pos, i in enumerate(order):
            if absorb(i, *_solve_stream(neg, streams[i], opts.prune, deadline)):
                report.early_exit = pos < len(order) - 1
                break

    report.solvable = not report.solutions.is_empty()
    report.seconds = time.perf_counter() - t0
    return report
