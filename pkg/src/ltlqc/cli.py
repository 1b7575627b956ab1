"""Command-line driver.

Exit codes: ``check`` 0 if every stream satisfies the formula, 1 if not;
``solve`` 0 if the query is solvable, 1 if not.  Input, parse and cap
errors exit 2, timeouts exit 3.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import automata, fqa
from .bench import run_bench
from .errors import LtlqcError, QcTimeout
from .formats import load_streams, report_to_dict
from .qc import DEFAULT_MAX_AP, DEFAULT_MAX_INTERVALS, QcOptions, effective_alphabet, negated_query_automaton, qc_multi
from .semantics import evaluate
from .syntax import Alphabet, atoms, has_var, parse, to_pnf

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_TIMEOUT = 0, 1, 2, 3


def _props(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [p.strip() for p in text.split(",") if p.strip()]


def cmd_check(args) -> int:
    sf = load_streams(args.streams, args.normalize)
    f = parse(args.formula, sf.alphabet)
    if has_var(f):
        raise LtlqcError("check takes a formula without var; use 'solve' for queries")
    all_sat = True
    for name, pi in zip(sf.names, sf.streams):
        ok = evaluate(pi, f)
        all_sat &= ok
        print(f"{name}: {'sat' if ok else 'unsat'}")
    return EXIT_OK if all_sat else EXIT_NO


def _options(args) -> QcOptions:
    return QcOptions(
        prune=not args.no_prune,
        sort_streams=not args.no_sort,
        max_ap=args.max_ap,
        max_intervals=args.max_intervals,
        timeout_secs=args.timeout_secs,
        jobs=args.jobs,
    )


def cmd_solve(args) -> int:
    sf = load_streams(args.streams, args.normalize)
    q = parse(args.query, sf.alphabet)
    alphabet = effective_alphabet(q, sf.alphabet, _props(args.project))
    streams = [pi.project(alphabet) for pi in sf.streams]
    report = qc_multi(streams, q, _options(args), alphabet=alphabet)
    out = report_to_dict(report)
    out["query"] = args.query
    text = json.dumps(out, indent=2 if args.pretty else None)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.solvable else EXIT_NO


def cmd_automaton(args) -> int:
    sf = None
    if args.streams:
        sf = load_streams(args.streams, args.normalize)
        alphabet = sf.alphabet
    elif args.alphabet:
        alphabet = Alphabet(_props(args.alphabet))
    else:
        found = sorted(atoms(parse(args.input)))
        alphabet = Alphabet(found or ["p"])
    q = parse(args.input, alphabet)
    if args.kind == "formula":
        if has_var(q):
            raise LtlqcError("kind 'formula' takes a formula without var")
        m = automata.tableau(to_pnf(q), alphabet)
        text = automata.to_dot(m) if args.format == "dot" else automata.to_json(m)
    else:
        if args.kind == "query":
            m = fqa.query_tableau(to_pnf(q), alphabet)
        else:
            if sf is None or not sf.streams:
                raise LtlqcError("kind 'composed' needs --streams")
            pi = sf.streams[args.stream_index]
            m = fqa.product_pnfa_fqa(automata.stream_automaton(pi), negated_query_automaton(q, alphabet))
        text = fqa.to_dot(m) if args.format == "dot" else fqa.to_json(m)
    print(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    opts = QcOptions(prune=not args.no_prune, max_ap=args.max_ap, timeout_secs=args.timeout_secs)
    if args.products + args.promos > opts.max_ap:
        raise LtlqcError(f"{args.products + args.promos} propositions exceed the cap of {opts.max_ap}")
    rows = run_bench(args.products, args.promos, args.length, args.seed, args.chunks, opts)
    summaries = [r.summary() for r in rows]
    if args.json:
        print(json.dumps(summaries, indent=2))
        return EXIT_OK
    print(f"{'class':6} {'runs':>5} {'avg time (s)':>18} {'shatterable edges':>20} {'shatterable labels':>20}")
    for s in summaries:
        if s["avg_seconds"] is None:
            print(f"{s['class']:6} {s['runs']:>5} {'t/o':>18} {'t/o':>20} {'t/o':>20}")
            continue
        t = f"{s['avg_seconds']:.3f} ± {s['sd_seconds']:.3f}"
        e = f"{s['avg_shatterable_edges']:.1f} ± {s['sd_shatterable_edges']:.1f}"
        lb = f"{s['avg_shatterable_labels']:.1f} ± {s['sd_shatterable_labels']:.1f}"
        print(f"{s['class']:6} {s['runs']:>5} {t:>18} {e:>20} {lb:>20}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltlqc", description="Finite LTL query checking over data streams")
    sub = parser.add_subparsers(dest="command", required=True)

    def streams_arg(p, required=True):
        p.add_argument("--streams", nargs="+", required=required, metavar="FILE",
                       help="one JSON stream file, or one CSV file per stream")
        p.add_argument("--normalize", action="store_true", help="accept arbitrary non-decreasing CSV times")

    p = sub.add_parser("check", help="evaluate a formula on every stream")
    streams_arg(p)
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="compute all propositional solutions of a query")
    streams_arg(p)
    p.add_argument("--query", required=True)
    p.add_argument("--project", help="comma-separated propositions to keep besides the query's own")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--no-sort", action="store_true", help="process streams in file order")
    p.add_argument("--max-ap", type=int, default=DEFAULT_MAX_AP)
    p.add_argument("--max-intervals", type=int, default=DEFAULT_MAX_INTERVALS)
    p.add_argument("--timeout-secs", type=float)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", "-o")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("automaton", help="dump a tableau, query or composed automaton")
    streams_arg(p, required=False)
    p.add_argument("--input", required=True, help="formula or query text")
    p.add_argument("--kind", choices=["formula", "query", "composed"], default="formula")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--alphabet", help="comma-separated propositions")
    p.add_argument("--stream-index", type=int, default=0)
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("bench", help="synthetic benchmark over the two query classes")
    p.add_argument("--products", type=int, default=2)
    p.add_argument("--promos", type=int, default=0)
    p.add_argument("--length", type=int, default=1095)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chunks", type=int, default=1, help="split the stream into this many streams")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--max-ap", type=int, default=DEFAULT_MAX_AP)
    p.add_argument("--timeout-secs", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QcTimeout as exc:
        print(f"ltlqc: timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (LtlqcError, IndexError) as exc:
        print(f"ltlqc: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
