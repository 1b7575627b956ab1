"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (also collected into the
pytest terminal summary).  Run on its own with::

    pytest tests/test_acceptance.py -v
    python tests/test_acceptance.py
"""

from __future__ import annotations

import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from gen import AB, A, all_streams, exhaustive, random_formula, random_query, random_stream
from ltlqc.automata import tableau
from ltlqc.bench import phi1, synthetic_stream
from ltlqc.prop import PropClass, PropInterval, all_classes, full_mask, to_snf
from ltlqc.qc import QcOptions, qc1, qc_multi
from ltlqc.semantics import DataStream, brute_force_solutions, evaluate
from ltlqc.shatter import ShatterStats
from ltlqc.syntax import Atom, F, G, Next, TRUE, And, eps_projection, implies, parse, to_pnf

EPS_AB = DataStream(AB, ())
CLASSES_AB = list(all_classes(AB))


def report(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _qc_grid(seed: int = 2024, count: int = 300):
    rng = random.Random(seed)
    for _ in range(count):
        q = random_query(rng, AB, 4)
        streams = [random_stream(rng, AB, 4) for _ in range(rng.randint(1, 3))]
        yield q, streams


def _members(sc) -> set[PropClass]:
    return sc.members()


class TestAcceptance:
    def test_1_tableau_matches_evaluator(self):
        t0 = time.perf_counter()
        rng = random.Random(7)
        cases = [(f, A) for f in exhaustive(A, 3)]
        cases += [(random_formula(rng, AB, 5), AB) for _ in range(500)]
        streams = {A: all_streams(A, 4), AB: all_streams(AB, 4)}
        mismatches = 0
        for f, alphabet in cases:
            m = tableau(to_pnf(f), alphabet)
            mismatches += sum(m.accepts(pi) != evaluate(pi, f) for pi in streams[alphabet])
        secs = time.perf_counter() - t0
        ok = mismatches == 0 and secs < 60
        report(1, ok, f"{len(cases)} formulas, {mismatches} mismatches, {secs:.1f}s (limit 60s)")
        assert mismatches == 0
        assert secs < 60

    def test_2_qc_matches_brute_force(self):
        t0 = time.perf_counter()
        mismatches = 0
        total = 0
        for q, streams in _qc_grid():
            total += 1
            got = _members(qc_multi(streams, q, alphabet=AB).solutions)
            mismatches += got != brute_force_solutions(streams, q, AB)
        secs = time.perf_counter() - t0
        ok = mismatches == 0 and secs < 120
        report(2, ok, f"{total} instances, {mismatches} mismatches, {secs:.1f}s (limit 120s)")
        assert mismatches == 0
        assert secs < 120

    def test_3_micro_instances(self):
        pi = DataStream.from_sets(A, [["a"], ["a"]])
        g_var = _members(qc1(pi, parse("G var", A)))
        want1 = {PropClass.true(A)}
        eps_var = _members(qc1(DataStream(A, ()), parse("var", A)))
        want2 = {PropClass.true(A), ~PropClass.atom(A, "a")}

        rng = random.Random(3)
        full = full_mask(AB)
        disagreements = 0
        for _ in range(1000):
            e, f = rng.randrange(full + 1), rng.randrange(full + 1)
            excluded = [a for a in range(4) if e >> a & 1]
            required = [a for a in range(4) if f >> a & 1]
            interval = PropInterval.from_assignment_sets(AB, excluded, required)
            oracle_empty = not any(not (c.bits & e) and (c.bits & f) == f for c in CLASSES_AB)
            rule_empty = bool(e & f)
            disagreements += (interval.is_empty() != rule_empty) + (rule_empty != oracle_empty)
        ok = g_var == want1 and eps_var == want2 and disagreements == 0
        report(
            3,
            ok,
            f"G var on {{a}}{{a}} -> {sorted(map(str, g_var))}, var on eps -> {sorted(map(str, eps_var))}, "
            f"(E,F) rule disagreements {disagreements}/1000",
        )
        assert g_var == want1
        assert eps_var == want2
        assert disagreements == 0

    def test_4_pruning_and_subset_counts(self):
        count_errors = 0
        mismatches = 0
        total = 0
        for q, streams in _qc_grid():
            total += 1
            oracle = brute_force_solutions(streams, q, AB)
            unpruned = qc_multi(streams, q, QcOptions(prune=False, sort_streams=False), alphabet=AB)
            pruned = qc_multi(streams, q, QcOptions(prune=True, sort_streams=False), alphabet=AB)
            for st in unpruned.stream_stats:
                count_errors += st.subsets_examined != 2 ** st.surviving_labels
            mismatches += _members(unpruned.solutions) != oracle
            mismatches += _members(pruned.solutions) != _members(unpruned.solutions)
        ok = count_errors == 0 and mismatches == 0
        report(4, ok, f"{total} instances, subset-count errors {count_errors}, membership mismatches {mismatches}")
        assert count_errors == 0
        assert mismatches == 0

    def test_5_scale(self):
        pi = synthetic_stream(2, 0, 1095, seed=1)
        q = phi1("prod1")
        stats = ShatterStats()
        t0 = time.perf_counter()
        qc1(pi, q, stats=stats)
        secs = time.perf_counter() - t0

        occurring = set(pi.steps)
        none = PropClass.false(pi.alphabet)
        bad_forms = 0
        for info in stats.labels:
            lbl = info.label
            chars = {PropClass.characteristic(pi.alphabet, a) for a in occurring}
            var_form = lbl.g1 == none and lbl.g3 == none and lbl.g2 in chars
            neg_form = lbl.g1 == none and lbl.g2 == none and lbl.g3 in chars
            bad_forms += not (var_form or neg_form)
        n_labels = stats.surviving_labels
        expected = 4 if len(occurring) == 4 else None
        ok = secs < 60 and n_labels <= 4 and bad_forms == 0 and (expected is None or n_labels == expected)
        report(
            5,
            ok,
            f"length {len(pi)}, {secs:.2f}s (limit 60s), shatterable labels {n_labels} (<= 4), "
            f"{stats.shatterable_edges} shatterable edges, off-form labels {bad_forms}",
        )
        assert secs < 60
        assert n_labels <= 4
        assert bad_forms == 0
        if expected is not None:
            assert n_labels == expected

    def test_6_eps_idioms(self):
        pi = DataStream.from_sets(A, [["a"], ["a"]])
        a = Atom("a")
        checks = {
            "G a": (evaluate(pi, G(a)), False),
            "G(a -> F(a & X true))": (evaluate(pi, G(implies(a, F(And(a, Next(TRUE)))))), True),
            "F(a & X true)": (evaluate(pi, F(And(a, Next(TRUE)))), True),
            "X X true": (evaluate(pi, parse("X X true", A)), True),
            "X X X true": (evaluate(pi, parse("X X X true", A)), False),
            "F(X true & !X X true)": (evaluate(pi, parse("F(X true & !X X true)", A)), True),
            "G(a | !(X true))": (evaluate(pi, parse("G(a | !(X true))", A)), True),
        }
        idiom_fail = [k for k, (got, want) in checks.items() if got != want]

        rng = random.Random(11)
        mismatches = 0
        for _ in range(500):
            q = to_pnf(random_query(rng, AB, 5))
            proj = to_snf(eps_projection(q), AB)
            for g in CLASSES_AB:
                direct = evaluate(EPS_AB, q, var=g)
                mismatches += direct != proj.instantiate(g).eps_satisfies()
        ok = not idiom_fail and mismatches == 0
        report(6, ok, f"idiom failures {idiom_fail or 'none'}, eps-projection mismatches {mismatches}/8000")
        assert not idiom_fail
        assert mismatches == 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
