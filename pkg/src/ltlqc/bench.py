"""Synthetic sales/promotion streams and the two benchmark query classes.

Product propositions say "sales went up today"; promotion propositions
say "campaign active today".  Promotions switch on and off as sticky
two-state chains and nudge the products they target upwards.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field

from .errors import QcTimeout
from .qc import QcOptions, qc_multi
from .semantics import DataStream
from .syntax import TRUE, VAR, Alphabet, And, Atom, F, Formula, G, Next, implies


def synthetic_stream(n_products: int, n_promos: int, length: int, seed: int) -> DataStream:
    rng = random.Random(seed)
    products = [f"prod{i + 1}" for i in range(n_products)]
    promos = [f"promo{j + 1}" for j in range(n_promos)]
    alphabet = Alphabet(products + promos)
    targets = {j: rng.sample(range(n_products), k=min(n_products, 1 + rng.randrange(2))) for j in range(n_promos)}
    active = [rng.random() < 0.3 for _ in range(n_promos)]
    steps = []
    for _ in range(length):
        for j in range(n_promos):
            if rng.random() < 0.1:
                active[j] = not active[j]
        boost = [0.0] * n_products
        for j in range(n_promos):
            if active[j]:
                for i in targets[j]:
                    boost[i] += 0.25
        bits = 0
        for i in range(n_products):
            if rng.random() < min(0.95, 0.45 + boost[i]):
                bits |= 1 << i
        for j in range(n_promos):
            if active[j]:
                bits |= 1 << (n_products + j)
        steps.append(bits)
    return DataStream(alphabet, tuple(steps))


def split(pi: DataStream, chunks: int) -> list[DataStream]:
    """Cut a stream into ``chunks`` consecutive pieces of near-equal length."""
    n = len(pi)
    bounds = [round(k * n / chunks) for k in range(chunks + 1)]
    return [DataStream(pi.alphabet, pi.steps[bounds[k]:bounds[k + 1]]) for k in range(chunks)]


def eventually_next(trigger: Formula) -> Formula:
    """``G(trigger -> F(var & X true))``."""
    return G(implies(trigger, F(And(VAR, Next(TRUE)))))


def phi1(product: str) -> Formula:
    return eventually_next(Atom(product))


def phi2(promo: str, product: str) -> Formula:
    return eventually_next(And(Atom(promo), Atom(product)))


@dataclass
class BenchRow:
    query_class: str
    runs: int = 0
    seconds: list[float] = field(default_factory=list)
    edges: list[int] = field(default_factory=list)
    labels: list[int] = field(default_factory=list)
    timeouts: int = 0

    def summary(self) -> dict:
        def mean_sd(xs):
            if not xs:
                return None, None
            return statistics.fmean(xs), (statistics.pstdev(xs) if len(xs) > 1 else 0.0)

        t, tsd = mean_sd(self.seconds)
        e, esd = mean_sd(self.edges)
        lb, lsd = mean_sd(self.labels)
        return {
            "class": self.query_class,
            "runs": self.runs,
            "timeouts": self.timeouts,
            "avg_seconds": t,
            "sd_seconds": tsd,
            "avg_shatterable_edges": e,
            "sd_shatterable_edges": esd,
            "avg_shatterable_labels": lb,
            "sd_shatterable_labels": lsd,
        }


def run_bench(
    n_products: int,
    n_promos: int,
    length: int,
    seed: int,
    chunks: int = 1,
    opts: QcOptions | None = None,
) -> list[BenchRow]:
    """Run every Phi1 instance, and every Phi2 instance when promotions exist.

    Statistics are recorded per single-stream solve.
    """
    opts = opts or QcOptions()
    pi = synthetic_stream(n_products, n_promos, length, seed)
    streams = split(pi, chunks) if chunks > 1 else [pi]
    products = [p for p in pi.alphabet.props if p.startswith("prod")]
    promos = [p for p in pi.alphabet.props if p.startswith("promo")]
    jobs = [("phi1", phi1(p)) for p in products]
    jobs += [("phi2", phi2(m, p)) for m in promos for p in products]
    rows: dict[str, BenchRow] = {}
    for name, q in jobs:
        row = rows.setdefault(name, BenchRow(name))
        row.runs += 1
        try:
            report = qc_multi(streams, q, opts)
        except QcTimeout:
            row.timeouts += 1
            continue
        for st in report.stream_stats:
            row.seconds.append(st.seconds)
            row.edges.append(st.shatterable_edges)
            row.labels.append(st.surviving_labels)
    return list(rows.values())
