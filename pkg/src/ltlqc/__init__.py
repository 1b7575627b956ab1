"""Query checking for Finite LTL over finite data streams."""

from .automata import Pnfa, is_empty, product, stream_automaton, tableau
from .fqa import Fqa, instantiate, product_pnfa_fqa, query_tableau
from .prop import (
    PropClass,
    PropInterval,
    PropQueryClass,
    class_of,
    eps_class_intervals,
    interval_and,
    shattering_interval,
    to_dnf_string,
    to_snf,
)
from .qc import QcOptions, QcReport, qc1, qc_multi
from .semantics import DataStream, RawStream, brute_force_solutions, evaluate, normalize
from .shatter import ShatterOptions, SolutionSet, membership, preprocess, shatter_fqa
from .syntax import Alphabet, Polarity, eps_projection, parse, polarity, substitute, to_pnf, to_text

__version__ = "0.1.0"
