"""Stream files and JSON reports.

JSON stream file::

    {"alphabet": ["a", "b"],
     "streams": [{"name": "s1", "steps": [["a"], [], ["a", "b"]]},
                 {"name": "raw", "observations": [[0, ["a"]], [5, ["b"]]]}]}

A stream either lists normalized ``steps`` or timestamped
``observations``; the latter are normalized on load.

CSV: one stream per file, header ``time,<prop>,...`` and 0/1 cells.
Without ``normalize`` the time column must read 0, 1, 2, ...
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import AlphabetError, LtlqcError, StreamError
from .prop import PropClass, PropInterval, class_of, to_dnf_string
from .qc import QcReport
from .semantics import DataStream, RawStream, normalize
from .syntax import Alphabet, parse


@dataclass
class StreamFile:
    alphabet: Alphabet
    names: list[str]
    streams: list[DataStream]


def _alphabet(props) -> Alphabet:
    try:
        return Alphabet(props)
    except AlphabetError as exc:
        raise StreamError(str(exc)) from None


def parse_json_streams(text: str, source: str = "<json>") -> StreamFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StreamError(f"{source}: invalid JSON ({exc})") from None
    if not isinstance(data, dict) or "alphabet" not in data or "streams" not in data:
        raise StreamError(f"{source}: expected an object with 'alphabet' and 'streams'")
    alphabet = _alphabet(data["alphabet"])
    names, streams = [], []
    for k, entry in enumerate(data["streams"]):
        name = entry.get("name", f"s{k}") if isinstance(entry, dict) else f"s{k}"
        if isinstance(entry, list):
            entry = {"steps": entry}
        if "steps" in entry:
            pi = DataStream.from_sets(alphabet, entry["steps"])
        elif "observations" in entry:
            try:
                obs = tuple(
                    (int(t), DataStream.from_sets(alphabet, [props]).steps[0])
                    for t, props in entry["observations"]
                )
            except (TypeError, ValueError) as exc:
                raise StreamError(f"{source}: stream {name!r}: bad observation ({exc})") from None
            try:
                pi = normalize(RawStream(alphabet, obs))
            except StreamError as exc:
                raise StreamError(f"{source}: stream {name!r}: {exc}") from None
        else:
            raise StreamError(f"{source}: stream {name!r} has neither 'steps' nor 'observations'")
        names.append(str(name))
        streams.append(pi)
    return StreamFile(alphabet, names, streams)


def read_csv_stream(path: Path, normalize_times: bool = False) -> tuple[Alphabet, DataStream]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or not rows[0] or rows[0][0].strip() != "time":
        raise StreamError(f"{path}: header must start with 'time'")
    props = [h.strip() for h in rows[0][1:]]
    alphabet = _alphabet(props)
    obs = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(props) + 1:
            raise StreamError(f"{path}:{lineno}: expected {len(props) + 1} cells")
        try:
            t = int(row[0])
            bits = 0
            for i, cell in enumerate(row[1:]):
                v = int(cell)
                if v not in (0, 1):
                    raise ValueError(cell)
                bits |= v << i
        except ValueError:
            raise StreamError(f"{path}:{lineno}: cells must be integers, propositions 0/1") from None
        obs.append((t, bits))
    if not normalize_times:
        for k, (t, _) in enumerate(obs):
            if t != k:
                raise StreamError(f"{path}: time {t} at row {k} is not normalized (use --normalize)")
    try:
        pi = normalize(RawStream(alphabet, obs))
    except StreamError as exc:
        raise StreamError(f"{path}: {exc}") from None
    return alphabet, pi


def load_streams(paths: Sequence[str | Path], normalize_times: bool = False) -> StreamFile:
    """Load one JSON file, or one or more CSV files sharing a header."""
    paths = [Path(p) for p in paths]
    if not paths:
        raise StreamError("no stream files given")
    if len(paths) == 1 and paths[0].suffix.lower() != ".csv":
        try:
            text = paths[0].read_text()
        except OSError as exc:
            raise StreamError(str(exc)) from None
        return parse_json_streams(text, str(paths[0]))
    alphabet = None
    names, streams = [], []
    for p in paths:
        if p.suffix.lower() != ".csv":
            raise StreamError(f"{p}: multiple stream files must all be CSV")
        try:
            ab, pi = read_csv_stream(p, normalize_times)
        except OSError as exc:
            raise StreamError(str(exc)) from None
        if alphabet is None:
            alphabet = ab
        elif ab != alphabet:
            raise StreamError(f"{p}: header differs from {paths[0]}")
        names.append(p.stem)
        streams.append(pi)
    return StreamFile(alphabet, names, streams)


def dump_json_streams(sf: StreamFile) -> str:
    data = {
        "alphabet": list(sf.alphabet.props),
        "streams": [
            {"name": name, "steps": [sorted(s, key=sf.alphabet.index) for s in pi.as_sets()]}
            for name, pi in zip(sf.names, sf.streams)
        ],
    }
    return json.dumps(data)


def report_to_dict(report: QcReport) -> dict:
    return {
        "query": report.query,
        "alphabet": list(report.solutions.alphabet.props),
        "solvable": report.solvable,
        "intervals": [
            {"lower": to_dnf_string(i.lower), "upper": to_dnf_string(i.upper)}
            for i in report.solutions.intervals
        ],
        "stats": report.stats_dict(),
    }


def intervals_from_dict(data: dict) -> list[PropInterval]:
    """Re-read the intervals of a report produced by ``report_to_dict``."""
    alphabet = Alphabet(data["alphabet"])

    def cls(text: str) -> PropClass:
        try:
            return class_of(parse(text, alphabet), alphabet)
        except LtlqcError as exc:
            raise StreamError(f"bad interval bound {text!r}: {exc}") from None

    return [PropInterval(cls(i["lower"]), cls(i["upper"])) for i in data["intervals"]]
