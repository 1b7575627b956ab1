"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class LtlqcError(Exception):
    """Base class for all errors raised by ltlqc."""


class ParseError(LtlqcError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class UnknownAtomError(ParseError):
    def __init__(self, name: str, pos: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown atomic proposition {name!r}", pos, text)


class AlphabetError(LtlqcError):
    """Alphabet construction failed, or two values use different alphabets."""


class AlphabetCapError(LtlqcError):
    pass


class IntervalCapError(LtlqcError):
    pass


class NotPnfError(LtlqcError):
    pass


class NotPropositionalError(LtlqcError):
    pass


class StreamError(LtlqcError):
    """Malformed stream input (bad timestamps, unknown propositions, bad file)."""


class QcTimeout(LtlqcError):
    pass
