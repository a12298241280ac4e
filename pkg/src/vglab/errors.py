"""Exception hierarchy shared by all vglab modules."""

from __future__ import annotations

from typing import Any


class VglabError(Exception):
    """Base class. ``witness`` carries the offending data, when there is one."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class QuantaleError(VglabError):
    pass


class CarrierMismatch(VglabError):
    pass


class GroupError(VglabError):
    pass


class VGroupError(VglabError):
    pass


class ActionError(VglabError):
    pass


class BoundExceeded(VglabError):
    pass


class NonTermination(VglabError):
    pass


class PreconditionError(VglabError):
    pass


class ParseError(VglabError):
    """Malformed input. ``position`` is a JSON path like ``$.matrix[1][0]``."""

    def __init__(self, message: str, position: str = "$"):
        super().__init__(f"{position}: {message}")
        self.position = position
