"""Strong-Kleene three-valued truth values.

Every property checker and inference rule in this package answers with one
of TRUE, FALSE, UNKNOWN.  UNKNOWN means "not decided by the available data
and rules", never "false"; the connectives below are the monotone Kleene
ones, so adding information can only move UNKNOWN to TRUE or FALSE.
"""

from __future__ import annotations

import enum
from typing import Iterable, Optional


class TriState(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: Optional[bool]) -> "TriState":
        if value is None:
            return cls.UNKNOWN
        return cls.TRUE if value else cls.FALSE

    def is_true(self) -> bool:
        return self is TriState.TRUE

    def is_false(self) -> bool:
        return self is TriState.FALSE

    def is_unknown(self) -> bool:
        return self is TriState.UNKNOWN

    def is_decisive(self) -> bool:
        return self is not TriState.UNKNOWN

    def negate(self) -> "TriState":
        if self is TriState.TRUE:
            return TriState.FALSE
        if self is TriState.FALSE:
            return TriState.TRUE
        return TriState.UNKNOWN

    def to_json(self):
        if self is TriState.TRUE:
            return True
        if self is TriState.FALSE:
            return False
        return "unknown"

    @classmethod
    def from_json(cls, value) -> "TriState":
        if value is True:
            return cls.TRUE
        if value is False:
            return cls.FALSE
        if value in ("unknown", None):
            return cls.UNKNOWN
        raise ValueError(f"not a tri-state value: {value!r}")


def kleene_and(*values: TriState) -> TriState:
    if any(v is TriState.FALSE for v in values):
        return TriState.FALSE
    if any(v is TriState.UNKNOWN for v in values):
        return TriState.UNKNOWN
    return TriState.TRUE


def kleene_or(*values: TriState) -> TriState:
    if any(v is TriState.TRUE for v in values):
        return TriState.TRUE
    if any(v is TriState.UNKNOWN for v in values):
        return TriState.UNKNOWN
    return TriState.FALSE


def kleene_all(values: Iterable[TriState]) -> TriState:
    items = list(values)
    return kleene_and(*items) if items else TriState.TRUE


TRUE = TriState.TRUE
FALSE = TriState.FALSE
UNKNOWN = TriState.UNKNOWN
