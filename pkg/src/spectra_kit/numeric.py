"""Naturals extended with infinity, and closed intervals over them.

Transcendence degrees and heights genuinely take the value infinity
(t.d.(K:k) = oo for an infinite purely transcendental extension), so
infinity is a first-class value here, not a sentinel integer.  Addition
absorbs infinity; min treats it as the top element.

Intervals [lo, hi] represent partially known quantities.  An unknown
quantity is [0, oo]; every refinement performed by the inference engine is
an intersection, so intervals only ever tighten.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Optional, Union


class EmptyIntersection(Exception):
    """Two intervals for the same quantity exclude each other.

    Callers treat this as contradictory numeric facts, not as a crash.
    """

    def __init__(self, a: "NatInterval", b: "NatInterval"):
        super().__init__(f"empty intersection: {a} and {b}")
        self.a = a
        self.b = b


@total_ordering
class ExtNat:
    """A natural number or the distinguished value infinity."""

    __slots__ = ("_value",)

    def __init__(self, value: Optional[int] = None):
        # None encodes infinity internally; use ExtNat.inf() / INF outside.
        if value is not None:
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"ExtNat wants a nonnegative integer, got {value!r}")
        self._value = value

    @classmethod
    def inf(cls) -> "ExtNat":
        return INF

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> int:
        if self._value is None:
            raise ValueError("infinite ExtNat has no integer value")
        return self._value

    def __add__(self, other: Union["ExtNat", int]) -> "ExtNat":
        other = coerce(other)
        if self._value is None or other._value is None:
            return INF
        return ExtNat(self._value + other._value)

    __radd__ = __add__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = ExtNat(other)
        if not isinstance(other, ExtNat):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other) -> bool:
        other = coerce(other)
        if self._value is None:
            return False  # infinity is maximal
        if other._value is None:
            return True
        return self._value < other._value

    def __hash__(self) -> int:
        return hash(("ExtNat", self._value))

    def __repr__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def to_json(self):
        return "inf" if self._value is None else self._value

    @classmethod
    def from_json(cls, value) -> "ExtNat":
        if value == "inf":
            return INF
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value)
        raise ValueError(f"not an extended natural: {value!r}")


INF = ExtNat()
ZERO = ExtNat(0)


def coerce(value: Union[ExtNat, int]) -> ExtNat:
    if isinstance(value, ExtNat):
        return value
    return ExtNat(value)


def ext_add(a: Union[ExtNat, int], b: Union[ExtNat, int]) -> ExtNat:
    return coerce(a) + coerce(b)


def ext_min(a: Union[ExtNat, int], b: Union[ExtNat, int]) -> ExtNat:
    a, b = coerce(a), coerce(b)
    return a if a <= b else b


def ext_max(a: Union[ExtNat, int], b: Union[ExtNat, int]) -> ExtNat:
    a, b = coerce(a), coerce(b)
    return a if a >= b else b


@dataclass(frozen=True)
class NatInterval:
    """Closed interval [lo, hi] over ExtNat with lo <= hi."""

    lo: ExtNat
    hi: ExtNat

    def __post_init__(self):
        if not isinstance(self.lo, ExtNat) or not isinstance(self.hi, ExtNat):
            raise TypeError("interval endpoints must be ExtNat")
        if self.hi < self.lo:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Union[ExtNat, int]) -> "NatInterval":
        v = coerce(value)
        return cls(v, v)

    @classmethod
    def unknown(cls) -> "NatInterval":
        return cls(ZERO, INF)

    @classmethod
    def at_least(cls, value: Union[ExtNat, int]) -> "NatInterval":
        return cls(coerce(value), INF)

    @classmethod
    def at_most(cls, value: Union[ExtNat, int]) -> "NatInterval":
        return cls(ZERO, coerce(value))

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def exact_value(self) -> ExtNat:
        if not self.is_exact:
            raise ValueError(f"interval {self} is not a singleton")
        return self.lo

    def contains(self, value: Union[ExtNat, int]) -> bool:
        v = coerce(value)
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "NatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "NatInterval") -> "NatInterval":
        lo = ext_max(self.lo, other.lo)
        hi = ext_min(self.hi, other.hi)
        if hi < lo:
            raise EmptyIntersection(self, other)
        return NatInterval(lo, hi)

    def shift(self, n: int) -> "NatInterval":
        """Translate both endpoints by a (finite, nonnegative) amount."""
        if n < 0:
            raise ValueError("shift amount must be nonnegative")
        return NatInterval(self.lo + n, self.hi + n)

    def ge_threshold(self, n: Union[ExtNat, int]):
        """Tri-state answer to 'is the quantity >= n?'."""
        from .tristate import TriState

        n = coerce(n)
        if self.lo >= n:
            return TriState.TRUE
        if self.hi < n:
            return TriState.FALSE
        return TriState.UNKNOWN

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def to_json(self):
        return [self.lo.to_json(), self.hi.to_json()]

    @classmethod
    def from_json(cls, value) -> "NatInterval":
        if isinstance(value, list) and len(value) == 2:
            return cls(ExtNat.from_json(value[0]), ExtNat.from_json(value[1]))
        # a bare number (or "inf") abbreviates an exactly known quantity
        return cls.exact(ExtNat.from_json(value))


def interval_intersect(a: NatInterval, b: NatInterval) -> NatInterval:
    return a.intersect(b)
