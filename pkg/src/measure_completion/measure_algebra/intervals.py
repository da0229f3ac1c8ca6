"""Finite unions of half-open rational intervals in [0, 1)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterable, Iterator, Union

from ..errors import MalformedInterval, ModelMismatch
from . import _segments as seg

__all__ = ["Interval", "IntervalSet", "IntervalModel", "INTERVAL_MODEL", "normalize"]

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True, order=True)
class Interval:
    """The half-open interval ``[lo, hi)`` with ``0 <= lo < hi <= 1``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not (0 <= lo < hi <= 1):
            raise MalformedInterval(f"[{lo},{hi}) is not a non-empty interval inside [0,1)")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self):
        return f"[{self.lo},{self.hi})"


RawInterval = Union[Interval, "tuple[object, object]"]


class IntervalModel:
    """The algebra of finite unions of half-open intervals of [0, 1) with Lebesgue measure."""

    name = "unit-interval"
    total = ONE

    def empty(self) -> "IntervalSet":
        return IntervalSet._from_node(seg.EMPTY)

    def top(self) -> "IntervalSet":
        return IntervalSet._from_node(seg.FULL)

    def exact_threshold(self):
        # Limits in this model are not decided by any finite stage.
        return None

    def __repr__(self):
        return "INTERVAL_MODEL"

    def __reduce__(self):
        return "INTERVAL_MODEL"


INTERVAL_MODEL = IntervalModel()


class IntervalSet:
    """An element of the interval algebra.

    Stored as a shared segment DAG so that deep Cantor-type stages stay small;
    the canonical sorted list of disjoint, non-adjacent parts is available
    through :attr:`parts` (materialized on demand) or :meth:`iter_parts`.
    Instances are immutable and compare by the set they denote.
    """

    __slots__ = ("_node", "_parts")

    model = INTERVAL_MODEL

    def __init__(self, intervals: Iterable[RawInterval] = ()):
        self._node = normalize(intervals)._node
        self._parts = None

    @classmethod
    def _from_node(cls, node: seg.Node) -> "IntervalSet":
        obj = cls.__new__(cls)
        obj._node = node
        obj._parts = None
        return obj

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls._from_node(seg.EMPTY)

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls._from_node(seg.FULL)

    @classmethod
    def interval(cls, lo, hi) -> "IntervalSet":
        return normalize([(lo, hi)])

    # -- views -------------------------------------------------------------

    def iter_parts(self) -> Iterator[Interval]:
        for lo, hi in seg.iter_runs(self._node, ONE):
            yield Interval(lo, hi)

    @property
    def parts(self) -> tuple[Interval, ...]:
        if self._parts is None:
            self._parts = tuple(self.iter_parts())
        return self._parts

    def is_empty(self) -> bool:
        return self._node is seg.EMPTY

    def __bool__(self):
        return not self.is_empty()

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        if not 0 <= x < 1:
            return False
        node, width = self._node, ONE
        while node.cut is not None:
            if x < node.cut:
                node, width = node.left, node.cut
            else:
                x -= node.cut
                node, width = node.right, width - node.cut
        return node is seg.FULL

    def measure(self) -> Fraction:
        return seg.measure(self._node, ONE)

    # -- Boolean operations -------------------------------------------------

    def _other(self, other) -> "IntervalSet":
        if not isinstance(other, IntervalSet):
            raise ModelMismatch(f"cannot combine an interval set with {type(other).__name__}")
        return other

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet._from_node(seg.combine("or", self._node, self._other(other)._node, ONE))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet._from_node(seg.combine("and", self._node, self._other(other)._node, ONE))

    def symm_diff(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet._from_node(seg.combine("xor", self._node, self._other(other)._node, ONE))

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersect(self._other(other).complement())

    def complement(self) -> "IntervalSet":
        return IntervalSet._from_node(seg.complement(self._node))

    def dist(self, other: "IntervalSet") -> Fraction:
        return self.symm_diff(other).measure()

    __or__ = union
    __and__ = intersect
    __xor__ = symm_diff
    __sub__ = difference
    __invert__ = complement

    # -- comparison and display -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        if self._node is other._node:
            return True
        return seg.combine("xor", self._node, other._node, ONE) is seg.EMPTY

    def __hash__(self):
        # Equal sets have equal measure; the DAG itself is not canonical.
        return hash(self.measure())

    def __le__(self, other):
        return self.difference(other).is_empty()

    def to_literal(self, ascii: bool = False) -> str:
        if self.is_empty():
            return "empty" if ascii else "∅"
        sep = " U " if ascii else " ∪ "
        return sep.join(str(p) for p in self.parts)

    def __str__(self):
        return self.to_literal()

    def __repr__(self):
        head = list(islice(self.iter_parts(), 9))
        if len(head) <= 8:
            return f"IntervalSet({self.to_literal(ascii=True)!r})"
        shown = " U ".join(str(p) for p in head[:4])
        return f"<IntervalSet {shown} U ... measure={self.measure()}>"


def _coerce(raw: RawInterval) -> Interval:
    if isinstance(raw, Interval):
        return raw
    lo, hi = raw
    return Interval(Fraction(lo), Fraction(hi))


def normalize(raw: Iterable[RawInterval]) -> IntervalSet:
    """Canonical set with the same indicator function as the union of ``raw``.

    Overlapping and touching intervals merge.  Bounds outside [0, 1] or
    ``lo >= hi`` raise :class:`MalformedInterval`; nothing is clamped.
    """
    items = sorted(_coerce(r) for r in raw)
    merged: list[tuple[Fraction, Fraction]] = []
    for iv in items:
        if merged and iv.lo <= merged[-1][1]:
            if iv.hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], iv.hi)
        else:
            merged.append((iv.lo, iv.hi))
    return IntervalSet._from_node(seg.build(ZERO, ONE, merged))
