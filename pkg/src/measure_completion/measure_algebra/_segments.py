"""Hash-consed segment DAG backing :class:`IntervalSet`.

A node describes a subset of a window ``[0, w)`` whose width is supplied by
the caller, never stored.  ``EMPTY`` and ``FULL`` are terminals; a split node
``(cut, left, right)`` covers ``[0, cut)`` with ``left`` and ``[cut, w)`` with
``right`` shifted to start at zero.  Because coordinates are relative to the
window start, translated copies of the same pattern share one node, which is
what keeps Cantor-type stage sets linear in depth instead of exponential.

Split nodes whose children are the same terminal collapse to that terminal,
so the empty set is always ``EMPTY`` and the full window is always ``FULL``.
Equality of sets therefore reduces to ``xor(a, b) is EMPTY``.
"""

from __future__ import annotations

import threading
import weakref
from fractions import Fraction
from typing import Iterator, Sequence

__all__ = [
    "Node",
    "EMPTY",
    "FULL",
    "make_split",
    "build",
    "measure",
    "complement",
    "combine",
    "iter_runs",
]


class Node:
    __slots__ = ("cut", "left", "right", "_measures", "__weakref__")

    def __init__(self, cut, left, right):
        self.cut = cut
        self.left = left
        self.right = right
        self._measures = {}

    @property
    def is_terminal(self) -> bool:
        return self.cut is None

    def __repr__(self):
        if self is EMPTY:
            return "EMPTY"
        if self is FULL:
            return "FULL"
        return f"Split({self.cut}, {self.left!r}, {self.right!r})"


EMPTY = Node(None, None, None)
FULL = Node(None, None, None)

_table: "weakref.WeakValueDictionary[tuple, Node]" = weakref.WeakValueDictionary()
_table_lock = threading.Lock()


def make_split(cut: Fraction, left: Node, right: Node) -> Node:
    if left is right and left.cut is None:
        return left
    # Children are kept alive by the node, so their ids stay valid as keys.
    key = (cut, id(left), id(right))
    with _table_lock:
        node = _table.get(key)
        if node is None:
            node = Node(cut, left, right)
            _table[key] = node
    return node


def build(start: Fraction, end: Fraction, parts: Sequence[tuple[Fraction, Fraction]]) -> Node:
    """Balanced DAG for sorted, disjoint, non-adjacent ``parts`` inside ``[start, end)``."""
    if not parts:
        return EMPTY
    if len(parts) == 1:
        lo, hi = parts[0]
        if lo == start and hi == end:
            return FULL
        if lo > start:
            return make_split(lo - start, EMPTY, build(lo, end, parts))
        return make_split(hi - start, FULL, EMPTY)
    k = len(parts) // 2
    cut = parts[k][0]
    return make_split(cut - start, build(start, cut, parts[:k]), build(cut, end, parts[k:]))


def measure(node: Node, width: Fraction) -> Fraction:
    if node is EMPTY:
        return Fraction(0)
    if node is FULL:
        return width
    cached = node._measures.get(width)
    if cached is None:
        cached = measure(node.left, node.cut) + measure(node.right, width - node.cut)
        node._measures[width] = cached
    return cached


def complement(node: Node, memo: dict | None = None) -> Node:
    if node is EMPTY:
        return FULL
    if node is FULL:
        return EMPTY
    if memo is None:
        memo = {}
    key = id(node)
    result = memo.get(key)
    if result is None:
        result = make_split(node.cut, complement(node.left, memo), complement(node.right, memo))
        memo[key] = result
    return result


def _split_at(node: Node, width: Fraction, c: Fraction, memo: dict) -> tuple[Node, Node]:
    # Returns (node restricted to [0, c), node restricted to [c, width) shifted by c).
    if node.cut is None:
        return node, node
    c0 = node.cut
    if c == c0:
        return node.left, node.right
    key = (id(node), width, c)
    result = memo.get(key)
    if result is not None:
        return result
    if c < c0:
        ll, lr = _split_at(node.left, c0, c, memo)
        result = ll, make_split(c0 - c, lr, node.right)
    else:
        rl, rr = _split_at(node.right, width - c0, c - c0, memo)
        result = make_split(c0, node.left, rl), rr
    memo[key] = result
    return result


def combine(op: str, a: Node, b: Node, width: Fraction) -> Node:
    """Pointwise ``op`` (one of ``"or"``, ``"and"``, ``"xor"``) of two nodes on one window."""
    if op not in ("or", "and", "xor"):
        raise ValueError(f"unknown set operation {op!r}")
    return _Combiner(op).run(a, b, width)


class _Combiner:
    def __init__(self, op: str):
        self.op = op
        self.memo: dict = {}
        self.split_memo: dict = {}
        self.compl_memo: dict = {}

    def _terminal(self, a: Node, b: Node) -> Node | None:
        # a is a terminal here.
        op = self.op
        if op == "or":
            return FULL if a is FULL else b
        if op == "and":
            return b if a is FULL else EMPTY
        return complement(b, self.compl_memo) if a is FULL else b

    def run(self, a: Node, b: Node, width: Fraction) -> Node:
        if a.cut is None:
            return self._terminal(a, b)
        if b.cut is None:
            return self._terminal(b, a)
        if a is b:
            return EMPTY if self.op == "xor" else a
        key = (id(a), id(b), width)
        result = self.memo.get(key)
        if result is not None:
            return result
        cut = a.cut
        if b.cut == cut:
            bl, br = b.left, b.right
        else:
            bl, br = _split_at(b, width, cut, self.split_memo)
        result = make_split(cut, self.run(a.left, bl, cut), self.run(a.right, br, width - cut))
        self.memo[key] = result
        return result


def iter_runs(node: Node, width: Fraction) -> Iterator[tuple[Fraction, Fraction]]:
    """Yield the maximal covered runs ``(lo, hi)`` in increasing order."""
    stack = [(Fraction(0), node, width)]
    pending = None
    while stack:
        offset, n, w = stack.pop()
        if n is EMPTY:
            continue
        if n is FULL:
            lo, hi = offset, offset + w
            if pending is None:
                pending = (lo, hi)
            elif pending[1] == lo:
                pending = (pending[0], hi)
            else:
                yield pending
                pending = (lo, hi)
            continue
        stack.append((offset + n.cut, n.right, w - n.cut))
        stack.append((offset, n.left, n.cut))
    if pending is not None:
        yield pending
