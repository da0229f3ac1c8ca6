"""Closed-form Cauchy sequences in the interval model.

Stage sets are built directly as shared segment DAGs, so stage ``n`` costs
O(n) nodes even though it has ``2**n`` intervals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .completion import CompletionElement, embed, from_stages
from .measure_algebra import INTERVAL_MODEL, IntervalSet
from .measure_algebra import _segments as seg

__all__ = [
    "cantor",
    "cantor_modulus",
    "cantor_stage",
    "dyadic_item",
    "smith_volterra_cantor",
    "svc_modulus",
    "svc_stage",
]


def _least(predicate, start: int = 1) -> int:
    n = start
    while not predicate(n):
        n += 1
    return n


# -- Smith-Volterra-Cantor ---------------------------------------------------


@lru_cache(maxsize=None)
def _svc_piece(level: int, depth: int) -> seg.Node:
    # One of the 2**level equal pieces left after `level` removals, with the
    # remaining removals level+1..depth applied inside it.
    if level == depth:
        return seg.FULL
    width = _svc_width(level)
    gap = Fraction(1, 4 ** (level + 1))
    side = (width - gap) / 2
    child = _svc_piece(level + 1, depth)
    return seg.make_split(side, child, seg.make_split(gap, seg.EMPTY, child))


def _svc_width(level: int) -> Fraction:
    # Each surviving piece at a given level has width 2^-k * (1/2 + 2^-(k+1)).
    return Fraction(1, 2**level) * (Fraction(1, 2) + Fraction(1, 2 ** (level + 1)))


def svc_stage(n: int) -> IntervalSet:
    """[0, 1) with ``2**(k-1)`` middle intervals of length ``4**-k`` removed for k = 1..n."""
    if n < 0:
        raise ValueError("stage index must be non-negative")
    return IntervalSet._from_node(_svc_piece(0, n))


def svc_modulus(eps: Fraction) -> int:
    # μ(A_n) = 1/2 + 2^-(n+1) decreases, so dist(A_n, A_m) < 2^-(n+1) for m > n.
    return _least(lambda n: Fraction(1, 2 ** (n + 1)) <= eps)


def smith_volterra_cantor(check=True) -> CompletionElement:
    """The fat Cantor set as a point of the completion; its measure is 1/2."""
    kwargs = {} if check else {"check": None}
    return from_stages(svc_stage, svc_modulus, INTERVAL_MODEL, name="SVC", **kwargs)


# -- middle-thirds Cantor ------------------------------------------------------


@lru_cache(maxsize=None)
def _cantor_piece(remaining: int, level: int) -> seg.Node:
    if remaining == 0:
        return seg.FULL
    third = Fraction(1, 3 ** (level + 1))
    child = _cantor_piece(remaining - 1, level + 1)
    return seg.make_split(third, child, seg.make_split(third, seg.EMPTY, child))


def cantor_stage(n: int) -> IntervalSet:
    """The ``2**n`` closed-open intervals of length ``3**-n`` left after n middle-third removals."""
    if n < 0:
        raise ValueError("stage index must be non-negative")
    return IntervalSet._from_node(_cantor_piece(n, 0))


def cantor_modulus(eps: Fraction) -> int:
    return _least(lambda n: Fraction(2, 3) ** n <= eps)


def cantor(check=True) -> CompletionElement:
    """The middle-thirds Cantor set; a null class in the completion."""
    kwargs = {} if check else {"check": None}
    return from_stages(cantor_stage, cantor_modulus, INTERVAL_MODEL, name="Cantor", **kwargs)


# -- dyadic blocks -------------------------------------------------------------


def dyadic_item(i: int) -> CompletionElement:
    """``[1 - 2^(1-i), 1 - 2^-i)``: pairwise disjoint blocks of measure ``2^-i`` covering [0, 1)."""
    if i < 1:
        raise IndexError(f"item indices start at 1, got {i}")
    lo = 1 - Fraction(2, 2**i)
    hi = 1 - Fraction(1, 2**i)
    return embed(IntervalSet.interval(lo, hi), name=f"[{lo},{hi})")
