"""Exact measure algebras: rational interval unions on [0, 1) and finite weighted powersets.

The module-level functions accept elements of either model and raise
:class:`ModelMismatch` when operands come from different models.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..errors import ModelMismatch
from .finite import FiniteModel, FiniteModelSet
from .intervals import INTERVAL_MODEL, Interval, IntervalModel, IntervalSet, normalize
from .literal import parse_setexpr

AlgebraElement = Union[IntervalSet, FiniteModelSet]
Model = Union[IntervalModel, FiniteModel]

__all__ = [
    "AlgebraElement",
    "FiniteModel",
    "FiniteModelSet",
    "INTERVAL_MODEL",
    "Interval",
    "IntervalModel",
    "IntervalSet",
    "Model",
    "complement",
    "dist",
    "intersect",
    "measure",
    "normalize",
    "parse_setexpr",
    "same_model",
    "symm_diff",
    "union",
]


def same_model(a, b) -> Model:
    if type(a) is not type(b) or a.model != b.model:
        raise ModelMismatch(f"{a!r} and {b!r} belong to different models")
    return a.model


def union(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    same_model(a, b)
    return a.union(b)


def intersect(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    same_model(a, b)
    return a.intersect(b)


def symm_diff(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    same_model(a, b)
    return a.symm_diff(b)


def complement(a: AlgebraElement) -> AlgebraElement:
    return a.complement()


def measure(a: AlgebraElement) -> Fraction:
    return a.measure()


def dist(a: AlgebraElement, b: AlgebraElement) -> Fraction:
    """The pseudometric ``μ(A △ B)``."""
    same_model(a, b)
    return a.dist(b)
