"""Finite weighted powerset: the exactly checkable oracle algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from ..errors import ModelMismatch

__all__ = ["FiniteModel", "FiniteModelSet"]


@dataclass(frozen=True)
class FiniteModel:
    """Atoms ``0 .. n-1`` with non-negative rational weights; Ω is the full powerset."""

    weights: tuple[Fraction, ...]
    # derived, cached: (full mask, null mask, mask -> measure, exact threshold, mask -> set)
    _cache: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if not weights:
            raise ValueError("a finite model needs at least one atom")
        if any(w < 0 for w in weights):
            raise ValueError("atom weights must be non-negative")
        object.__setattr__(self, "weights", weights)
        null = sum(1 << i for i, w in enumerate(weights) if w == 0)
        positive = [w for w in weights if w > 0]
        threshold = min(positive) / 2 if positive else Fraction(1)
        object.__setattr__(self, "_cache", ((1 << len(weights)) - 1, null, {}, threshold, {}))

    @property
    def atom_count(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def null_atoms(self) -> frozenset[int]:
        return frozenset(i for i, w in enumerate(self.weights) if w == 0)

    @property
    def null_mask(self) -> int:
        return self._cache[1]

    @property
    def full_mask(self) -> int:
        return self._cache[0]

    def mask_measure(self, mask: int) -> Fraction:
        measures = self._cache[2]
        value = measures.get(mask)
        if value is None:
            w = self.weights
            value = sum((w[i] for i in range(len(w)) if mask >> i & 1), Fraction(0))
            measures[mask] = value
        return value

    def exact_threshold(self) -> Fraction:
        """A tolerance below which any two sets are either a.e. equal or farther apart.

        Half the smallest positive weight; distances are sums of weights, so
        a distance at most this value must be exactly zero.
        """
        return self._cache[3]

    def set(self, atoms: Iterable[int] = ()) -> "FiniteModelSet":
        mask = 0
        for a in atoms:
            if not 0 <= a < self.atom_count:
                raise ValueError(f"atom {a} outside 0..{self.atom_count - 1}")
            mask |= 1 << a
        return self.from_mask(mask)

    def from_mask(self, mask: int) -> "FiniteModelSet":
        # Sets are interned per model; equal masks give the same object.
        sets = self._cache[4]
        s = sets.get(mask)
        if s is None:
            s = sets.setdefault(mask, FiniteModelSet(self, mask))
        return s

    def empty(self) -> "FiniteModelSet":
        return self.from_mask(0)

    def top(self) -> "FiniteModelSet":
        return self.from_mask(self.full_mask)

    def all_sets(self) -> Iterator["FiniteModelSet"]:
        for mask in range(1 << self.atom_count):
            yield self.from_mask(mask)


@dataclass(frozen=True)
class FiniteModelSet:
    model: FiniteModel
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.model.full_mask:
            raise ValueError(f"mask {self.mask:#x} has bits outside {self.model.atom_count} atoms")

    @property
    def atoms(self) -> frozenset[int]:
        return frozenset(i for i in range(self.model.atom_count) if self.mask >> i & 1)

    def measure(self) -> Fraction:
        return self.model.mask_measure(self.mask)

    def is_empty(self) -> bool:
        return self.mask == 0

    def _other(self, other) -> "FiniteModelSet":
        if not isinstance(other, FiniteModelSet) or (other.model is not self.model and other.model != self.model):
            raise ModelMismatch("operands come from different finite models")
        return other

    def union(self, other: "FiniteModelSet") -> "FiniteModelSet":
        return self.model.from_mask(self.mask | self._other(other).mask)

    def intersect(self, other: "FiniteModelSet") -> "FiniteModelSet":
        return self.model.from_mask(self.mask & self._other(other).mask)

    def symm_diff(self, other: "FiniteModelSet") -> "FiniteModelSet":
        return self.model.from_mask(self.mask ^ self._other(other).mask)

    def difference(self, other: "FiniteModelSet") -> "FiniteModelSet":
        return self.model.from_mask(self.mask & ~self._other(other).mask)

    def complement(self) -> "FiniteModelSet":
        return self.model.from_mask(self.model.full_mask & ~self.mask)

    def dist(self, other: "FiniteModelSet") -> Fraction:
        return self.symm_diff(other).measure()

    def without_null_atoms(self) -> "FiniteModelSet":
        return self.model.from_mask(self.mask & ~self.model.null_mask)

    __or__ = union
    __and__ = intersect
    __xor__ = symm_diff
    __sub__ = difference
    __invert__ = complement

    def __repr__(self):
        return f"FiniteModelSet({sorted(self.atoms)})"
