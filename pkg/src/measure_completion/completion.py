"""Points of the metric completion of a measure algebra.

A point is a μ-Cauchy sequence of algebra elements together with an explicit
Cauchy modulus ``eps -> N``: every pair of terms with indices ``n, m >= N``
lies within ``eps`` of each other.  Distances and measures of points are limits,
so they come back as :class:`ApproxValue` intervals; in the finite model (and
for eventually constant sequences) the limit is attained and the radius is 0.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import ModelMismatch, NotCauchy
from .measure_algebra import AlgebraElement, Model, dist

__all__ = [
    "DEFAULT_EPS",
    "ApproxValue",
    "CauchyCheck",
    "CompletionElement",
    "compl",
    "dbar",
    "embed",
    "eq_at",
    "from_stages",
    "is_disjoint",
    "is_subset",
    "join",
    "join_all",
    "meet",
    "meet_all",
    "mubar",
]

DEFAULT_EPS = Fraction(1, 10**6)

Stages = Callable[[int], AlgebraElement]
Modulus = Callable[[Fraction], int]

_TERM_CACHE_LIMIT = 512


def _positive(eps) -> Fraction:
    if type(eps) is not Fraction:
        eps = Fraction(eps)
    if eps.numerator <= 0:
        raise ValueError(f"tolerance must be positive, got {eps}")
    return eps


@dataclass(frozen=True)
class ApproxValue:
    """A real number known to lie in ``[value - radius, value + radius]``."""

    value: Fraction
    radius: Fraction = Fraction(0)

    @property
    def exact(self) -> bool:
        return self.radius == 0

    @property
    def lower(self) -> Fraction:
        return self.value - self.radius

    @property
    def upper(self) -> Fraction:
        return self.value + self.radius

    def contains(self, x) -> bool:
        return self.lower <= Fraction(x) <= self.upper


class CompletionElement:
    """A μ-Cauchy sequence ``term(1), term(2), ...`` with a Cauchy modulus.

    ``stable_from``, when given, promises that terms are identical from that
    index on, which lets distances be evaluated exactly.
    """

    def __init__(
        self,
        stages: Stages,
        modulus: Modulus,
        model: Model,
        *,
        name: Optional[str] = None,
        stable_from: Optional[int] = None,
    ):
        self._stages = stages
        self._modulus = modulus
        self.model = model
        self.name = name
        self.stable_from = stable_from
        self._cache: dict[int, AlgebraElement] = {}
        self._lock = threading.Lock()

    def term(self, n: int) -> AlgebraElement:
        if n < 1:
            raise IndexError(f"sequence indices start at 1, got {n}")
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        value = self._stages(n)
        if value.model is not self.model and value.model != self.model:
            raise ModelMismatch(f"term {n} of {self} is not in the element's model")
        with self._lock:
            if len(self._cache) >= _TERM_CACHE_LIMIT:
                self._cache.clear()
            return self._cache.setdefault(n, value)

    def modulus(self, eps) -> int:
        n = self._modulus(_positive(eps))
        if not isinstance(n, int) or n < 1:
            raise NotCauchy(f"modulus of {self} returned {n!r}, expected a positive integer")
        return n

    def exact_index(self) -> Optional[int]:
        """An index from which terms are a.e. constant, or None when unknown."""
        if self.stable_from is not None:
            return self.stable_from
        threshold = self.model.exact_threshold()
        if threshold is None:
            return None
        return self.modulus(threshold)

    def __repr__(self):
        return f"CompletionElement({self.name or '<anonymous>'})"


def embed(a: AlgebraElement, name: Optional[str] = None) -> CompletionElement:
    """The constant sequence at ``a``."""
    return CompletionElement(lambda n: a, lambda eps: 1, a.model, name=name, stable_from=1)


@dataclass(frozen=True)
class CauchyCheck:
    """Sampling schedule used by :func:`from_stages` to spot-check a modulus."""

    epsilons: Sequence[Fraction] = (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64))
    pairs: int = 8
    seed: int = 0


def from_stages(
    stages: Stages,
    modulus: Modulus,
    model: Optional[Model] = None,
    *,
    name: Optional[str] = None,
    check: Optional[CauchyCheck] = CauchyCheck(),
) -> CompletionElement:
    """Wrap a stage function and its claimed modulus, rejecting sampled violations.

    Raises :class:`NotCauchy` if the modulus is not antitone on the schedule or
    if some sampled pair ``n, m >= modulus(eps)`` has ``dist > eps``.
    Pass ``check=None`` to skip validation.
    """
    if model is None:
        model = stages(1).model
    x = CompletionElement(stages, modulus, model, name=name)
    if check is not None:
        _spot_check(x, check)
    return x


def _spot_check(x: CompletionElement, check: CauchyCheck) -> None:
    rng = random.Random(check.seed)
    previous = None
    for eps in sorted((Fraction(e) for e in check.epsilons), reverse=True):
        n0 = x.modulus(eps)
        if previous is not None and n0 < previous:
            raise NotCauchy(f"modulus of {x} is not antitone at eps={eps}")
        previous = n0
        span = max(8, n0)
        pairs = [(n0, n0 + 1)]
        while len(pairs) < check.pairs:
            pairs.append((rng.randint(n0, n0 + span), rng.randint(n0, n0 + span)))
        for n, m in pairs:
            d = dist(x.term(n), x.term(m))
            if d > eps:
                raise NotCauchy(
                    f"{x}: dist(term({n}), term({m})) = {d} exceeds eps = {eps} "
                    f"although both indices are >= modulus = {n0}"
                )


def _check_models(*xs: CompletionElement) -> Model:
    model = xs[0].model
    for x in xs[1:]:
        if x.model is not model and x.model != model:
            raise ModelMismatch(f"{xs[0]} and {x} belong to different models")
    return model


def _combined_name(op: str, xs: Sequence[CompletionElement]) -> Optional[str]:
    if all(x.name for x in xs):
        return "(" + f" {op} ".join(x.name for x in xs) + ")"
    return None


def _stable(xs: Sequence[CompletionElement]) -> Optional[int]:
    if all(x.stable_from is not None for x in xs):
        return max(x.stable_from for x in xs)
    return None


def _pointwise(op: str, symbol: str, xs: Sequence[CompletionElement]) -> CompletionElement:
    # d(∪A_i, ∪B_i) <= Σ d(A_i, B_i), and likewise for intersections, so each
    # operand gets an equal share eps/k of the budget.
    xs = tuple(xs)
    if not xs:
        raise ValueError("need at least one element")
    model = _check_models(*xs)
    if len(xs) == 1:
        return xs[0]
    k = len(xs)

    def stages(n: int):
        acc = xs[0].term(n)
        for x in xs[1:]:
            acc = getattr(acc, op)(x.term(n))
        return acc

    def modulus(eps: Fraction) -> int:
        return max(x.modulus(eps / k) for x in xs)

    return CompletionElement(
        stages, modulus, model, name=_combined_name(symbol, xs), stable_from=_stable(xs)
    )


def join(x: CompletionElement, y: CompletionElement) -> CompletionElement:
    """Termwise union; modulus ``max(mod_x(eps/2), mod_y(eps/2))``."""
    return _pointwise("union", "∨", (x, y))


def meet(x: CompletionElement, y: CompletionElement) -> CompletionElement:
    """Termwise intersection; same modulus as :func:`join`."""
    return _pointwise("intersect", "∧", (x, y))


def join_all(xs: Sequence[CompletionElement]) -> CompletionElement:
    return _pointwise("union", "∨", xs)


def meet_all(xs: Sequence[CompletionElement]) -> CompletionElement:
    return _pointwise("intersect", "∧", xs)


def compl(x: CompletionElement) -> CompletionElement:
    """Termwise complement; complementation is an isometry so the modulus is unchanged."""
    return CompletionElement(
        lambda n: x.term(n).complement(),
        x.modulus,
        x.model,
        name=f"¬{x.name}" if x.name else None,
        stable_from=x.stable_from,
    )


def dbar(x: CompletionElement, y: CompletionElement, eps=DEFAULT_EPS) -> ApproxValue:
    """Distance in the completion, to within ``eps``.

    Evaluates ``dist(x_n, y_m)`` with ``n = mod_x(eps/2)`` and ``m = mod_y(eps/2)``;
    each Cauchy tail moves the value by at most ``eps/2``, so the two sides
    need not share an index.  Sides whose limit is attained at a known index
    contribute no error.
    """
    eps = _positive(eps)
    _check_models(x, y)
    radius = Fraction(0)
    terms = []
    for side in (x, y):
        exact = side.exact_index()
        if exact is not None:
            terms.append(side.term(exact))
        else:
            terms.append(side.term(side.modulus(eps / 2)))
            radius += eps / 2
    return ApproxValue(dist(*terms), radius)


def mubar(x: CompletionElement, eps=DEFAULT_EPS) -> ApproxValue:
    """Measure of a completion point: its distance to the bottom element."""
    return dbar(x, embed(x.model.empty()), eps)


def eq_at(x: CompletionElement, y: CompletionElement, eps=DEFAULT_EPS) -> bool:
    """One-sided equality test.

    True certifies ``d̄(x, y) <= eps``; False certifies ``d̄(x, y) > eps/2``.
    """
    eps = _positive(eps)
    return dbar(x, y, eps / 4).value <= 3 * eps / 4


def _null_at(x: CompletionElement, eps: Fraction) -> bool:
    return mubar(x, eps / 4).value <= 3 * eps / 4


def is_disjoint(x: CompletionElement, y: CompletionElement, eps=DEFAULT_EPS) -> bool:
    """``μ̄(x ∧ y)`` is zero at tolerance ``eps``, with :func:`eq_at` semantics."""
    return _null_at(meet(x, y), _positive(eps))


def is_subset(x: CompletionElement, y: CompletionElement, eps=DEFAULT_EPS) -> bool:
    """``x ≤ y`` in the lattice order, i.e. ``μ̄(x ∧ yᶜ)`` is zero at tolerance ``eps``."""
    return _null_at(meet(x, compl(y)), _positive(eps))
