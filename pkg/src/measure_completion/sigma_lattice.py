"""Countable joins in the completion, made computable by a convergence certificate.

The countable join of ``E_1, E_2, ...`` is the sequence ``Y_L`` where ``Y_L``
is a finite-stage union of the first ``N_L`` items at a common index ``K_L``.
``N_L`` comes from a :class:`JoinCertificate`, a rate at which the measures of
the partial joins ``V_k = E_1 ∨ ... ∨ E_k`` converge; ``K_L`` comes from the
items' own Cauchy moduli.  Each ``Y_L`` lies within ``1/L`` of the join, so
``{Y_L}`` has modulus ``eps -> ceil(2/eps)``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .completion import (
    ApproxValue,
    CompletionElement,
    DEFAULT_EPS,
    dbar,
    embed,
    is_disjoint,
    join_all,
    meet,
    mubar,
)
from .errors import BadCertificate, NotDisjoint
from .measure_algebra import Model

__all__ = [
    "CHA_SLACK",
    "ChaReport",
    "ElementSequence",
    "JoinCertificate",
    "check_cha_distributivity",
    "countable_join",
    "dyadic_sequence",
    "partial_join",
    "sum_disjoint_measures",
    "validate_certificate",
]

# d̄ between the two sides of countable distributivity is 0; each side is read
# off to within eps, so 4*eps leaves room for both radii twice over.
CHA_SLACK = 4

_MAX_TAIL_INDEX = 1 << 48


@dataclass(frozen=True)
class JoinCertificate:
    """Rate of convergence of ``μ̄(V_k)``.

    ``tail_modulus(eps) = N`` promises ``μ̄(V_m) - μ̄(V_N) <= eps`` for every
    ``m >= N``.  ``stable_from`` additionally promises that the partial joins
    are constant from that index on.
    """

    tail_modulus: Callable[[Fraction], int]
    stable_from: Optional[int] = None

    def __call__(self, eps) -> int:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError(f"tolerance must be positive, got {eps}")
        n = self.tail_modulus(eps)
        if not isinstance(n, int) or n < 1:
            raise BadCertificate(f"tail modulus returned {n!r}, expected a positive integer")
        return n

    @classmethod
    def stabilizing(cls, index: int) -> "JoinCertificate":
        """Partial joins stop changing after ``index`` items."""
        index = max(1, index)
        return cls(lambda eps: index, stable_from=index)

    @classmethod
    def from_tail_bound(cls, tail: Callable[[int], Fraction]) -> "JoinCertificate":
        """Certificate from a non-increasing bound ``tail(N) >= Σ_{i>N} μ̄(E_i)``.

        ``tail_modulus(eps)`` is the least ``N`` with ``tail(N) <= eps``, found by
        doubling then bisection, so it is antitone whenever ``tail`` is monotone.
        """

        def tail_modulus(eps: Fraction) -> int:
            if tail(1) <= eps:
                return 1
            hi = 2
            while tail(hi) > eps:
                hi *= 2
                if hi > _MAX_TAIL_INDEX:
                    raise BadCertificate(f"tail bound never drops below {eps}")
            lo = hi // 2  # tail(lo) > eps
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if tail(mid) <= eps:
                    hi = mid
                else:
                    lo = mid
            return hi

        return cls(tail_modulus)

    @classmethod
    def geometric(cls, scale, ratio) -> "JoinCertificate":
        """Tail bound ``scale * ratio**N`` with ``0 <= ratio < 1``."""
        scale, ratio = Fraction(scale), Fraction(ratio)
        if not 0 <= ratio < 1:
            raise ValueError("geometric ratio must lie in [0, 1)")
        return cls.from_tail_bound(lambda n: scale * ratio**n)


class ElementSequence:
    """Items ``E_1, E_2, ...`` in one model, with a join certificate.

    ``certified`` marks sequences whose certificate holds by construction
    (:meth:`finite`, :meth:`constant`); :func:`countable_join` skips the
    sampled validation for them.
    """

    def __init__(
        self,
        item: Callable[[int], CompletionElement],
        certificate: JoinCertificate,
        model: Model,
        *,
        name: Optional[str] = None,
        certified: bool = False,
    ):
        self._item = item
        self.certificate = certificate
        self.model = model
        self.name = name
        self.certified = certified
        self._cache: dict[int, CompletionElement] = {}
        self._lock = threading.Lock()

    def item(self, i: int) -> CompletionElement:
        if i < 1:
            raise IndexError(f"item indices start at 1, got {i}")
        cached = self._cache.get(i)
        if cached is not None:
            return cached
        x = self._item(i)
        if x.model != self.model:
            raise BadCertificate(f"item {i} of {self} is not in the sequence's model")
        with self._lock:
            return self._cache.setdefault(i, x)

    def items(self, k: int) -> list[CompletionElement]:
        return [self.item(i) for i in range(1, k + 1)]

    @classmethod
    def finite(cls, elements: Sequence[CompletionElement], model: Optional[Model] = None, name=None):
        """``elements`` followed by the bottom element forever."""
        elements = tuple(elements)
        if model is None:
            if not elements:
                raise ValueError("model is required for an empty sequence")
            model = elements[0].model
        bottom = embed(model.empty(), name="∅")

        def item(i: int) -> CompletionElement:
            return elements[i - 1] if i <= len(elements) else bottom

        return cls(item, JoinCertificate.stabilizing(len(elements)), model, name=name, certified=True)

    @classmethod
    def constant(cls, x: CompletionElement, name=None) -> "ElementSequence":
        return cls(lambda i: x, JoinCertificate.stabilizing(1), x.model, name=name, certified=True)

    def map(self, f: Callable[[CompletionElement], CompletionElement], name=None) -> "ElementSequence":
        """Apply ``f`` itemwise, keeping the certificate (valid when ``f`` shrinks elements)."""
        return ElementSequence(lambda i: f(self.item(i)), self.certificate, self.model, name=name)

    def with_certificate(self, certificate: JoinCertificate) -> "ElementSequence":
        return ElementSequence(self._item, certificate, self.model, name=self.name)

    def __repr__(self):
        return f"ElementSequence({self.name or '<anonymous>'})"


def dyadic_sequence(certificate: Optional[JoinCertificate] = None) -> ElementSequence:
    """The disjoint dyadic blocks of [0, 1); tail after N items is exactly ``2^-N``."""
    from .constructions import dyadic_item

    if certificate is None:
        certificate = JoinCertificate.geometric(1, Fraction(1, 2))
    return ElementSequence(dyadic_item, certificate, dyadic_item(1).model, name="dyadic")


def partial_join(seq: ElementSequence, k: int) -> CompletionElement:
    """``E_1 ∨ ... ∨ E_k``."""
    if k < 1:
        raise ValueError(f"partial joins start at k = 1, got {k}")
    return join_all(seq.items(k))


def validate_certificate(
    seq: ElementSequence,
    epsilons: Sequence[Fraction] = (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)),
) -> None:
    """Spot-check the certificate's tail bound; raises :class:`BadCertificate`.

    Tolerances that map to the same ``N`` are checked once, at the smallest of
    them, which is the strictest.
    """
    strictest: dict[int, Fraction] = {}
    previous = None
    for eps in sorted((Fraction(e) for e in epsilons), reverse=True):
        n = seq.certificate(eps)
        if previous is not None and n < previous:
            raise BadCertificate(f"tail modulus of {seq} is not antitone at eps={eps}")
        previous = n
        strictest[n] = eps
    for n, eps in strictest.items():
        delta = eps / 8
        base = mubar(partial_join(seq, n), delta)
        for m in (n + 1, 2 * n + 1, 4 * n + 3):
            later = mubar(partial_join(seq, m), delta)
            if later.value - base.value > eps + later.radius + base.radius:
                raise BadCertificate(
                    f"{seq}: μ̄(V_{m}) - μ̄(V_{n}) ≈ {later.value - base.value} exceeds {eps}"
                )


def countable_join(seq: ElementSequence, *, validate: bool = True) -> CompletionElement:
    """The least upper bound of the items, as the sequence ``{Y_L}``.

    With ``N_L = tail_modulus(1/(2L))`` and ``K_L`` the modulus of the
    ``N_L``-th partial join at ``1/(2L)``, ``Y_L`` is the union of the items'
    ``K_L``-th terms.  ``K_L`` is non-decreasing because all moduli involved
    are antitone.
    """
    if validate and not seq.certified:
        validate_certificate(seq)

    def plan(L: int) -> tuple[int, int]:
        eps = Fraction(1, 2 * L)
        n = seq.certificate(eps)
        k = max(x.modulus(eps / n) for x in seq.items(n))
        return n, k

    def stages(L: int):
        n, k = plan(L)
        acc = seq.item(1).term(k)
        for x in seq.items(n)[1:]:
            acc = acc.union(x.term(k))
        return acc

    def modulus(eps: Fraction) -> int:
        return math.ceil(2 / eps)

    stable = None
    cert = seq.certificate
    # Exact when every Y_L is the same union of constant items.
    if cert.stable_from is not None and cert(Fraction(1, 2)) >= cert.stable_from:
        heads = seq.items(cert.stable_from)
        if all(x.stable_from == 1 for x in heads):
            stable = 1

    name = f"⋁{seq.name}" if seq.name else None
    return CompletionElement(stages, modulus, seq.model, name=name, stable_from=stable)


def sum_disjoint_measures(
    seq: ElementSequence, eps=DEFAULT_EPS, *, check_pairs: int = 50
) -> ApproxValue:
    """``Σ μ̄(E_i)`` for pairwise disjoint items, to within the returned radius.

    Sums the first ``N = tail_modulus(eps/2)`` measures, each to ``eps/(2N)``;
    by disjointness the remaining tail is at most ``eps/2`` (zero when the
    certificate says the partial joins have stabilized).  The first
    ``check_pairs`` index pairs are tested with :func:`is_disjoint`.
    """
    eps = Fraction(eps)
    n = seq.certificate(eps / 2)
    checked = 0
    horizon = max(n, 2)
    for j in range(2, horizon + 1):
        for i in range(1, j):
            if checked >= check_pairs:
                break
            if not is_disjoint(seq.item(i), seq.item(j), eps):
                raise NotDisjoint(f"items {i} and {j} of {seq} overlap at tolerance {eps}")
            checked += 1
    per_term = eps / (2 * n)
    terms = [mubar(x, per_term) for x in seq.items(n)]
    tail = Fraction(0)
    cert = seq.certificate
    if cert.stable_from is None or n < cert.stable_from:
        tail = eps / 2
    return ApproxValue(sum((t.value for t in terms), Fraction(0)), sum((t.radius for t in terms), tail))


@dataclass(frozen=True)
class ChaReport:
    """Outcome of one countable-distributivity check ``⋁(x_i ∧ y) = (⋁x_i) ∧ y``."""

    join_of_meets: ApproxValue  # μ̄ of the left side
    meet_of_join: ApproxValue  # μ̄ of the right side
    distance: ApproxValue
    tolerance: Fraction

    @property
    def passed(self) -> bool:
        return self.distance.value <= self.tolerance


def check_cha_distributivity(seq: ElementSequence, y: CompletionElement, eps=DEFAULT_EPS) -> ChaReport:
    # μ̄(V_m ∧ y) - μ̄(V_N ∧ y) <= μ̄(V_m) - μ̄(V_N), so the certificate carries over.
    eps = Fraction(eps)
    met = seq.map(lambda x: meet(x, y), name=f"{seq.name}∧y" if seq.name else None)
    left = countable_join(met)
    right = meet(countable_join(seq), y)
    return ChaReport(
        join_of_meets=mubar(left, eps),
        meet_of_join=mubar(right, eps),
        distance=dbar(left, right, eps),
        tolerance=CHA_SLACK * eps,
    )
