"""The limit-set map from the completion onto measurable sets modulo null sets.

Every completion point has a limit set ``B`` with ``μ*(B_n △ B) -> 0``.  In the
finite model that limit is a concrete set, attained once the Cauchy tail is
below half the smallest positive atom weight; we return it with its null atoms
removed so that each a.e.-class has exactly one representative.  In the
interval model the limit set is generally not a finite union of intervals, so
the descriptor is the defining sequence itself, which determines the class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .completion import (
    ApproxValue,
    CompletionElement,
    DEFAULT_EPS,
    compl,
    dbar,
    eq_at,
    join,
    meet,
)
from .errors import ModelMismatch
from .measure_algebra import FiniteModel, FiniteModelSet
from .report import VerificationReport
from .sigma_lattice import ElementSequence, JoinCertificate, countable_join

__all__ = [
    "HOMOMORPHISM_SLACK",
    "ExactSet",
    "MeasurableDescriptor",
    "SequenceBacked",
    "ae_equal",
    "complement_of",
    "countable_union_of",
    "descriptor_distance",
    "intersection_of",
    "limit_set",
    "union_of",
    "verify_homomorphism",
    "verify_isometry",
]

# Both sides of each interval-model law are read off to within eps; the
# one-sided equality test at 4*eps then accepts any measured distance <= 3*eps.
HOMOMORPHISM_SLACK = 4


@dataclass(frozen=True)
class ExactSet:
    """A finite-model set with every null atom removed (one per a.e.-class)."""

    set: FiniteModelSet

    def __post_init__(self):
        if self.set.mask & self.set.model.null_mask:
            object.__setattr__(self, "set", self.set.without_null_atoms())

    @property
    def model(self) -> FiniteModel:
        return self.set.model

    def __repr__(self):
        return f"ExactSet({sorted(self.set.atoms)})"


@dataclass(frozen=True, eq=False)
class SequenceBacked:
    """An interval-model measurable set, known through a Cauchy sequence converging to it."""

    element: CompletionElement
    name: Optional[str] = None

    @property
    def model(self):
        return self.element.model

    def __repr__(self):
        return f"SequenceBacked({self.name or self.element.name or '<anonymous>'})"


MeasurableDescriptor = Union[ExactSet, SequenceBacked]


def limit_set(x: CompletionElement) -> MeasurableDescriptor:
    """The measurable set a completion point converges to, up to a null set."""
    if x.model.exact_threshold() is None:
        return SequenceBacked(x, x.name)
    return ExactSet(x.term(x.exact_index()))


def _same_model(a: MeasurableDescriptor, b: MeasurableDescriptor) -> None:
    if type(a) is not type(b) or (a.model is not b.model and a.model != b.model):
        raise ModelMismatch(f"{a!r} and {b!r} belong to different models")


def descriptor_distance(a: MeasurableDescriptor, b: MeasurableDescriptor, eps=DEFAULT_EPS) -> ApproxValue:
    """``μ*(A △ B)``: exact for finite-model sets, to within ``eps`` otherwise."""
    _same_model(a, b)
    if isinstance(a, ExactSet):
        return ApproxValue(a.set.dist(b.set))
    return dbar(a.element, b.element, eps)


def ae_equal(a: MeasurableDescriptor, b: MeasurableDescriptor, eps=DEFAULT_EPS) -> bool:
    """``A = B`` almost everywhere; exact in the finite model, one-sided at ``eps`` otherwise."""
    _same_model(a, b)
    if isinstance(a, ExactSet):
        return a.set.dist(b.set) == 0
    return eq_at(a.element, b.element, eps)


def union_of(a: MeasurableDescriptor, b: MeasurableDescriptor) -> MeasurableDescriptor:
    _same_model(a, b)
    if isinstance(a, ExactSet):
        return ExactSet(a.set | b.set)
    return SequenceBacked(join(a.element, b.element))


def intersection_of(a: MeasurableDescriptor, b: MeasurableDescriptor) -> MeasurableDescriptor:
    _same_model(a, b)
    if isinstance(a, ExactSet):
        return ExactSet(a.set & b.set)
    return SequenceBacked(meet(a.element, b.element))


def complement_of(a: MeasurableDescriptor) -> MeasurableDescriptor:
    if isinstance(a, ExactSet):
        return ExactSet(~a.set)
    return SequenceBacked(compl(a.element))


def countable_union_of(
    descriptors: Callable[[int], MeasurableDescriptor], certificate: JoinCertificate, model
) -> MeasurableDescriptor:
    """``⋃ S_i`` for descriptors ``S_1, S_2, ...`` whose partial unions converge at ``certificate``'s rate."""
    threshold = model.exact_threshold()
    if threshold is None:
        seq = ElementSequence(lambda i: descriptors(i).element, certificate, model)
        return SequenceBacked(countable_join(seq))
    # Past this many terms the partial unions grow by less than any positive atom.
    n = certificate(threshold)
    acc = model.empty()
    for i in range(1, n + 1):
        acc = acc | descriptors(i).set
    return ExactSet(acc)


def _pairs(samples: Iterable) -> list[tuple[CompletionElement, CompletionElement]]:
    return [(x, y) for x, y in samples]


def verify_isometry(
    samples: Iterable[tuple[CompletionElement, CompletionElement]], eps=DEFAULT_EPS
) -> VerificationReport:
    """Check ``μ*(F(x) △ F(y)) = d̄(x, y)`` and injectivity up to null sets on each pair.

    Each check records ``[d̄(x, y), μ*(F(x) △ F(y))]``.
    """
    eps = Fraction(eps)
    report = VerificationReport()
    for index, (x, y) in enumerate(_pairs(samples)):
        if x.model != y.model:
            raise ModelMismatch(f"pair {index} mixes models")
        fx, fy = limit_set(x), limit_set(y)
        on_completion = dbar(x, y, eps)
        on_extension = descriptor_distance(fx, fy, eps)
        same_class = ae_equal(fx, fy, eps)
        if isinstance(fx, ExactSet):
            injective = same_class == (on_completion.value == 0)
            ok = on_completion.exact and on_completion.value == on_extension.value and injective
        else:
            injective = (not same_class) or eq_at(x, y, 2 * eps)
            ok = on_completion.value == on_extension.value and injective
        report.add(
            f"isometry[{index}]",
            "isometry",
            (on_completion.value, on_extension.value),
            max(on_completion.radius, on_extension.radius),
            ok,
        )
    return report


def _law(
    report: VerificationReport,
    name: str,
    anchor: str,
    lhs: MeasurableDescriptor,
    rhs: MeasurableDescriptor,
    eps: Fraction,
) -> None:
    gap = descriptor_distance(lhs, rhs, eps)
    if isinstance(lhs, ExactSet):
        ok = lhs.set == rhs.set
    else:
        ok = ae_equal(lhs, rhs, HOMOMORPHISM_SLACK * eps)
    report.add(name, anchor, (gap.value,), gap.radius, ok)


def verify_homomorphism(
    samples: Iterable[tuple[CompletionElement, CompletionElement]],
    seqs: Sequence[ElementSequence] = (),
    eps=DEFAULT_EPS,
) -> VerificationReport:
    """Check that the limit-set map preserves ∨, ∧, complement and countable joins.

    Each check records the measured distance between the two sides.  Finite
    model: exact equality of canonical sets.  Interval model: a.e. equality at
    ``HOMOMORPHISM_SLACK * eps``.
    """
    eps = Fraction(eps)
    report = VerificationReport()
    for index, (x, y) in enumerate(_pairs(samples)):
        if x.model != y.model:
            raise ModelMismatch(f"pair {index} mixes models")
        fx, fy = limit_set(x), limit_set(y)
        _law(report, f"join[{index}]", "join-homomorphism", limit_set(join(x, y)), union_of(fx, fy), eps)
        _law(report, f"meet[{index}]", "meet-homomorphism", limit_set(meet(x, y)), intersection_of(fx, fy), eps)
        _law(report, f"complement[{index}]", "complement-homomorphism", limit_set(compl(x)), complement_of(fx), eps)
    for index, seq in enumerate(seqs):
        lhs = limit_set(countable_join(seq))
        rhs = countable_union_of(lambda i: limit_set(seq.item(i)), seq.certificate, seq.model)
        _law(report, f"countable-join[{index}]", "countable-join-homomorphism", lhs, rhs, eps)
    return report
