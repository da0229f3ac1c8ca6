"""Named scenarios that build constructions, run verification suites and report."""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .completion import (
    CompletionElement,
    DEFAULT_EPS,
    compl,
    dbar,
    embed,
    eq_at,
    is_subset,
    join,
    meet,
    mubar,
)
from .constructions import cantor, cantor_stage, smith_volterra_cantor, svc_stage
from .errors import InvalidScenario, MeasureCompletionError
from .extension import ExactSet, ae_equal, limit_set, verify_homomorphism, verify_isometry
from .measure_algebra import FiniteModel, IntervalSet
from .report import Check, VerificationReport, format_rational
from .sigma_lattice import (
    ElementSequence,
    JoinCertificate,
    check_cha_distributivity,
    countable_join,
    dyadic_sequence,
    partial_join,
    sum_disjoint_measures,
)

log = logging.getLogger(__name__)

SCENARIOS = ("svc", "cantor", "dyadic-join", "finite-oracle", "cha-check", "isometry")
MAX_DEPTH = 256
MAX_ATOMS = 16
# Beyond this many subsets the finite oracle samples pairs instead of enumerating them.
EXHAUSTIVE_SETS = 32
SAMPLED_PAIRS = 300

__all__ = ["SCENARIOS", "Report", "Scenario", "run"]


@dataclass(frozen=True)
class Scenario:
    name: str
    depth: int = 20
    atoms: int = 6
    seed: int = 0
    epsilon: Fraction = DEFAULT_EPS

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.name not in SCENARIOS:
            raise InvalidScenario(f"unknown scenario {self.name!r}; choose from {', '.join(SCENARIOS)}")
        if not 1 <= self.depth <= MAX_DEPTH:
            raise InvalidScenario(f"depth must be in 1..{MAX_DEPTH}, got {self.depth}")
        if not 1 <= self.atoms <= MAX_ATOMS:
            raise InvalidScenario(f"atoms must be in 1..{MAX_ATOMS}, got {self.atoms}")
        if not 0 <= self.seed < 2**64:
            raise InvalidScenario(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 < self.epsilon <= 1:
            raise InvalidScenario(f"epsilon must lie in (0, 1], got {self.epsilon}")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "depth": self.depth,
            "atoms": self.atoms,
            "seed": self.seed,
            "epsilon": format_rational(self.epsilon),
        }


@dataclass
class Report:
    scenario: Scenario
    checks: list[Check]
    ms: float

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_json(self, with_time: bool = True) -> dict:
        out = {
            "scenario": self.scenario.to_json(),
            "checks": [c.to_json() for c in self.checks],
            "pass": self.passed,
        }
        if with_time:
            out["ms"] = round(self.ms, 3)
        return out


CheckThunk = Callable[[], "list[Check]"]


def _one(name: str, anchor: str, values=(), radius=0, passed=True) -> list[Check]:
    return [Check(name, anchor, tuple(Fraction(v) for v in values), Fraction(radius), bool(passed))]


def _summarize(name: str, anchor: str, report: VerificationReport) -> list[Check]:
    # One line per suite: number of checks run and number that failed.
    failures = report.failures()
    for f in failures[:5]:
        log.warning("%s: %s failed with values %s", name, f.name, f.values)
    radius = max((c.radius for c in report.checks), default=Fraction(0))
    return _one(name, anchor, (len(report.checks), len(failures)), radius, not failures)


def _guard(name: str, thunk: CheckThunk) -> CheckThunk:
    def run_guarded() -> list[Check]:
        try:
            return thunk()
        except MeasureCompletionError as exc:
            log.error("check %s raised %s", name, exc)
            return [Check(name, "error", (), Fraction(0), False, error=f"{type(exc).__name__}: {exc}")]

    return run_guarded


# -- interval-model scenarios ----------------------------------------------------


def _stage_measures(name: str, stage, expected, depth: int) -> list[Check]:
    ok = all(stage(n).measure() == expected(n) for n in range(1, depth + 1))
    return _one(name, "stage-measure", (stage(depth).measure(),), 0, ok)


def _svc_checks(sc: Scenario) -> list[tuple[str, CheckThunk]]:
    eps = sc.epsilon
    half = IntervalSet.interval(0, Fraction(1, 2))

    def build():
        smith_volterra_cantor()
        return _one("svc-cauchy", "cauchy-modulus")

    def mu():
        v = mubar(smith_volterra_cantor(check=False), eps)
        return _one("svc-mubar", "limit-measure", (v.value,), v.radius, abs(v.value - Fraction(1, 2)) <= eps)

    def left_half():
        v = mubar(meet(smith_volterra_cantor(check=False), embed(half)), eps)
        return _one("svc-meet-left-half", "meet", (v.value,), v.radius, abs(v.value - Fraction(1, 4)) <= eps)

    def not_null():
        x = smith_volterra_cantor(check=False)
        return _one("svc-not-null", "a.e.-equality", (), 0, not eq_at(x, embed(IntervalSet.empty()), eps))

    return [
        ("svc-cauchy", build),
        ("svc-stage-measure", lambda: _stage_measures(
            "svc-stage-measure", svc_stage, lambda n: Fraction(1, 2) + Fraction(1, 2 ** (n + 1)), sc.depth)),
        ("svc-mubar", mu),
        ("svc-meet-left-half", left_half),
        ("svc-not-null", not_null),
    ]


def _cantor_checks(sc: Scenario) -> list[tuple[str, CheckThunk]]:
    eps = sc.epsilon

    def build():
        cantor()
        return _one("cantor-cauchy", "cauchy-modulus")

    def mu():
        v = mubar(cantor(check=False), eps)
        return _one("cantor-mubar", "limit-measure", (v.value,), v.radius, v.value <= eps)

    def null_class():
        same = ae_equal(limit_set(cantor(check=False)), limit_set(embed(IntervalSet.empty())), eps)
        return _one("cantor-null-class", "a.e.-equality", (), 0, same)

    return [
        ("cantor-cauchy", build),
        ("cantor-stage-measure", lambda: _stage_measures(
            "cantor-stage-measure", cantor_stage, lambda n: Fraction(2, 3) ** n, sc.depth)),
        ("cantor-mubar", mu),
        ("cantor-null-class", null_class),
    ]


def _dyadic_checks(sc: Scenario) -> list[tuple[str, CheckThunk]]:
    eps = sc.epsilon
    seq = dyadic_sequence()

    def additivity():
        total = mubar(countable_join(seq), eps)
        summed = sum_disjoint_measures(seq, eps)
        ok = (
            abs(total.value - summed.value) <= total.radius + summed.radius
            and abs(total.value - 1) <= eps
            and abs(summed.value - 1) <= eps
        )
        return _one("dyadic-additivity", "countable-additivity", (total.value, summed.value),
                    total.radius + summed.radius, ok)

    def upper_bound():
        joined = countable_join(seq)
        ok = all(is_subset(partial_join(seq, n), joined, eps) for n in range(1, sc.depth + 1))
        return _one("dyadic-upper-bound", "countable-join-upper-bound", (sc.depth,), 0, ok)

    def tightness():
        joined = countable_join(seq)
        start = seq.certificate(eps)
        worst = max(
            mubar(meet(joined, compl(partial_join(seq, n))), eps).value
            for n in range(start, start + sc.depth)
        )
        return _one("dyadic-tightness", "countable-join-tightness", (worst,), eps, worst <= 3 * eps)

    def uniqueness():
        doubled = seq.with_certificate(JoinCertificate.geometric(2, Fraction(1, 2)))
        d = dbar(countable_join(seq), countable_join(doubled), eps)
        return _one("dyadic-uniqueness", "countable-join-uniqueness", (d.value,), d.radius, d.value <= 2 * eps)

    return [
        ("dyadic-additivity", additivity),
        ("dyadic-upper-bound", upper_bound),
        ("dyadic-tightness", tightness),
        ("dyadic-uniqueness", uniqueness),
    ]


# -- finite-model scenarios --------------------------------------------------------


def random_model(atoms: int, rng: random.Random) -> FiniteModel:
    """Weights on the grid ``k/8``, ``k = 0..8``; zero weights make null atoms."""
    return FiniteModel(tuple(Fraction(rng.randint(0, 8), 8) for _ in range(atoms)))


def _finite_pairs(model: FiniteModel, rng: random.Random):
    sets = [embed(s) for s in model.all_sets()] if 2**model.atom_count <= EXHAUSTIVE_SETS else None
    if sets is not None:
        return [(x, y) for x in sets for y in sets]
    top = model.full_mask
    return [
        (embed(model.from_mask(rng.randint(0, top))), embed(model.from_mask(rng.randint(0, top))))
        for _ in range(SAMPLED_PAIRS)
    ]


def _random_sequences(model: FiniteModel, rng: random.Random, count: int) -> list[ElementSequence]:
    top = model.full_mask
    seqs = []
    for _ in range(count):
        k = rng.randint(1, 5)
        seqs.append(ElementSequence.finite([embed(model.from_mask(rng.randint(0, top))) for _ in range(k)], model))
    return seqs


def _finite_checks(sc: Scenario) -> list[tuple[str, CheckThunk]]:
    rng = random.Random(sc.seed)
    model = random_model(sc.atoms, rng)
    pairs = _finite_pairs(model, rng)
    seqs = _random_sequences(model, rng, 20)

    def quotient():
        classes = {limit_set(embed(s)) for s in model.all_sets()}
        expected = 2 ** (model.atom_count - len(model.null_atoms))
        return _one("finite-quotient-cardinality", "a.e.-quotient", (len(classes), expected), 0,
                    len(classes) == expected)

    def complement_axioms():
        report = VerificationReport()
        def below(a, b) -> bool:
            return (a.set.mask & ~b.set.mask) == 0

        for x, y in pairs:
            fx, fy = limit_set(x), limit_set(y)
            ok = (
                limit_set(meet(x, compl(x))) == ExactSet(model.empty())
                and limit_set(join(x, compl(x))) == ExactSet(model.top())
                and limit_set(compl(compl(x))) == fx
                and (not below(fx, fy) or below(limit_set(compl(y)), limit_set(compl(x))))
            )
            report.add("complement-axioms", "lattice-complement", (), 0, ok)
        return _summarize("finite-complement-axioms", "lattice-complement", report)

    return [
        ("finite-isometry", lambda: _summarize("finite-isometry", "isometry", verify_isometry(pairs))),
        ("finite-homomorphism", lambda: _summarize(
            "finite-homomorphism", "sigma-lattice-isomorphism", verify_homomorphism(pairs, seqs))),
        ("finite-quotient-cardinality", quotient),
        ("finite-complement-axioms", complement_axioms),
    ]


def _cha_checks(sc: Scenario) -> list[tuple[str, CheckThunk]]:
    eps = sc.epsilon

    def interval():
        r = check_cha_distributivity(dyadic_sequence(), embed(IntervalSet.interval(0, Fraction(1, 2))), eps)
        return _one("cha-dyadic-left-half", "countable-distributivity",
                    (r.distance.value, r.join_of_meets.value, r.meet_of_join.value), r.distance.radius, r.passed)

    def finite():
        rng = random.Random(sc.seed)
        model = random_model(sc.atoms, rng)
        report = VerificationReport()
        top = model.full_mask
        for seq in _random_sequences(model, rng, 100):
            y = embed(model.from_mask(rng.randint(0, top)))
            r = check_cha_distributivity(seq, y, eps)
            report.add("cha", "countable-distributivity", (r.distance.value,), r.distance.radius,
                       r.distance.exact and r.distance.value == 0)
        return _summarize("cha-finite-exact", "countable-distributivity", report)

    return [("cha-dyadic-left-half", interval), ("cha-finite-exact", finite)]


def interval_samples() -> list[tuple[CompletionElement, CompletionElement]]:
    """Named interval-model pairs whose stage structures align (no exponential blow-up)."""
    svc = smith_volterra_cantor(check=False)
    cs = cantor(check=False)
    empty = embed(IntervalSet.empty(), name="∅")
    half = embed(IntervalSet.interval(0, Fraction(1, 2)), name="[0,1/2)")
    third = embed(IntervalSet.interval(0, Fraction(1, 3)), name="[0,1/3)")
    return [(svc, empty), (svc, half), (svc, svc), (cs, empty), (cs, third), (half, third)]


def _isometry_checks(sc: Scenario) -> list[tuple[str, CheckThunk]]:
    eps = sc.epsilon

    def interval():
        return _summarize("isometry-interval", "isometry", verify_isometry(interval_samples(), eps))

    def finite():
        rng = random.Random(sc.seed)
        model = random_model(sc.atoms, rng)
        return _summarize("isometry-finite", "isometry", verify_isometry(_finite_pairs(model, rng)))

    return [("isometry-interval", interval), ("isometry-finite", finite)]


_BUILDERS = {
    "svc": _svc_checks,
    "cantor": _cantor_checks,
    "dyadic-join": _dyadic_checks,
    "finite-oracle": _finite_checks,
    "cha-check": _cha_checks,
    "isometry": _isometry_checks,
}


def run(scenario: Scenario, parallel: bool = False) -> Report:
    """Run every check of ``scenario``; the same scenario always yields the same checks."""
    start = time.perf_counter()
    thunks = [_guard(name, thunk) for name, thunk in _BUILDERS[scenario.name](scenario)]
    if parallel:
        with ThreadPoolExecutor() as pool:
            results: Iterable[list[Check]] = list(pool.map(lambda t: t(), thunks))
    else:
        results = [t() for t in thunks]
    checks = [c for group in results for c in group]
    return Report(scenario, checks, (time.perf_counter() - start) * 1000)
