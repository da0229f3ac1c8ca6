import random
from fractions import Fraction as F

import pytest

from measure_completion.completion import (
    ApproxValue,
    CauchyCheck,
    compl,
    dbar,
    embed,
    eq_at,
    from_stages,
    is_disjoint,
    is_subset,
    join,
    meet,
    mubar,
)
from measure_completion.constructions import (
    cantor,
    cantor_modulus,
    cantor_stage,
    smith_volterra_cantor,
    svc_modulus,
    svc_stage,
)
from measure_completion.errors import ModelMismatch, NotCauchy
from measure_completion.measure_algebra import INTERVAL_MODEL, FiniteModel, IntervalSet, dist

from oracles import svc_stage_measure
from strategies import random_interval_set
from variants import equivalent_pairs

HALF = IntervalSet.interval(0, F(1, 2))
EPSILONS = [F(1, 4), F(1, 16), F(1, 100), F(1, 1000)]


@pytest.fixture(scope="module")
def svc():
    return smith_volterra_cantor()


@pytest.fixture(scope="module")
def cs():
    return cantor()


def sample_elements(rng, count):
    """Constant, SVC-derived and Cantor-derived elements, in consecutive pairs.

    SVC and Cantor stages never meet inside one pair: their cut points never
    align, so combining deep stages of both blows up exponentially.
    """
    svc_el, c_el = smith_volterra_cantor(check=False), cantor(check=False)
    out = []
    for k in range(count):
        if k % 2 == 0:
            family = rng.choice([svc_el, c_el])
        a = embed(random_interval_set(rng))
        out.append(rng.choice([a, join(family, a), meet(family, a), compl(family)]))
    return out


def sample_pairs(rng, count):
    els = sample_elements(rng, 2 * count)
    return list(zip(els[::2], els[1::2]))


class TestEmbed:
    def test_empty_has_zero_measure(self):
        v = mubar(embed(IntervalSet.empty()), F(1, 10))
        assert v == ApproxValue(F(0), F(0))

    def test_top_has_measure_one(self):
        assert mubar(embed(IntervalSet.full())).value == 1

    def test_constant_sequences_are_exact(self):
        rng = random.Random(1)
        for _ in range(50):
            a, b = random_interval_set(rng), random_interval_set(rng)
            v = dbar(embed(a), embed(b), F(1, 3))
            assert v.value == dist(a, b) and v.radius == 0


class TestFromStages:
    def test_svc_is_accepted(self, svc):
        assert svc.modulus(F(1, 4)) == 1 and svc.modulus(F(1, 1000)) == 9

    def test_cantor_is_accepted(self, cs):
        assert cs.modulus(F(1, 1000)) == 18

    def test_alternating_halves_are_rejected(self):
        def stages(n):
            return HALF if n % 2 else ~HALF

        for modulus in (lambda eps: 1, lambda eps: 100):
            with pytest.raises(NotCauchy):
                from_stages(stages, modulus)

    def test_too_optimistic_modulus_is_rejected(self):
        with pytest.raises(NotCauchy):
            from_stages(svc_stage, lambda eps: 1)

    def test_non_antitone_modulus_is_rejected(self):
        with pytest.raises(NotCauchy):
            from_stages(svc_stage, lambda eps: 40 if eps > F(1, 10) else 12, check=CauchyCheck())

    def test_invalid_modulus_value(self):
        x = from_stages(svc_stage, svc_modulus, check=None)
        bad = from_stages(svc_stage, lambda eps: 0, check=None)
        assert x.modulus(F(1, 2)) == 1
        with pytest.raises(NotCauchy):
            bad.modulus(F(1, 2))

    @pytest.mark.parametrize("make", [smith_volterra_cantor, cantor])
    def test_cauchy_guarantee_and_antitone_modulus(self, make):
        x = make()
        rng = random.Random(3)
        previous = 0
        for eps in EPSILONS:
            n0 = x.modulus(eps)
            assert n0 >= previous
            previous = n0
            for _ in range(10):
                n, m = rng.randint(n0, n0 + 30), rng.randint(n0, n0 + 30)
                assert dist(x.term(n), x.term(m)) <= eps
                # real sequence of measures is Cauchy at the same rate
                assert abs(x.term(n).measure() - x.term(m).measure()) <= eps

    def test_terms_are_deterministic(self, svc):
        assert svc.term(7) == svc_stage(7)
        assert svc.term(7) is svc.term(7)

    def test_indices_start_at_one(self, svc):
        with pytest.raises(IndexError):
            svc.term(0)


class TestLimits:
    def test_svc_measure(self, svc):
        v = mubar(svc, F(1, 1000))
        assert abs(v.value - F(1, 2)) <= F(1, 1000)
        # oracle: the value is an exact stage measure
        n = svc.modulus(F(1, 2000))
        assert v.value == svc_stage_measure(n)

    def test_cantor_measure(self, cs):
        v = mubar(cs, F(1, 1000))
        assert v.value <= F(1, 1000)
        assert v.value == F(2, 3) ** cs.modulus(F(1, 2000))

    def test_svc_distance_to_empty(self, svc):
        v = dbar(svc, embed(IntervalSet.empty()), F(1, 1000))
        assert abs(v.value - F(1, 2)) <= F(1, 1000) and v.radius == F(1, 2000)

    def test_self_distance(self, svc):
        v = dbar(svc, svc, F(1, 100))
        assert v.value == 0 and v.radius == F(1, 100)

    def test_svc_left_half(self, svc):
        # oracle: the stage sets are symmetric about 1/2, so each half carries half the measure
        v = mubar(meet(svc, embed(HALF)), F(1, 1000))
        n = max(svc.modulus(F(1, 4000)), 1)
        assert v.value == (svc_stage(n) & HALF).measure() == svc_stage_measure(n) / 2
        assert abs(v.value - F(1, 4)) <= F(1, 1000)

    def test_models_must_match(self, svc):
        with pytest.raises(ModelMismatch):
            dbar(svc, embed(FiniteModel((1,)).top()))
        with pytest.raises(ModelMismatch):
            join(svc, embed(FiniteModel((1,)).top()))

    def test_nonpositive_tolerance(self, svc):
        with pytest.raises(ValueError):
            mubar(svc, 0)


class TestLatticeOperations:
    def test_join_of_constants(self):
        rng = random.Random(5)
        for _ in range(30):
            a, b = random_interval_set(rng), random_interval_set(rng)
            v = dbar(join(embed(a), embed(b)), embed(a | b), F(1, 10))
            assert v.value == 0 and v.radius == 0

    def test_double_complement(self, svc, cs):
        for x in (svc, cs, meet(svc, embed(HALF))):
            assert dbar(compl(compl(x)), x, F(1, 1000)).value == 0

    def test_absorption_subset(self):
        rng = random.Random(11)
        for x, y in sample_pairs(rng, 10):
            assert is_subset(meet(x, y), x, F(1, 1000))

    def test_complement_axioms_interval(self):
        rng = random.Random(13)
        eps = F(1, 1000)
        for x, y in sample_pairs(rng, 8):
            assert mubar(meet(x, compl(x)), eps).value <= eps
            assert abs(mubar(join(x, compl(x)), eps).value - 1) <= eps
            if is_subset(x, y, eps):
                assert is_subset(compl(y), compl(x), 2 * eps)

    def test_join_modulus_follows_operands(self, svc, cs):
        j = join(svc, embed(HALF))
        assert j.modulus(F(1, 100)) == max(svc.modulus(F(1, 200)), 1)
        assert compl(cs).modulus(F(1, 100)) == cs.modulus(F(1, 100))


class TestPredicates:
    def test_cantor_equals_empty(self, cs):
        assert eq_at(cs, embed(IntervalSet.empty()), F(1, 1000))

    def test_disjoint_halves(self):
        for eps in EPSILONS:
            assert is_disjoint(embed(HALF), embed(~HALF), eps)

    def test_svc_not_empty(self, svc):
        assert not eq_at(svc, embed(IntervalSet.empty()), F(1, 100))

    def test_one_sided_semantics(self, svc):
        empty = embed(IntervalSet.empty())
        for eps in [F(1, 2), F(3, 4), F(1), F(2)]:
            d = F(1, 2)  # true distance
            if eq_at(svc, empty, eps):
                assert d <= eps
            else:
                assert d > eps / 2


@pytest.fixture(scope="module")
def pairs():
    return sample_pairs(random.Random(17), 20)


class TestCompletionInvariants:
    def test_subadditivity(self, pairs):
        eps = F(1, 1000)
        for x, y in pairs:
            assert mubar(join(x, y), eps).value <= mubar(x, eps).value + mubar(y, eps).value + 3 * eps

    def test_additivity_for_disjoint(self):
        eps = F(1, 1000)
        svc_el = smith_volterra_cantor(check=False)
        cases = [(meet(svc_el, embed(HALF)), embed(~HALF)), (svc_el, compl(svc_el)), (cantor(check=False), embed(HALF))]
        for x, y in cases:
            if is_disjoint(x, y, eps):
                total = mubar(join(x, y), eps).value
                assert abs(total - mubar(x, eps).value - mubar(y, eps).value) <= 4 * eps

    def test_symmetric_difference_identity(self, pairs):
        eps = F(1, 1000)
        for x, y in pairs:
            sd = join(meet(x, compl(y)), meet(y, compl(x)))
            assert abs(dbar(x, y, eps).value - mubar(sd, eps).value) <= 4 * eps

    def test_well_definedness(self):
        eps = F(1, 1000)
        for x, x2, y, y2 in equivalent_pairs(15):
            assert dbar(x, x2, eps).value <= eps and dbar(y, y2, eps).value <= eps
            assert dbar(join(x, y), join(x2, y2), eps).value <= 3 * eps
            assert dbar(meet(x, y), meet(x2, y2), eps).value <= 3 * eps
            assert dbar(compl(x), compl(x2), eps).value <= 2 * eps


class TestFiniteModelExactness:
    def test_all_values_exact(self):
        rng = random.Random(19)
        model = FiniteModel((F(1, 4), 0, F(1, 2), F(1, 4)))

        def noisy(mask):
            # Sequence that wobbles on the null atom forever and on atom 0 early on.
            target = model.from_mask(mask)

            def term(n):
                s = target ^ model.set({1}) if n % 2 else target
                return s ^ model.set({0}) if n < 3 else s

            return from_stages(term, lambda eps: 3, model)

        for _ in range(40):
            a, b = rng.getrandbits(4), rng.getrandbits(4)
            x, y = noisy(a), noisy(b)
            truth = (model.from_mask(a) ^ model.from_mask(b)).without_null_atoms().measure()
            v = dbar(x, y, F(1, 2))
            assert v.radius == 0 and v.value == truth
            assert mubar(join(x, compl(x))).value == 1
            assert mubar(meet(x, compl(x))).value == 0
            sd = join(meet(x, compl(y)), meet(y, compl(x)))
            assert mubar(sd).value == truth
