import itertools
import random
from fractions import Fraction as F

import pytest

from measure_completion.completion import compl, embed, eq_at, join, meet
from measure_completion.constructions import cantor, smith_volterra_cantor
from measure_completion.errors import ModelMismatch
from measure_completion.extension import (
    ExactSet,
    SequenceBacked,
    ae_equal,
    complement_of,
    countable_union_of,
    descriptor_distance,
    limit_set,
    union_of,
    verify_homomorphism,
    verify_isometry,
)
from measure_completion.measure_algebra import FiniteModel, IntervalSet
from measure_completion.sigma_lattice import ElementSequence, JoinCertificate, dyadic_sequence

from oracles import all_subsets as _subsets, weight_of
from variants import equivalent_pairs, noisy

EMPTY = embed(IntervalSet.empty())


def all_subsets(n):
    return list(_subsets(n))


class TestLimitSet:
    def test_null_atoms_dropped(self):
        model = FiniteModel((F(1, 2), 0, F(1, 2)))
        fx = limit_set(embed(model.set({0, 1})))
        assert isinstance(fx, ExactSet) and fx.set.atoms == {0}

    def test_noisy_sequence_reaches_target(self):
        rng = random.Random(2)
        model = FiniteModel((F(1, 4), 0, F(1, 4), 0, F(1, 2)))
        for atoms in all_subsets(5):
            expected = {a for a in atoms if model.weights[a] > 0}
            assert limit_set(noisy(model, atoms, rng)).set.atoms == expected

    def test_interval_model_is_sequence_backed(self):
        svc = smith_volterra_cantor(check=False)
        fx = limit_set(svc)
        assert isinstance(fx, SequenceBacked) and fx.element is svc

    def test_cantor_is_null(self):
        assert ae_equal(limit_set(cantor(check=False)), limit_set(EMPTY), F(1, 10**6))

    def test_svc_is_not_null(self):
        svc = limit_set(smith_volterra_cantor(check=False))
        assert not ae_equal(svc, limit_set(EMPTY), F(1, 100))
        d = descriptor_distance(svc, limit_set(EMPTY), F(1, 1000))
        assert abs(d.value - F(1, 2)) <= d.radius + F(1, 1000)


class TestDescriptorAlgebra:
    def test_ae_equal_ignores_null_atoms(self):
        model = FiniteModel((F(1, 3), 0, F(2, 3)))
        a, b = ExactSet(model.set({0, 1})), ExactSet(model.set({0}))
        assert ae_equal(a, b) and a == b
        assert not ae_equal(a, ExactSet(model.set({2})))

    def test_models_must_match(self):
        m1, m2 = FiniteModel((1,)), FiniteModel((F(1, 2), F(1, 2)))
        with pytest.raises(ModelMismatch):
            ae_equal(ExactSet(m1.top()), ExactSet(m2.top()))
        with pytest.raises(ModelMismatch):
            union_of(ExactSet(m1.top()), limit_set(EMPTY))

    def test_complement(self):
        model = FiniteModel((F(1, 2), 0, F(1, 2)))
        assert complement_of(ExactSet(model.set({0}))).set.atoms == {2}

    def test_countable_union_finite(self):
        model = FiniteModel((F(1, 4),) * 4)
        items = [model.set({0}), model.set({2}), model.set({3})]
        cert = JoinCertificate.stabilizing(3)
        u = countable_union_of(lambda i: ExactSet(items[i - 1] if i <= 3 else model.empty()), cert, model)
        assert u.set.atoms == {0, 2, 3}


def _constant_pairs(model):
    sets = list(model.all_sets())
    return [(embed(a), embed(b)) for a in sets for b in sets]


class TestIsometry:
    def test_exhaustive_three_atoms(self):
        model = FiniteModel((F(1, 4), F(1, 2), F(1, 4)))
        report = verify_isometry(_constant_pairs(model), F(1, 1000))
        assert len(report.checks) == 64 and report.passed
        for check, (x, y) in zip(report.checks, _constant_pairs(model)):
            truth = x.term(1).dist(y.term(1))
            assert check.values == (truth, truth) and check.radius == 0

    def test_noisy_sequences_with_null_atoms(self):
        rng = random.Random(5)
        model = FiniteModel((F(1, 4), 0, F(1, 2), 0, F(1, 4)))
        pairs = []
        for _ in range(100):
            a, b = rng.sample(all_subsets(5), 2)
            pairs.append((noisy(model, a, rng), noisy(model, b, rng)))
        report = verify_isometry(pairs)
        assert report.passed and all(c.radius == 0 for c in report.checks)

    def test_interval_pairs(self):
        svc = smith_volterra_cantor(check=False)
        half = embed(IntervalSet.interval(0, F(1, 2)))
        report = verify_isometry([(svc, EMPTY), (svc, half), (cantor(check=False), EMPTY)], F(1, 1000))
        assert report.passed


class TestHomomorphism:
    def test_finite_random_pairs(self):
        rng = random.Random(7)
        model = FiniteModel((F(1, 4), 0, F(1, 2), F(1, 4)))
        pairs = [(noisy(model, rng.choice(all_subsets(4)), rng), noisy(model, rng.choice(all_subsets(4)), rng))
                 for _ in range(1000)]
        report = verify_homomorphism(pairs)
        assert len(report.checks) == 3000 and report.passed
        assert all(c.values == (0,) and c.radius == 0 for c in report.checks)

    def test_interval_join(self):
        svc = smith_volterra_cantor(check=False)
        quarter = embed(IntervalSet.interval(0, F(1, 4)))
        report = verify_homomorphism([(svc, quarter)], [dyadic_sequence()], F(1, 1000))
        assert report.passed, report.failures()

    def test_countable_join_finite(self):
        model = FiniteModel((F(1, 2), 0, F(1, 4), F(1, 4)))
        items = [embed(model.set({1})), embed(model.set({0})), embed(model.set({3}))]
        report = verify_homomorphism([], [ElementSequence.finite(items, model)])
        assert report.passed and report.checks[0].values == (0,)

    def test_well_defined_on_classes(self):
        eps = F(1, 1000)
        for x, x2, y, y2 in equivalent_pairs(10):
            for lhs, rhs in [(join(x, y), join(x2, y2)), (meet(x, y), meet(x2, y2)), (compl(x), compl(x2))]:
                d = descriptor_distance(limit_set(lhs), limit_set(rhs), eps)
                assert d.value <= 3 * eps
                if eq_at(lhs, rhs, eps):
                    assert ae_equal(limit_set(lhs), limit_set(rhs), 3 * eps)


def _weight_grid(n):
    return itertools.product([F(0), F(1, 4), F(1, 2), F(1)], repeat=n)


class TestQuotient:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_surjective_exhaustive(self, n):
        for weights in _weight_grid(n):
            model = FiniteModel(weights)
            for atoms in all_subsets(n):
                canonical = {a for a in atoms if weights[a] > 0}
                assert limit_set(embed(model.set(atoms))).set.atoms == canonical

    def test_surjective_randomized(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(5, 10)
            weights = tuple(F(rng.randint(0, 3), 3) for _ in range(n))
            model = FiniteModel(weights)
            atoms = {a for a in range(n) if rng.random() < 0.5 and weights[a] > 0}
            assert limit_set(noisy(model, atoms, rng)).set.atoms == atoms

    @pytest.mark.parametrize("weights", [(F(1, 2), 0, F(1, 2)), (0, 0, 1), (F(1, 4),) * 4, (0, F(1, 3), 0, F(1, 3), F(1, 3))])
    def test_class_count(self, weights):
        model = FiniteModel(weights)
        classes = {frozenset(limit_set(embed(s)).set.atoms) for s in model.all_sets()}
        zeros = sum(1 for w in weights if w == 0)
        assert len(classes) == 2 ** (len(weights) - zeros)
        reps = [model.set(c) for c in classes]
        for a, b in itertools.combinations(reps, 2):
            assert a.dist(b) > 0
            assert a.dist(b) == weight_of(weights, set(a.atoms) ^ set(b.atoms))
