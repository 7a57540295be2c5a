import math

import numpy as np
import pytest

from kpclust.errors import (
    EmptySampleError,
    InvalidBurnInError,
    InvalidMeasureError,
    SpaceMismatchError,
)
from kpclust.measures import (
    DiscreteMeasure,
    cluster_cost,
    dirac,
    empirical,
    forgetful_empirical,
    kl_divergence,
    mixture,
    pth_moment,
    support,
    tv_distance,
    uniform,
)
from kpclust.metric import EuclideanSpace
from kpclust.sets import CenterSet


class TestEmpirical:
    def test_single(self, line):
        assert empirical(line, [0]).as_dict() == {(0.0,): 1.0}

    def test_two_atoms(self, three):
        mu = empirical(three, ["-1", "1", "1", "-1"])
        assert mu.as_dict() == {0: 0.5, 2: 0.5}

    def test_counting(self, line):
        mu = empirical(line, [0, 0, 1])
        assert mu.weight_of(0) == pytest.approx(2 / 3)
        assert mu.weight_of(1) == pytest.approx(1 / 3)

    def test_empty(self, line):
        with pytest.raises(EmptySampleError):
            empirical(line, [])


class TestForgetful:
    def test_no_burn_in(self, line):
        s = [0, 1, 1, 5]
        assert forgetful_empirical(line, s, 0).as_dict() == empirical(line, s).as_dict()

    def test_drops_prefix(self, three):
        mu = forgetful_empirical(three, ["0", "0", "-1", "1"], 2)
        assert mu.as_dict() == {0: 0.5, 2: 0.5}

    def test_counting(self, line):
        assert forgetful_empirical(line, [0, 1, 1], 1).as_dict() == {(1.0,): 1.0}

    @pytest.mark.parametrize("f", [3, 4, -1])
    def test_bad_burn_in(self, line, f):
        with pytest.raises(InvalidBurnInError):
            forgetful_empirical(line, [0, 1, 1], f)


class TestDiscreteMeasure:
    def test_merges_duplicates(self, line):
        mu = DiscreteMeasure.of(line, [0, 1, 0], [0.25, 0.5, 0.25])
        assert mu.as_dict() == {(0.0,): 0.5, (1.0,): 0.5}

    def test_weights_must_sum_to_one(self, line):
        with pytest.raises(InvalidMeasureError):
            DiscreteMeasure.of(line, [0, 1], [0.5, 0.6])

    def test_negative_weight(self, line):
        with pytest.raises(InvalidMeasureError):
            DiscreteMeasure.of(line, [0, 1], [1.5, -0.5])

    def test_zero_weights_dropped(self, line):
        mu = DiscreteMeasure.of(line, [0, 1], [1.0, 0.0])
        assert len(mu) == 1

    def test_mixture(self, line, four):
        mu = mixture(four, dirac(line, 100), 0.2)
        assert mu.weight_of(100) == pytest.approx(0.2)
        assert mu.weight_of(0) == pytest.approx(0.2)


class TestSupport:
    def test_dirac(self, line):
        assert support(dirac(line, 0)).points == ((0.0,),)

    def test_two(self, three):
        assert support(empirical(three, ["1", "-1"])).points == (0, 2)

    def test_merged(self, line):
        mu = DiscreteMeasure.of(line, [2, 2, 3], [0.2, 0.3, 0.5])
        assert len(support(mu)) == 2


class TestClusterCost:
    @pytest.mark.parametrize("p", [1, 1.5, 2, 4])
    def test_self(self, line, p):
        assert cluster_cost(dirac(line, 3), CenterSet.of(line, [3]), p) == 0.0

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_two_point(self, three, p):
        nu = empirical(three, ["-1", "1"])
        assert cluster_cost(nu, CenterSet.of(three, ["1"]), p) == pytest.approx(2 ** (p - 1))

    def test_four_point(self, line, four):
        assert cluster_cost(four, CenterSet.of(line, [0.5, 10.5]), 2) == pytest.approx(0.25, rel=1e-15)

    def test_space_mismatch(self, line, four):
        with pytest.raises(SpaceMismatchError):
            cluster_cost(four, CenterSet.of(EuclideanSpace(2), [(0, 0)]), 2)


class TestMoment:
    def test_dirac(self, line):
        assert pth_moment(dirac(line, 0), 0, 2) == 0.0

    def test_two_point(self, three):
        assert pth_moment(empirical(three, ["-1", "1"]), "0", 1) == 1.0

    def test_four(self, four):
        assert pth_moment(four, 0, 1) == pytest.approx(5.5)


class TestDivergences:
    def test_kl_self(self, four):
        assert kl_divergence(four, four) == 0.0

    def test_kl_log2(self, line):
        assert kl_divergence(dirac(line, 0), uniform(line, [0, 1])) == pytest.approx(math.log(2))

    def test_kl_not_absolutely_continuous(self, line):
        assert kl_divergence(dirac(line, 1), dirac(line, 0)) == math.inf

    def test_tv(self, line, four):
        assert tv_distance(four, four) == 0.0
        assert tv_distance(dirac(line, 0), dirac(line, 1)) == 1.0
        assert tv_distance(uniform(line, [0, 1]), dirac(line, 0)) == pytest.approx(0.5)

    def test_space_mismatch(self, line, three):
        with pytest.raises(SpaceMismatchError):
            tv_distance(dirac(line, 0), dirac(three, "0"))
