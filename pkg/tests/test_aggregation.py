import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from paircomp import StudyAggregate, aggregate, experts_needed, half_width
from paircomp.errors import BadValue, DimensionMismatch, MissingVariance, Unreachable

from conftest import sample_std, t_ppf_oracle


class TestHalfWidth:
    def test_t_quantile_backend_matches_oracle(self):
        for level, k in ((0.95, 3), (0.95, 10), (0.99, 5), (0.8, 2)):
            p = (1 + level) / 2
            assert float(stats.t.ppf(p, k - 1)) == pytest.approx(
                t_ppf_oracle(p, k - 1), abs=1e-8
            )

    def test_hand_computed_example(self):
        # s = 0.1, k = 3, level 0.95: t(0.975, 2) = 4.3027 -> 0.2484
        assert half_width(0.1, 3, 0.95) == pytest.approx(0.2484137711750181, abs=1e-9)
        assert half_width(0.1, 3, 0.95) == pytest.approx(
            t_ppf_oracle(0.975, 2) * 0.1 / math.sqrt(3), abs=1e-8
        )

    def test_scales_linearly_in_s(self):
        assert half_width(0.2, 5, 0.95) == pytest.approx(2 * half_width(0.1, 5, 0.95))

    @settings(deadline=None, max_examples=30)
    @given(st.integers(2, 50))
    def test_property_nonincreasing_in_k(self, k):
        assert half_width(0.3, k + 1, 0.95) <= half_width(0.3, k, 0.95)


class TestAggregate:
    def test_spec_example_k3(self):
        vectors = [[0.5, 0.5], [0.6, 0.4], [0.7, 0.3]]
        agg = aggregate(vectors, [0.0, 0.0, 0.0], level=0.95)
        assert agg.k == 3
        assert np.allclose(agg.mean_w, [0.6, 0.4])
        assert agg.mean_w.sum() == pytest.approx(1.0, abs=1e-12)
        expected = 4.302652729749203 * sample_std([0.5, 0.6, 0.7]) / math.sqrt(3)
        assert agg.half_width[0] == pytest.approx(expected, abs=1e-9)
        assert agg.half_width[0] == pytest.approx(0.2484137711750181, abs=1e-3)
        assert agg.half_width[1] == pytest.approx(agg.half_width[0], abs=1e-12)

    def test_identical_vectors_zero_width(self):
        agg = aggregate([[0.2, 0.8]] * 3, [0.0] * 3)
        assert np.allclose(agg.mean_w, [0.2, 0.8])
        assert np.allclose(agg.half_width, 0.0)

    def test_single_expert_warns_and_omits_width(self):
        with pytest.warns(MissingVariance):
            agg = aggregate([[0.3, 0.7]], [0.05])
        assert agg.k == 1
        assert agg.half_width is None
        assert np.allclose(agg.mean_w, [0.3, 0.7])

    def test_mean_renormalized(self):
        # inputs needn't sum exactly to 1; the aggregate must
        agg = aggregate([[0.5, 0.5001], [0.5001, 0.5]], [0.0, 0.0])
        assert agg.mean_w.sum() == pytest.approx(1.0, abs=1e-15)

    def test_per_expert_data_preserved(self):
        agg = aggregate([[0.4, 0.6], [0.5, 0.5]], [0.01, 0.02])
        assert isinstance(agg, StudyAggregate)
        assert agg.per_expert_cr == (0.01, 0.02)
        assert len(agg.per_expert) == 2

    @pytest.mark.parametrize("level", [0.0, 1.0, -0.1, 1.5])
    def test_level_must_be_interior(self, level):
        with pytest.raises(BadValue):
            aggregate([[0.5, 0.5]], [0.0], level=level)

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            aggregate([], [])
        with pytest.raises(DimensionMismatch):
            aggregate([[0.5, 0.5], [0.3, 0.3, 0.4]], [0.0, 0.0])
        with pytest.raises(DimensionMismatch):
            aggregate([[0.5, 0.5]], [0.0, 0.0])

    def test_expert_order_never_matters(self):
        vectors = [[0.1, 0.9], [0.4, 0.6], [0.25, 0.75]]
        crs = [0.0, 0.01, 0.02]
        a = aggregate(vectors, crs)
        b = aggregate(vectors[::-1], crs[::-1])
        assert np.allclose(a.mean_w, b.mean_w)
        assert np.allclose(a.half_width, b.half_width)


class TestExpertsNeeded:
    def test_spec_example(self):
        assert experts_needed(0.1, 0.25, 0.95) == 3

    def test_tiny_spread_needs_minimum_panel(self):
        assert experts_needed(0.0001, 0.05, 0.95) == 2

    def test_cap_exceeded(self):
        with pytest.raises(Unreachable):
            experts_needed(10.0, 1e-9, 0.95)

    def test_result_is_minimal(self):
        k = experts_needed(0.1, 0.25, 0.95)
        assert half_width(0.1, k, 0.95) <= 0.25
        assert half_width(0.1, k - 1, 0.95) > 0.25

    @pytest.mark.parametrize("s,target,level", [(0, 0.1, 0.95), (-1, 0.1, 0.95),
                                                (0.1, 0, 0.95), (0.1, 0.1, 0)])
    def test_argument_validation(self, s, target, level):
        with pytest.raises(BadValue):
            experts_needed(s, target, level)
