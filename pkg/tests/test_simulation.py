import math
from fractions import Fraction

import numpy as np
import pytest

from paircomp import (
    ExperimentReport,
    SimulatedExpert,
    control_effect_experiment,
    full_matrix_audit,
    generate_matrix,
    pair_sequence,
    quantize_ratio,
    saaty9,
    scale_accuracy_experiment,
    sensitivity_experiment,
    three_point,
    true_weights_linear,
)
from paircomp.errors import BadDimension, BadValue
from paircomp.simulation import _sample_truth

F = Fraction


class TestTrueWeights:
    def test_n3(self):
        assert np.allclose(true_weights_linear(3), [1 / 6, 2 / 6, 3 / 6])

    def test_n10_endpoints(self):
        k = true_weights_linear(10)
        assert k[0] == pytest.approx(1 / 55)
        assert k[-1] == pytest.approx(10 / 55)
        assert k.sum() == pytest.approx(1.0)

    def test_n2(self):
        assert np.allclose(true_weights_linear(2), [1 / 3, 2 / 3])

    def test_rejects_n1(self):
        with pytest.raises(BadDimension):
            true_weights_linear(1)


class TestQuantizeRatio:
    def test_exact_hit(self):
        assert quantize_ratio(1, saaty9()) == F(1)
        assert quantize_ratio(F(1, 3), three_point()) == F(1, 3)

    def test_log_nearest(self):
        assert quantize_ratio(2.9, three_point()) == F(3)
        assert quantize_ratio(2.9, saaty9()) == F(3)
        assert quantize_ratio(0.5, three_point()) == F(1, 3)
        assert quantize_ratio(5.1, three_point()) == F(3)  # ln 5.1 closer to ln 3
        assert quantize_ratio(5.3, three_point()) == F(9)

    def test_tie_breaks_toward_equality(self):
        assert quantize_ratio(math.sqrt(3), three_point()) == F(1)
        assert quantize_ratio(1 / math.sqrt(3), three_point()) == F(1)

    def test_rejects_nonpositive(self):
        with pytest.raises(BadValue):
            quantize_ratio(0, three_point())
        with pytest.raises(BadValue):
            quantize_ratio(-2.0, saaty9())


class TestGenerateMatrix:
    def test_slip_free_fixture(self):
        m = generate_matrix(SimulatedExpert(np.array([1 / 6, 2 / 6, 3 / 6]), three_point()))
        assert m.get(1, 2) == F(1, 3)
        assert m.get(1, 3) == F(1, 3)
        assert m.get(2, 3) == F(1)

    def test_uniform_truth_all_ones(self):
        m = generate_matrix(SimulatedExpert(np.full(5, 0.2), saaty9()))
        for i, j in pair_sequence(5):
            assert m.get(i, j) == F(1)

    def test_same_seed_same_matrix(self):
        truth = true_weights_linear(6)
        a = generate_matrix(SimulatedExpert(truth, three_point(), slip_prob=0.4, seed=9))
        b = generate_matrix(SimulatedExpert(truth, three_point(), slip_prob=0.4, seed=9))
        assert a == b

    def test_full_slip_never_keeps_intended(self):
        truth = true_weights_linear(5)
        scale = three_point()
        m = generate_matrix(SimulatedExpert(truth, scale, slip_prob=0.999999, seed=1))
        for i, j in pair_sequence(5):
            intended = quantize_ratio(truth[i - 1] / truth[j - 1], scale)
            assert m.get(i, j) != intended
            assert m.get(i, j) in scale.values

    def test_quantized_equality_is_a_semiorder(self):
        # truth values (2,3,4): 2~3 and 3~4 survive quantization but 2<4
        # does not, so the slip-free matrix is ordinally intransitive
        m = generate_matrix(SimulatedExpert(np.array([2, 3, 4]) / 9.0, three_point()))
        assert len(full_matrix_audit(m)) == 1


class TestSampleTruth:
    def test_values_are_small_integer_multiples(self):
        rng = np.random.default_rng(0)
        t = _sample_truth(rng, 12, distinct=False)
        assert t.sum() == pytest.approx(1.0)
        assert np.all(t > 0)
        # t = ints / sum(ints) with ints in 1..10, so scaling by the right
        # minimum recovers integers
        hits = [
            m for m in range(1, 11)
            if np.allclose(t / t.min() * m, np.round(t / t.min() * m), atol=1e-9)
        ]
        assert hits

    def test_never_all_equal(self):
        for seed in range(50):
            t = _sample_truth(np.random.default_rng(seed), 3, distinct=False)
            assert not np.all(t == t[0])

    def test_distinct_mode(self):
        t = _sample_truth(np.random.default_rng(4), 10, distinct=True)
        assert len(np.unique(t)) == 10

    def test_distinct_mode_capped_at_10(self):
        with pytest.raises(BadDimension):
            _sample_truth(np.random.default_rng(0), 11, distinct=True)


class TestExperimentReport:
    def test_csv_shape_and_float_round_trip(self):
        rep = ExperimentReport(
            kind="x", config={}, columns=["a", "b", "c"],
            rows=[(1, F(1, 3), 0.1 + 0.2)],
        )
        text = rep.to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "a,b,c"
        cells = lines[1].split(",")
        assert cells[1] == "1/3"
        assert float(cells[2]) == 0.1 + 0.2  # repr round-trips exactly

    def test_ends_with_newline(self):
        rep = ExperimentReport(kind="x", config={}, columns=["a"])
        assert rep.to_csv() == "a\n"


class TestScaleAccuracy:
    def test_report_layout(self):
        rep = scale_accuracy_experiment(4, 3, [three_point(), saaty9()], seed=1)
        assert rep.kind == "scale_accuracy"
        assert len(rep.rows) == 3 * 2
        assert set(rep.summary) == {"three_point(3,9)", "saaty9"}
        for stats in rep.summary.values():
            assert stats["mean_mae_eigen"] >= 0.0

    def test_uniform_truth_recovers_exactly(self):
        rep = scale_accuracy_experiment(
            5, 2, [three_point()], seed=0, truth_sampler=lambda rng: np.full(5, 0.2)
        )
        assert rep.summary["three_point(3,9)"]["mean_mae_eigen"] == pytest.approx(0.0, abs=1e-15)
        assert rep.summary["three_point(3,9)"]["mean_cr"] == pytest.approx(0.0, abs=1e-12)

    def test_deterministic_bytes(self):
        a = scale_accuracy_experiment(6, 4, [three_point(2, 5)], seed=7)
        b = scale_accuracy_experiment(6, 4, [three_point(2, 5)], seed=7)
        assert a.to_csv() == b.to_csv()
        assert a.summary == b.summary

    def test_mae_invariant_under_relabeling(self):
        base = np.array([1, 2, 2, 5, 7, 9]) / 26.0
        perm = np.array([3, 0, 4, 1, 5, 2])
        rep_a = scale_accuracy_experiment(
            6, 1, [three_point()], seed=0, truth_sampler=lambda rng: base
        )
        rep_b = scale_accuracy_experiment(
            6, 1, [three_point()], seed=0, truth_sampler=lambda rng: base[perm]
        )
        key = "three_point(3,9)"
        assert rep_a.summary[key]["mean_mae_eigen"] == pytest.approx(
            rep_b.summary[key]["mean_mae_eigen"], abs=1e-9
        )
        assert rep_a.summary[key]["mean_mae_approx"] == pytest.approx(
            rep_b.summary[key]["mean_mae_approx"], abs=1e-12
        )

    def test_rejects_tiny_n(self):
        with pytest.raises(BadDimension):
            scale_accuracy_experiment(1, 1, [saaty9()], seed=0)


class TestSensitivity:
    def test_report_layout_and_flip_count(self):
        rep = sensitivity_experiment(4, trials=2, seed=3)
        assert len(rep.rows) == 2 * 6
        assert rep.summary["n_flips"] == 12
        assert rep.summary["reference_rel_dci_pct"] == 7.0
        assert rep.summary["reference_rel_dw_pct"] == 30.0

    def test_equality_flips_are_noops(self):
        seed, h = 8, 4
        rep = sensitivity_experiment(h, trials=1, seed=seed)
        rng = np.random.default_rng([seed, 0])
        base = generate_matrix(SimulatedExpert(_sample_truth(rng, h, False), three_point()))
        saw_real_flip = False
        for _, i, j, ci_base, ci_f, rel_dci, max_rel_dw, ratio in rep.rows:
            if base.get(i, j) == 1:
                assert ci_f == ci_base
                assert rel_dci == 0.0 and max_rel_dw == 0.0 and ratio == 0.0
            else:
                saw_real_flip = True
                assert max_rel_dw > 0.0
        assert saw_real_flip

    def test_deterministic(self):
        a = sensitivity_experiment(5, trials=3, seed=11)
        b = sensitivity_experiment(5, trials=3, seed=11)
        assert a.to_csv() == b.to_csv()

    @pytest.mark.parametrize("h", [2, 65])
    def test_dimension_bounds(self, h):
        with pytest.raises(BadDimension):
            sensitivity_experiment(h, trials=1, seed=0)


class TestControlEffect:
    def test_arms_identical_when_truth_quantizes_transitively(self):
        # h = 3 linear truth quantizes to an ordinally clean matrix, so with
        # no slips the engine never intervenes and both arms agree exactly
        rep = control_effect_experiment(3, experts=2, slip_prob=0.0, seed=0)
        by_arm = {(r[0], r[1]): r for r in rep.rows}
        for e in range(2):
            off, on = by_arm[(e, "off")], by_arm[(e, "on")]
            assert off[2:6] == on[2:6]  # identical maes, lambda, cr
            assert on[6] == 0  # no rejected judgments
        assert rep.summary["off"]["mean_cr"] == rep.summary["on"]["mean_cr"]

    def test_control_repairs_semiorder_intransitivity(self):
        # at h = 28 even slip-free truths quantize intransitively; the on
        # arm must end ordinally clean while the off arm does not
        rep = control_effect_experiment(28, experts=1, slip_prob=0.0, seed=0)
        rows = {r[1]: r for r in rep.rows}
        assert rows["off"][7] > 0
        assert rows["on"][7] == 0
        assert rep.summary["on"]["max_audit_conflicts"] == 0

    def test_slips_reduce_consistency_without_control(self):
        rep = control_effect_experiment(10, experts=3, slip_prob=0.15, seed=2)
        assert rep.summary["on"]["mean_cr"] < rep.summary["off"]["mean_cr"]
        assert rep.summary["on"]["max_audit_conflicts"] == 0
        assert rep.summary["reference_cr_low"] == 0.02
        assert rep.summary["reference_cr_high"] == 0.05

    def test_half_widths_reported_for_multiple_experts(self):
        rep = control_effect_experiment(6, experts=3, slip_prob=0.1, seed=5)
        assert rep.summary["off"]["mean_half_width"] is not None
        assert rep.summary["on"]["mean_half_width"] is not None
        single = control_effect_experiment(6, experts=1, slip_prob=0.1, seed=5)
        assert single.summary["off"]["mean_half_width"] is None

    def test_deterministic_bytes(self):
        a = control_effect_experiment(8, experts=2, slip_prob=0.2, seed=13)
        b = control_effect_experiment(8, experts=2, slip_prob=0.2, seed=13)
        assert a.to_csv() == b.to_csv()

    def test_argument_validation(self):
        with pytest.raises(BadDimension):
            control_effect_experiment(2, experts=1, slip_prob=0.1, seed=0)
        with pytest.raises(BadValue):
            control_effect_experiment(5, experts=0, slip_prob=0.1, seed=0)
        with pytest.raises(BadValue):
            control_effect_experiment(5, experts=1, slip_prob=1.0, seed=0)
