import numpy as np
import pytest

from boosttrace.verify import (
    RelabelingWitness,
    TABLE1_SCENARIOS,
    brute_mutual_information,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_table1,
    check_theorem1,
    empirical_risk_minimizer,
    lemma1_suite,
    lemma2_suite,
    lemma3_suite,
    random_noisy_model_pairs,
    table1_suite,
    theorem1_suite,
)

from conftest import make_discretized


@pytest.fixture
def abc_noisy():
    """Keys a:(+,+), b:(+,-), c:(-,-) with two rows each."""
    return make_discretized([[0]] * 2 + [[1]] * 2 + [[2]] * 2, [1, 1, 1, -1, -1, -1], b=3)


class TestEmpiricalRiskMinimizer:
    def test_majority_with_tie_to_positive(self, abc_noisy):
        label_map, risk = empirical_risk_minimizer(abc_noisy)
        keys = abc_noisy.joint_keys
        assert label_map[keys[0]] == 1
        assert label_map[keys[2]] == 1  # tie on key b predicts +1
        assert label_map[keys[4]] == -1
        assert risk == pytest.approx(1 / 6)

    def test_noiseless_risk_zero(self, four_distinct_keys):
        _, risk = empirical_risk_minimizer(four_distinct_keys)
        assert risk == 0.0

    def test_single_row(self):
        d = make_discretized([[0]], [-1], b=2)
        label_map, risk = empirical_risk_minimizer(d)
        assert risk == 0.0
        assert label_map[d.joint_keys[0]] == -1


class TestLemma1:
    def test_explicit_conflict(self):
        d = make_discretized([[1], [1]], [1, -1], b=2)
        report = check_lemma1([d])
        assert report.passed
        assert report.details[0]["scan"] is False
        assert report.details[0]["erm_risk"] > 0.0

    def test_all_distinct_rows(self, four_distinct_keys):
        report = check_lemma1([four_distinct_keys])
        assert report.passed
        assert report.details[0]["scan"] is True
        assert report.details[0]["h_y_given_x"] == 0.0

    def test_random_suite(self):
        report = lemma1_suite(200, seed=11)
        assert report.passed
        assert len(report.details) == 200


class TestLemma2:
    def test_perfect_scorer(self, four_distinct_keys):
        lossless, witness = check_lemma2([1.0, 1.0, -1.0, -1.0], four_distinct_keys)
        assert lossless
        assert witness.achieved_error == 0.0

    def test_collapsing_scorer_is_lossy(self, four_distinct_keys):
        lossless, witness = check_lemma2([0.5, 0.5, 0.5, -1.0], four_distinct_keys)
        assert not lossless
        assert witness is None

    def test_four_row_fixture_with_distinct_scores(self, four_distinct_keys):
        lossless, witness = check_lemma2([0.9, 0.8, -0.7, -0.9], four_distinct_keys)
        assert lossless
        assert witness.achieved_error == 0.0
        # the witness realizes g(s) = (2 P(Y=1|F=s) - 1)(s+2)/3
        assert witness.mapping[0.9] == pytest.approx((0.9 + 2) / 3)
        assert witness.mapping[-0.9] == pytest.approx(-(-0.9 + 2) / 3)
        values = list(witness.mapping.values())
        assert len(set(values)) == len(values)

    def test_noisy_dataset_rejected(self, abc_noisy):
        with pytest.raises(ValueError):
            check_lemma2([1.0] * 6, abc_noisy)

    def test_random_suite(self):
        report = lemma2_suite(80, seed=5)
        assert report.passed


class TestLemma3:
    def test_mixed_preimage_not_constant(self, abc_noisy):
        # f(a) = f(c) = 0.5, f(b) = -0.5: preimage {a, c} has P(Y=1|x) in {1, 0}
        scores = [0.5, 0.5, -0.5, -0.5, 0.5, 0.5]
        report = check_lemma3(scores, abc_noisy)
        assert report.passed
        detail = report.details[0]
        assert detail["constant_conditional"] is False
        assert detail["i_fy"] < detail["i_xy"] - 1e-9

    def test_injective_scorer_is_lossless(self, abc_noisy):
        scores = [1.0, 1.0, 0.0, 0.0, -1.0, -1.0]
        report = check_lemma3(scores, abc_noisy)
        assert report.passed
        detail = report.details[0]
        assert detail["constant_conditional"] is True
        assert detail["i_fy"] == pytest.approx(detail["i_xy"], abs=1e-10)

    def test_margin_maximizer_style_model_is_not_lossless(self, abc_noisy):
        # majority-vote +-1 scores collapse a pure and a mixed key together
        scores = [1.0, 1.0, 1.0, 1.0, -1.0, -1.0]
        report = check_lemma3(scores, abc_noisy)
        assert report.passed
        assert report.details[0]["constant_conditional"] is False

    def test_scores_must_be_per_key(self, abc_noisy):
        with pytest.raises(ValueError):
            check_lemma3([1.0, 0.9, 0.0, 0.0, -1.0, -1.0], abc_noisy)

    def test_random_suite(self):
        report = lemma3_suite(200, seed=21)
        assert report.passed
        assert len(report.details) == 200


class TestTheorem1:
    def test_two_value_margin_maximizer_is_lmc(self, four_distinct_keys):
        report = check_theorem1([0.7, 0.7, -0.2, -0.2], four_distinct_keys)
        assert report.passed
        detail = report.details[0]
        assert detail["lmc_gap"] <= 1e-10
        assert detail["two_value_witness"] is True
        assert detail["witness"].achieved_error == 0.0

    def test_lossless_undercompressed_rejected_by_both_sides(self, four_distinct_keys):
        report = check_theorem1([0.9, 0.6, -0.6, -0.9], four_distinct_keys)
        assert report.passed
        detail = report.details[0]
        assert detail["lmc_gap"] > 1e-9
        assert detail["two_value_witness"] is False

    def test_lossy_collapse_rejected_by_both_sides(self, four_distinct_keys):
        report = check_theorem1([0.5, 0.5, 0.5, -0.5], four_distinct_keys)
        assert report.passed
        detail = report.details[0]
        assert detail["lmc_gap"] > 1e-9
        assert detail["two_value_witness"] is False

    def test_noisy_dataset_rejected(self, abc_noisy):
        with pytest.raises(ValueError):
            check_theorem1([1.0] * 6, abc_noisy)

    def test_random_suite(self):
        report = theorem1_suite(80, seed=31)
        assert report.passed
        assert len(report.details) == 80


class TestTable1:
    @pytest.mark.parametrize("scenario", TABLE1_SCENARIOS)
    def test_every_row_chain_holds(self, scenario):
        report = check_table1(scenario)
        assert report.passed, report.to_text()

    def test_all_eight_scenarios_present(self):
        assert len(TABLE1_SCENARIOS) == 8
        report = table1_suite()
        assert report.passed

    def test_unknown_scenario_rejected(self):
        with pytest.raises(ValueError):
            check_table1(("noisy", "lossless", "overcompressed"))

    def test_hard_row_equality_is_tight(self):
        report = check_table1(("noisy", "lossy", "maximally_compressed"))
        eq = next(d for d in report.details if d["relation"] == "i_xy = i_fx")
        assert abs(eq["i_xy"] - eq["i_fx"]) <= 1e-12


class TestNoisyVersusNoiselessSummary:
    """The two columns of the noisy-vs-noiseless summary table, exercised on
    random instances: zero-error models on noiseless data are lossless, and
    margin maximizers on (non-degenerate) noisy data never are."""

    def test_zero_error_models_on_noiseless_data_are_lossless(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            k = int(rng.integers(2, 7))
            bins = rng.integers(0, 4, size=(k, 2))
            labels = rng.choice([-1, 1], size=k)
            d = make_discretized(bins, labels, b=4)
            if not (labels == 1).any() or not (labels == -1).any():
                continue
            from boosttrace.datasets import is_noiseless

            if not is_noiseless(d):
                continue
            label_map, risk = empirical_risk_minimizer(d)
            assert risk == 0.0
            scores = [float(label_map[key]) for key in d.joint_keys]
            lossless, _ = check_lemma2(scores, d)
            assert lossless

    def test_margin_maximizer_on_noisy_data_is_not_lossless(self):
        checked = 0
        for scores, d in random_noisy_model_pairs(300, seed=51):
            per_key = {}
            for key, y in zip(d.joint_keys, d.labels.tolist()):
                p, t = per_key.get(key, (0, 0))
                per_key[key] = (p + (y == 1), t + 1)
            label_map, _ = empirical_risk_minimizer(d)
            # needs two keys with the same majority sign but different P(Y=1|x)
            ratios = {}
            for key, (p, t) in per_key.items():
                ratios.setdefault(label_map[key], set()).add(p / t)
            if not any(len(v) > 1 for v in ratios.values()):
                continue
            maximizer = [float(label_map[key]) for key in d.joint_keys]
            i_fy = brute_mutual_information(list(zip(maximizer, d.labels.tolist())))
            i_xy = brute_mutual_information(list(zip(d.joint_keys, d.labels.tolist())))
            assert i_fy < i_xy - 1e-12
            checked += 1
        assert checked > 20


class TestWitnessAndReports:
    def test_witness_mapping_must_be_injective(self):
        with pytest.raises(ValueError):
            RelabelingWitness({0.1: 1.0, 0.2: 1.0}, 0.0)

    def test_report_text_mentions_failures(self):
        d_bad = make_discretized([[0], [0]], [1, -1], b=2)
        report = check_lemma3([1.0, 1.0], d_bad)
        text = report.to_text()
        assert "lemma3" in text
        assert ("all instances agree" in text) == report.passed
