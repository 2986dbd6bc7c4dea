import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boosttrace.datasets import DataError
from boosttrace.infotheory import (
    EmpiricalJoint,
    classify_model,
    conditional_entropy,
    entropy,
    info_plane_point,
    lmc_gap,
    mutual_information,
)
from boosttrace.verify import brute_conditional_entropy, brute_entropy, brute_mutual_information

from conftest import random_joint_counts

# frozen with the independent one-line oracle: -(3/4)lg(3/4) - (1/4)lg(1/4)
H_3_1 = 0.8112781244591328
# frozen by brute-force Eq-4 summation over {(0,-1):1, (0,+1):1, (1,+1):2}
MI_EXAMPLE = 0.3112781244591328


class TestEntropy:
    def test_uniform_pair_is_one_bit(self):
        assert entropy({"a": 1, "b": 1}) == 1.0

    def test_degenerate_is_zero(self):
        assert entropy({"a": 4}) == 0.0

    def test_three_one_split(self):
        assert entropy({"a": 3, "b": 1}) == pytest.approx(H_3_1, abs=1e-15)
        assert entropy({"a": 3, "b": 1}) == pytest.approx(brute_entropy({"a": 3, "b": 1}), abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            entropy({})


class TestConditionalEntropy:
    def test_diagonal_is_exactly_zero(self):
        j = EmpiricalJoint({(0, 0): 3, (1, 1): 5})
        assert conditional_entropy(j) == 0.0

    def test_independent_uniform(self):
        j = EmpiricalJoint({(a, b): 2 for a in (0, 1) for b in (0, 1)})
        assert conditional_entropy(j) == pytest.approx(1.0, abs=1e-12)

    def test_half_bit_example(self):
        # H(Y|X) over {(x=0,y=-1):1, (x=0,y=+1):1, (x=1,y=+1):2}, A=y, B=x
        j = EmpiricalJoint({(-1, 0): 1, (1, 0): 1, (1, 1): 2})
        assert conditional_entropy(j) == pytest.approx(0.5, abs=1e-12)

    def test_decomposition_h_joint_minus_h_b(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            j = EmpiricalJoint(random_joint_counts(rng))
            h_joint = entropy(j.counts)
            h_b = entropy(j.marginal_b())
            assert conditional_entropy(j) == pytest.approx(h_joint - h_b, abs=1e-12)

    def test_phi_functional_decomposition(self):
        # H(A|B) = sum_b p(b) * sum_a phi(p(a|b)) with phi(z) = z log2(1/z),
        # phi(0) = 0; phi >= 0 with equality exactly at z in {0, 1}
        def phi(z):
            return 0.0 if z in (0.0, 1.0) else z * math.log2(1.0 / z)

        assert phi(0.0) == 0.0 and phi(1.0) == 0.0
        assert all(phi(z) > 0.0 for z in (0.01, 0.25, 0.5, 0.75, 0.99))

        rng = np.random.default_rng(6)
        for _ in range(50):
            j = EmpiricalJoint(random_joint_counts(rng))
            n = j.total
            marg_b = j.marginal_b()
            h = 0.0
            for b_key, c_b in marg_b.items():
                inner = sum(
                    phi(c / c_b) for (a, bb), c in j.counts.items() if bb == b_key
                )
                h += (c_b / n) * inner
            assert conditional_entropy(j) == pytest.approx(h, abs=1e-12)


class TestMutualInformation:
    def test_independent_product_counts(self):
        j = EmpiricalJoint({(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
        assert mutual_information(j) == 0.0

    def test_identity_coupling(self):
        j = EmpiricalJoint({(0, 0): 2, (1, 1): 2})
        assert mutual_information(j) == pytest.approx(1.0, abs=1e-15)

    def test_spec_example_value(self):
        j = EmpiricalJoint({(0, -1): 1, (0, 1): 1, (1, 1): 2})
        assert mutual_information(j) == pytest.approx(MI_EXAMPLE, abs=1e-12)
        # cross-check H(Y) - H(Y|X) = 0.811278... - 0.5
        assert mutual_information(j) == pytest.approx(H_3_1 - 0.5, abs=1e-12)

    def test_symmetry(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            j = EmpiricalJoint(random_joint_counts(rng))
            assert mutual_information(j) == pytest.approx(
                mutual_information(j.transpose()), abs=1e-12
            )

    def test_chain_rule_identity(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            j = EmpiricalJoint(random_joint_counts(rng))
            i = mutual_information(j)
            h_a = entropy(j.marginal_a())
            h_b = entropy(j.marginal_b())
            assert i == pytest.approx(h_a - conditional_entropy(j), abs=1e-12)
            assert i == pytest.approx(h_b - conditional_entropy(j.transpose()), abs=1e-12)

    def test_bounds(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            j = EmpiricalJoint(random_joint_counts(rng))
            i = mutual_information(j)
            h_a = entropy(j.marginal_a())
            h_b = entropy(j.marginal_b())
            assert -1e-12 <= i <= min(h_a, h_b) + 1e-12
            assert h_a <= math.log2(len(j.marginal_a())) + 1e-12

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_relabeling_invariance_exact(self, seed):
        # injective renaming of either axis leaves every quantity unchanged
        rng = np.random.default_rng(seed)
        j = EmpiricalJoint(random_joint_counts(rng))
        renamed = EmpiricalJoint({(a * 7 - 3, b): c for (a, b), c in j.counts.items()})
        assert mutual_information(renamed) == mutual_information(j)
        assert conditional_entropy(renamed) == conditional_entropy(j)
        assert entropy(renamed.marginal_a()) == entropy(j.marginal_a())

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_data_processing_under_coarsening(self, seed):
        rng = np.random.default_rng(seed)
        j = EmpiricalJoint(random_joint_counts(rng))
        groups = {a: int(rng.integers(0, 3)) for a in j.marginal_a()}
        coarse: dict = {}
        for (a, b), c in j.counts.items():
            cell = (groups[a], b)
            coarse[cell] = coarse.get(cell, 0) + c
        assert mutual_information(EmpiricalJoint(coarse)) <= mutual_information(j) + 1e-12

    def test_oracle_equivalence_on_random_tables(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            counts = random_joint_counts(rng)
            j = EmpiricalJoint(counts)
            pairs = [cell for cell, c in counts.items() for _ in range(c)]
            assert mutual_information(j) == pytest.approx(
                brute_mutual_information(pairs), abs=1e-10
            )
            assert conditional_entropy(j) == pytest.approx(
                brute_conditional_entropy(pairs), abs=1e-10
            )


class TestInfoPlanePoint:
    def test_constant_model_sits_at_origin(self):
        p = info_plane_point([5, 5, 5, 5], [0, 1, 2, 3], [1, 1, -1, -1])
        assert p.i_fx_norm == 0.0
        assert p.i_fy_norm == 0.0

    def test_lmc_point_half_one(self, four_distinct_keys):
        d = four_distinct_keys
        p = info_plane_point([9, 9, 2, 2], d.joint_keys, d.labels)
        assert (p.i_fx_norm, p.i_fy_norm) == (0.5, 1.0)
        assert p.h_x == 2.0
        assert p.h_y == 1.0
        assert p.i_xy == 1.0

    def test_deterministic_model_has_i_fx_equal_h_f(self):
        rng = np.random.default_rng(11)
        keys = rng.integers(0, 10, size=40).tolist()
        labels = np.where(rng.random(40) < 0.5, 1, -1).tolist()
        f = [k % 3 for k in keys]  # deterministic in the key
        p = info_plane_point(f, keys, labels)
        assert p.i_fx == p.h_f  # exact: H(F|X) sums log2(1) terms only

    def test_degenerate_axis_rejected(self):
        with pytest.raises(DataError):
            info_plane_point([0, 1], [0, 1], [1, 1])  # H(Y) = 0
        with pytest.raises(DataError):
            info_plane_point([0, 1], [3, 3], [1, -1])  # H(X) = 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            info_plane_point([0], [0, 1], [1, -1])


class TestClassifyAndGap:
    def test_lmc_point_classification(self, four_distinct_keys):
        d = four_distinct_keys
        p = info_plane_point([9, 9, 2, 2], d.joint_keys, d.labels)
        c = classify_model(p, tol=1e-9)
        assert c.as_tuple() == ("lossless", "maximally_compressed", "noiseless")
        assert lmc_gap(p) == 0.0

    def test_lossless_undercompressed(self, four_distinct_keys):
        d = four_distinct_keys
        p = info_plane_point([0, 1, 2, 3], d.joint_keys, d.labels)
        c = classify_model(p, tol=1e-9)
        assert c.as_tuple() == ("lossless", "undercompressed", "noiseless")
        assert p.h_f == 2.0
        assert lmc_gap(p) == pytest.approx(1.0, abs=1e-12)

    def test_lossy_undercompressed(self, four_distinct_keys):
        d = four_distinct_keys
        p = info_plane_point([0, 0, 0, 1], d.joint_keys, d.labels)
        c = classify_model(p, tol=1e-9)
        assert c.as_tuple() == ("lossy", "undercompressed", "noiseless")
        assert p.i_fy == pytest.approx(MI_EXAMPLE, abs=1e-12)

    def test_constant_model_gap_equals_i_xy(self, four_distinct_keys):
        d = four_distinct_keys
        p = info_plane_point([7, 7, 7, 7], d.joint_keys, d.labels)
        assert lmc_gap(p) == pytest.approx(1.0, abs=1e-12)  # both terms equal I(X;Y)

    def test_negative_tolerance_rejected(self, four_distinct_keys):
        d = four_distinct_keys
        p = info_plane_point([0, 1, 2, 3], d.joint_keys, d.labels)
        with pytest.raises(ValueError):
            classify_model(p, tol=-1.0)
