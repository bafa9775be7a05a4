import math

import numpy as np
import pytest

from rankqda import (
    SingularMatrixError,
    TrainingError,
    discriminant,
    estimate_priors,
    estimate_projected_covariance,
    fit_rqda,
    inverse_spd,
    log_det_spd,
    model_from_parameters,
    rqda_classify,
)

from oracles import adjugate_inverse, cofactor_det


class TestEstimatePriors:
    def test_balanced(self):
        assert estimate_priors([0, 1, 0, 1]) == (0.5, 0.5)

    def test_unbalanced(self):
        assert estimate_priors([1, 1, 1, 0]) == (0.25, 0.75)

    def test_single_class_rejected(self):
        with pytest.raises(TrainingError, match="degenerate"):
            estimate_priors([1, 1, 1])

    def test_non_binary_rejected(self):
        with pytest.raises(ValueError, match="0/1"):
            estimate_priors([0, 1, 2])


class TestEstimateProjectedCovariance:
    def test_single_outer_product(self):
        Z = np.array([[1.0, 2.0]])
        with pytest.warns(UserWarning):
            M = estimate_projected_covariance(Z, [0], 0, ridge=0.0)
        np.testing.assert_array_equal(M, [[1.0, 2.0], [2.0, 4.0]])

    def test_average_of_orthogonal_rows(self):
        Z = np.array([[1.0, 0.0], [0.0, 1.0]])
        with pytest.warns(UserWarning):
            M = estimate_projected_covariance(Z, [1, 1], 1, ridge=0.0)
        np.testing.assert_array_equal(M, 0.5 * np.eye(2))

    def test_ridge_adds_exactly_to_diagonal(self):
        rng = np.random.default_rng(2)
        Z = rng.standard_normal((12, 3))
        labels = np.array([0, 1] * 6)
        plain = estimate_projected_covariance(Z, labels, 0, ridge=0.0)
        ridged = estimate_projected_covariance(Z, labels, 0, ridge=0.1)
        np.testing.assert_array_equal(ridged, plain + 0.1 * np.eye(3))

    def test_exactly_symmetric(self):
        rng = np.random.default_rng(3)
        Z = rng.standard_normal((40, 4))
        labels = rng.integers(0, 2, size=40)
        M = estimate_projected_covariance(Z, labels, 1, ridge=0.0)
        np.testing.assert_array_equal(M, M.T)

    def test_unridged_is_psd(self):
        rng = np.random.default_rng(4)
        Z = rng.standard_normal((15, 3))
        labels = rng.integers(0, 2, size=15)
        M = estimate_projected_covariance(Z, labels, 0, ridge=0.0)
        for _ in range(100):
            s = rng.standard_normal(3)
            assert s @ M @ s >= -1e-12

    def test_no_samples_of_class(self):
        with pytest.raises(TrainingError, match="class 1"):
            estimate_projected_covariance(np.ones((2, 1)), [0, 0], 1)


class TestLogDetAndInverse:
    def test_identity(self):
        assert log_det_spd(np.eye(4)) == 0.0
        np.testing.assert_array_equal(inverse_spd(np.eye(3)), np.eye(3))

    def test_scaled_identity(self):
        assert log_det_spd(2.0 * np.eye(3)) == pytest.approx(3 * math.log(2), abs=1e-12)

    def test_diagonal_inverse(self):
        np.testing.assert_allclose(
            inverse_spd(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]), rtol=0, atol=1e-15
        )

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_against_brute_force(self, d):
        rng = np.random.default_rng(100 + d)
        for _ in range(50):
            G = rng.standard_normal((d, d))
            M = G @ G.T + 0.1 * np.eye(d)
            oracle_det = cofactor_det(M)
            assert log_det_spd(M) == pytest.approx(
                math.log(oracle_det), rel=1e-10, abs=1e-10
            )
            oracle_inv = adjugate_inverse(M)
            np.testing.assert_allclose(inverse_spd(M), oracle_inv, rtol=1e-9, atol=1e-9)

    def test_inverse_is_symmetric_and_accurate(self):
        rng = np.random.default_rng(9)
        G = rng.standard_normal((5, 5))
        M = G @ G.T + 0.5 * np.eye(5)
        inv = inverse_spd(M)
        np.testing.assert_array_equal(inv, inv.T)
        assert np.max(np.abs(M @ inv - np.eye(5))) <= 1e-8

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            log_det_spd(np.zeros((2, 2)))
        with pytest.raises(SingularMatrixError):
            inverse_spd(np.array([[1.0, 1.0], [1.0, 1.0]]))


def _brute_force_discriminant_1d(s, prior0, prior1, var0, var1):
    # scalar transcription of the quadratic decision score
    return (
        math.log(prior1 / prior0)
        - 0.5 * math.log(var1 / var0)
        - 0.5 * s * s * (1.0 / var1 - 1.0 / var0)
    )


class TestDiscriminant:
    def test_identical_classes_give_zero(self):
        model = model_from_parameters(0.5, np.eye(3), np.eye(3))
        rng = np.random.default_rng(5)
        for _ in range(10):
            assert discriminant(rng.standard_normal(3), model) == 0.0

    def test_prior_term_only(self):
        model = model_from_parameters(0.8, np.eye(2), np.eye(2))
        s = np.array([0.3, -1.2])
        assert discriminant(s, model) == pytest.approx(math.log(4.0), abs=1e-12)

    def test_one_dimensional_hand_value(self):
        model = model_from_parameters(0.5, [[1.0]], [[4.0]])
        value = discriminant(np.array([2.0]), model)
        assert value == pytest.approx(0.8068528194400547, abs=1e-12)
        assert value == pytest.approx(
            _brute_force_discriminant_1d(2.0, 0.5, 0.5, 1.0, 4.0), abs=1e-12
        )

    def test_batch_matches_single(self):
        rng = np.random.default_rng(6)
        G = rng.standard_normal((3, 3))
        model = model_from_parameters(0.3, G @ G.T + np.eye(3), np.eye(3))
        S = rng.standard_normal((20, 3))
        batch = discriminant(S, model)
        for i in range(20):
            assert batch[i] == pytest.approx(discriminant(S[i], model), abs=1e-12)

    def test_dimension_mismatch(self):
        model = model_from_parameters(0.5, np.eye(2), np.eye(2))
        with pytest.raises(ValueError, match="d=2"):
            discriminant(np.ones(3), model)


class TestFitRqda:
    @staticmethod
    def _toy():
        # class second moments both exactly I after the 1/n_r average
        root2 = math.sqrt(2.0)
        Z = np.array([
            [root2, 0.0], [-root2, 0.0], [0.0, root2], [0.0, -root2],
            [root2, 0.0], [-root2, 0.0], [0.0, root2], [0.0, -root2],
        ])
        labels = np.array([0, 0, 0, 0, 1, 1, 1, 1])
        return Z, labels

    def test_identical_second_moments_reduce_to_prior_term(self):
        Z, labels = self._toy()
        model = fit_rqda(Z, labels, ridge=0.0)
        rng = np.random.default_rng(7)
        for _ in range(5):
            s = rng.standard_normal(2)
            assert discriminant(s, model) == pytest.approx(0.0, abs=1e-14)

    def test_label_swap_negates_discriminant(self):
        rng = np.random.default_rng(8)
        Z = rng.standard_normal((30, 3))
        labels = np.array([0, 1] * 15)
        model = fit_rqda(Z, labels)
        swapped = fit_rqda(Z, 1 - labels)
        for _ in range(20):
            s = rng.standard_normal(3)
            assert discriminant(s, swapped) == pytest.approx(
                -discriminant(s, model), abs=1e-12
            )

    def test_cached_quantities_match_fresh_recomputation(self):
        rng = np.random.default_rng(9)
        Z = rng.standard_normal((25, 2))
        labels = rng.permutation([0] * 12 + [1] * 13)
        model = fit_rqda(Z, labels, ridge=1e-3)
        for cov, inv, log_det in (
            (model.cov0, model.inv0, model.log_det0),
            (model.cov1, model.inv1, model.log_det1),
        ):
            assert abs(log_det - log_det_spd(cov)) <= 1e-10
            assert np.max(np.abs(cov @ inv - np.eye(2))) <= 1e-8
            np.testing.assert_allclose(inv, inverse_spd(cov), rtol=0, atol=1e-12)

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_four_point_toy_against_scratch_oracle(self):
        Z = np.array([[1.0, 0.5], [-0.5, 1.0], [0.25, -1.0], [2.0, 0.75]])
        labels = np.array([0, 1, 0, 1])
        model = fit_rqda(Z, labels, ridge=0.05)

        for r, (cov, inv, log_det) in enumerate(
            [
                (model.cov0, model.inv0, model.log_det0),
                (model.cov1, model.inv1, model.log_det1),
            ]
        ):
            rows = Z[labels == r]
            expected = sum(np.outer(z, z) for z in rows) / len(rows) + 0.05 * np.eye(2)
            np.testing.assert_allclose(cov, expected, rtol=0, atol=1e-15)
            np.testing.assert_allclose(inv, adjugate_inverse(expected), rtol=1e-12, atol=1e-12)
            assert log_det == pytest.approx(math.log(cofactor_det(expected)), abs=1e-12)
        assert (model.prior0, model.prior1) == (0.5, 0.5)

    def test_auto_ridge_recorded_and_positive(self):
        rng = np.random.default_rng(10)
        Z = rng.standard_normal((16, 2))
        labels = np.array([0, 1] * 8)
        model = fit_rqda(Z, labels)
        assert model.ridge == pytest.approx(1e-6 * np.mean(Z * Z))

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_singularity_names_class(self):
        # class 0 rows are collinear, so its unridged covariance is rank 1
        Z = np.array([[1.0, 2.0], [2.0, 4.0], [0.3, -1.0], [1.0, 0.2]])
        labels = np.array([0, 0, 1, 1])
        with pytest.raises(SingularMatrixError, match="class 0"):
            fit_rqda(Z, labels, ridge=0.0)


class TestRqdaClassify:
    def test_boundary_tie_is_class_one(self):
        model = model_from_parameters(0.5, np.eye(2), np.eye(2))
        assert discriminant(np.array([0.7, -0.2]), model) == 0.0
        assert rqda_classify(np.array([0.7, -0.2]), model) == 1

    def test_prior_dominates_with_equal_covariances(self):
        model = model_from_parameters(0.7, np.eye(2), np.eye(2))
        rng = np.random.default_rng(11)
        assert all(rqda_classify(rng.standard_normal(2), model) == 1 for _ in range(20))

    def test_sign_of_hand_value(self):
        model = model_from_parameters(0.5, [[1.0]], [[4.0]])
        assert rqda_classify(np.array([2.0]), model) == 1

    def test_batch_shape(self):
        model = model_from_parameters(0.5, np.eye(2), np.eye(2))
        out = rqda_classify(np.zeros((5, 2)), model)
        np.testing.assert_array_equal(out, np.ones(5, dtype=int))
