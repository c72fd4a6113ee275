import math

import numpy as np
import pytest
from scipy.stats import kstest

from evoclust.errors import ResampleRequiredError
from evoclust.numerics import (
    cholesky_lower,
    fork_rng,
    haar_rotation,
    make_rng,
    pca_fit,
    rotation_fractional_power,
    singular_values,
    sym_eigenvalues,
)


def rot2(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


class TestHaarRotation:
    def test_dim_one_is_identity(self, rng):
        assert np.array_equal(haar_rotation(1, rng), [[1.0]])

    def test_invalid_dimension(self, rng):
        with pytest.raises(ValueError):
            haar_rotation(0, rng)

    @pytest.mark.parametrize("dim", [2, 3, 7, 20])
    def test_special_orthogonal(self, rng, dim):
        for _ in range(20):
            q = haar_rotation(dim, rng)
            assert np.abs(q.T @ q - np.eye(dim)).max() < 1e-10
            assert abs(np.linalg.det(q) - 1.0) < 1e-10

    def test_2d_angle_uniform(self):
        # The rotation angle of a Haar draw from SO(2) is uniform on
        # [0, 2pi); check with a KS test against the uniform CDF.
        rng = make_rng(99)
        angles = np.array(
            [
                math.atan2(q[1, 0], q[0, 0]) % (2 * math.pi)
                for q in (haar_rotation(2, rng) for _ in range(10_000))
            ]
        )
        stat = kstest(angles / (2 * math.pi), "uniform").statistic
        assert stat < 0.02


class TestRotationFractionalPower:
    def test_power_zero_is_identity(self, rng):
        q = haar_rotation(4, rng)
        assert np.allclose(rotation_fractional_power(q, 0.0), np.eye(4))

    def test_power_one_is_input(self, rng):
        q = haar_rotation(4, rng)
        assert np.allclose(rotation_fractional_power(q, 1.0), q)

    def test_2d_closed_form(self):
        got = rotation_fractional_power(rot2(0.8), 0.5)
        assert np.abs(got - rot2(0.4)).max() < 1e-12

    def test_semigroup_property(self, rng):
        for dim in (2, 3, 5):
            q = haar_rotation(dim, rng)
            for t1, t2 in [(0.3, 0.4), (0.5, 0.5), (0.1, 0.2)]:
                lhs = rotation_fractional_power(q, t1) @ rotation_fractional_power(q, t2)
                rhs = rotation_fractional_power(q, t1 + t2)
                assert np.abs(lhs - rhs).max() < 1e-8

    def test_result_special_orthogonal(self, rng):
        q = haar_rotation(6, rng)
        out = rotation_fractional_power(q, 0.37)
        assert np.abs(out.T @ out - np.eye(6)).max() < 1e-10
        assert abs(np.linalg.det(out) - 1.0) < 1e-10

    def test_eigenvalue_minus_one_rejected(self):
        half_turn = np.diag([-1.0, -1.0])  # eigenvalues are exactly -1
        with pytest.raises(ResampleRequiredError):
            rotation_fractional_power(half_turn, 0.5)
        with pytest.raises(ResampleRequiredError):
            rotation_fractional_power(np.diag([-1.0, -1.0, 1.0]), 0.5)

    def test_non_rotation_rejected(self):
        with pytest.raises(ValueError):
            rotation_fractional_power(np.diag([1.0, -1.0]), 0.5)
        with pytest.raises(ValueError):
            rotation_fractional_power(np.eye(2) * 2.0, 0.5)


class TestCholesky:
    def test_identity(self):
        assert np.array_equal(cholesky_lower(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert np.allclose(cholesky_lower(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))

    def test_round_trip(self, rng):
        for _ in range(25):
            a = rng.normal(size=(4, 4))
            s = a @ a.T + 4 * np.eye(4)
            lower = cholesky_lower(s)
            assert np.tril(lower) == pytest.approx(lower)
            err = np.linalg.norm(lower @ lower.T - s) / np.linalg.norm(s)
            assert err < 1e-9

    def test_hand_case(self):
        lower = cholesky_lower(np.array([[4.0, 2.0], [2.0, 3.0]]))
        assert np.allclose(lower, [[2.0, 0.0], [1.0, math.sqrt(2.0)]])

    def test_not_positive_definite(self):
        with pytest.raises(np.linalg.LinAlgError):
            cholesky_lower(np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_not_symmetric(self):
        with pytest.raises(ValueError):
            cholesky_lower(np.array([[1.0, 0.5], [0.0, 1.0]]))


class TestSymEigenvalues:
    def test_diagonal(self):
        assert np.allclose(sym_eigenvalues(np.diag([4.0, 1.0])), [4.0, 1.0])

    def test_identity(self):
        assert np.allclose(sym_eigenvalues(np.eye(3)), [1.0, 1.0, 1.0])

    def test_hand_case(self):
        # det(S - xI) = (2-x)^2 - 1 -> eigenvalues 3 and 1.
        got = sym_eigenvalues(np.array([[2.0, 1.0], [1.0, 2.0]]))
        assert np.allclose(got, [3.0, 1.0])

    def test_trace_matches_sum(self, rng):
        a = rng.normal(size=(5, 5))
        s = a + a.T
        vals = sym_eigenvalues(s)
        assert np.all(np.diff(vals) <= 0)
        assert vals.sum() == pytest.approx(np.trace(s), rel=1e-9)

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            sym_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestSingularValues:
    def test_zero_matrix(self):
        assert np.array_equal(singular_values(np.zeros((3, 2))), [0.0, 0.0])

    def test_diagonal(self):
        assert np.allclose(singular_values(np.diag([3.0, 2.0])), [3.0, 2.0])

    def test_matches_gram_eigenvalues(self, rng):
        a = rng.normal(size=(5, 2))
        sv = singular_values(a)
        gram_eigs = sym_eigenvalues(a.T @ a)
        assert np.allclose(sv**2, gram_eigs)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            singular_values(np.empty((0, 2)))


class TestPcaFit:
    def test_rank_one_data(self, rng):
        direction = np.array([2.0, 1.0]) / math.sqrt(5.0)
        scale = rng.normal(size=100)
        x = np.outer(scale, direction)
        x -= x.mean(axis=0)
        _, ratios = pca_fit(x, 1)
        assert ratios[0] == pytest.approx(1.0, abs=1e-9)

    def test_isotropic_data(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=(10_000, 2))
        x -= x.mean(axis=0)
        _, ratios = pca_fit(x, 2)
        assert ratios[0] == pytest.approx(0.5, abs=0.05)
        assert ratios[1] == pytest.approx(0.5, abs=0.05)

    def test_full_reconstruction(self, rng):
        x = rng.normal(size=(50, 4))
        x -= x.mean(axis=0)
        components, ratios = pca_fit(x, 4)
        recon = (x @ components.T) @ components
        assert np.abs(recon - x).max() < 1e-8
        assert np.all(np.diff(ratios) <= 1e-12)
        assert ratios.sum() <= 1.0 + 1e-9

    def test_orthonormal_rows(self, rng):
        x = rng.normal(size=(40, 6))
        x -= x.mean(axis=0)
        components, _ = pca_fit(x, 3)
        assert np.abs(components @ components.T - np.eye(3)).max() < 1e-10

    def test_too_many_components(self, rng):
        with pytest.raises(ValueError):
            pca_fit(rng.normal(size=(10, 2)), 3)


class TestRngContracts:
    def test_same_seed_same_stream(self):
        a = make_rng(42).standard_normal(100)
        b = make_rng(42).standard_normal(100)
        assert np.array_equal(a, b)

    def test_forks_are_independent_and_reproducible(self):
        a1 = fork_rng(7, 0).standard_normal(10)
        a2 = fork_rng(7, 0).standard_normal(10)
        b = fork_rng(7, 1).standard_normal(10)
        assert np.array_equal(a1, a2)
        assert not np.array_equal(a1, b)
