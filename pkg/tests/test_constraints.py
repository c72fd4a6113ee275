import numpy as np
import pytest

from brute import overlap_brute
from evoclust.constraints import (
    ConstraintSet,
    eccentricity_constraint,
    overlap,
    penalty,
    penalty_terms,
)
from evoclust.genetics import InitParams, init_population, mutate_covariance
from evoclust.model import Gene, Individual, labels_from_sizes, materialize


def gene_with_variances(variances, rng):
    d = len(variances)
    return Gene(
        mean=np.zeros(d),
        axis_variances=np.asarray(variances, dtype=float),
        rotation=np.eye(d),
        size=4,
        base_samples=rng.standard_normal((4, d)),
    )


class TestOverlap:
    def test_separated_clusters(self, rng):
        a = rng.normal(size=(30, 2))
        b = rng.normal(size=(30, 2)) + 100.0
        points = np.vstack([a, b])
        labels = np.repeat([0, 1], 30)
        assert overlap(points, labels) == 0.0

    def test_alternating_line(self):
        points = np.arange(10, dtype=float)[:, None]
        labels = np.tile([0, 1], 5)
        assert overlap(points, labels) == 1.0

    def test_label_renaming_invariance(self, rng):
        points = rng.normal(size=(40, 2))
        labels = rng.integers(0, 3, size=40)
        renamed = (labels + 1) % 3
        assert overlap(points, labels) == overlap(points, renamed)

    def test_matches_brute_force(self, rng):
        for _ in range(30):
            n = int(rng.integers(5, 60))
            points = rng.normal(size=(n, 2))
            labels = rng.integers(0, 3, size=n)
            assert overlap(points, labels) == pytest.approx(
                overlap_brute(points, labels), abs=1e-15
            )
        # and at the upper end of the brute-force contract
        for n in (150, 200):
            points = rng.normal(size=(n, 3))
            labels = rng.integers(0, 4, size=n)
            assert overlap(points, labels) == pytest.approx(
                overlap_brute(points, labels), abs=1e-15
            )

    def test_duplicate_points_tie_break(self):
        # identical points at index 0 and 2; nn of every point is the
        # lowest-index duplicate
        points = np.array([[0.0, 0.0], [5.0, 0.0], [0.0, 0.0]])
        labels = np.array([0, 1, 1])
        # nn(0) = 2 (foreign), nn(1) = 0 (foreign), nn(2) = 0 (foreign)
        assert overlap(points, labels) == 1.0

    def test_shared_distance_matrix_not_corrupted(self, rng):
        from evoclust.numerics import pairwise_distances

        points = rng.normal(size=(20, 2))
        labels = rng.integers(0, 2, size=20)
        dists = pairwise_distances(points)
        snapshot = dists.copy()
        overlap(points, labels, dists)
        assert np.array_equal(dists, snapshot)


class TestEccentricity:
    def test_spherical_clusters(self, rng):
        ind = Individual(
            genes=[gene_with_variances([2.0, 2.0], rng) for _ in range(3)],
            labels=labels_from_sizes([4, 4, 4]),
        )
        assert eccentricity_constraint(ind) == 1.0

    def test_minimum_of_ratios(self, rng):
        ind = Individual(
            genes=[
                gene_with_variances([4.0, 1.0], rng),
                gene_with_variances([50.0, 1.0], rng),
            ],
            labels=labels_from_sizes([4, 4]),
        )
        assert eccentricity_constraint(ind) == 4.0

    def test_single_cluster(self, rng):
        ind = Individual(
            genes=[gene_with_variances([9.0, 1.0], rng)],
            labels=labels_from_sizes([4]),
        )
        assert eccentricity_constraint(ind) == 9.0

    def test_invariant_under_rotation_mutation(self, rng):
        ind = Individual(
            genes=[gene_with_variances([7.0, 2.0, 1.0], rng)],
            labels=labels_from_sizes([4]),
        )
        before = eccentricity_constraint(ind)
        # rotation changes; the variance rescaling preserves the product but
        # not individual values, so compare against the mutated gene directly
        g2 = mutate_covariance(ind.genes[0], 0.5, rng)
        expected = g2.axis_variances.max() / g2.axis_variances.min()
        ind.genes[0] = g2
        assert eccentricity_constraint(ind) == pytest.approx(expected, rel=1e-12)
        assert before > 1.0


class TestPenalty:
    def test_feasible_is_zero(self):
        cs = ConstraintSet(overlap_upper=0.1, eccen_lower=1.0)
        assert penalty_terms(0.05, 3.0, cs) == 0.0

    def test_overlap_violation_squared(self):
        cs = ConstraintSet(overlap_upper=0.1)
        assert penalty_terms(0.3, 1.0, cs) == pytest.approx(0.04, abs=1e-15)

    def test_eccentricity_violation_squared(self):
        cs = ConstraintSet(eccen_lower=50.0)
        assert penalty_terms(0.0, 10.0, cs) == pytest.approx(1600.0)

    def test_both_terms_add(self):
        cs = ConstraintSet(overlap_upper=0.1, eccen_lower=50.0)
        assert penalty_terms(0.3, 10.0, cs) == pytest.approx(1600.04)

    def test_no_constraints_no_penalty(self, rng):
        params = InitParams(n_points=30, n_clusters=2, n_dims=2)
        ind = init_population(params, 2, rng)[0]
        assert penalty(ind, ConstraintSet()) == 0.0

    def test_penalty_on_individual(self, rng):
        params = InitParams(n_points=30, n_clusters=2, n_dims=2)
        ind = init_population(params, 2, rng)[0]
        materialize(ind)
        cs = ConstraintSet(overlap_upper=0.0, eccen_lower=1.0)
        ov = overlap(ind.points, ind.labels)
        assert penalty(ind, cs) == pytest.approx(ov**2)

    def test_continuity_near_threshold(self):
        cs = ConstraintSet(overlap_upper=0.2)
        eps = 1e-9
        assert penalty_terms(0.2 + eps, 1.0, cs) < 1e-15
