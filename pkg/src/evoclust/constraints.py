"""Overlap and eccentricity constraints with quadratic penalty aggregation.

Overlap is the fraction of points whose nearest neighbour carries a
different ground-truth label. Eccentricity is the max/min eigenvalue ratio
of a cluster's covariance; the constraint value is the minimum of those
ratios over clusters, so a lower bound forces *every* cluster to be at
least that elongated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Individual, Partition
from .numerics import pairwise_distances


@dataclass
class ConstraintSet:
    """Active thresholds; a None threshold disables that constraint."""

    overlap_upper: float | None = None
    eccen_lower: float | None = None

    def validate(self) -> None:
        if self.overlap_upper is not None and not 0.0 <= self.overlap_upper <= 1.0:
            raise ValueError("overlap_upper must lie in [0, 1]")
        if self.eccen_lower is not None and self.eccen_lower < 1.0:
            raise ValueError("eccen_lower must be >= 1")


def overlap(
    points: np.ndarray, labels: Partition, dists: np.ndarray | None = None
) -> float:
    """Fraction of points whose nearest neighbour (self excluded, ties
    broken by lowest index) lies in a different cluster."""
    n = points.shape[0]
    if n < 2:
        raise ValueError("overlap needs at least 2 points")
    labels = np.asarray(labels)
    if dists is None:
        dists = pairwise_distances(points)
    # Mask the diagonal in place and restore it (self-distance is 0),
    # avoiding an N^2 copy of a possibly shared distance matrix.
    idx = np.arange(n)
    dists[idx, idx] = np.inf
    nearest = np.argmin(dists, axis=1)
    dists[idx, idx] = 0.0
    return float(np.mean(labels[nearest] != labels))


def eccentricity_constraint(ind: Individual) -> float:
    """Minimum over clusters of max/min axis variance, always >= 1."""
    ratios = [
        float(g.axis_variances.max() / g.axis_variances.min()) for g in ind.genes
    ]
    return min(ratios)


def penalty_terms(
    overlap_value: float, eccen_value: float, constraints: ConstraintSet
) -> float:
    """Quadratic penalty: sum of squared constraint violations."""
    total = 0.0
    if constraints.overlap_upper is not None:
        total += max(0.0, overlap_value - constraints.overlap_upper) ** 2
    if constraints.eccen_lower is not None:
        total += max(0.0, constraints.eccen_lower - eccen_value) ** 2
    return total


def penalty(ind: Individual, constraints: ConstraintSet) -> float:
    """Penalty of a materialized individual; 0 exactly when feasible."""
    if constraints.overlap_upper is None and constraints.eccen_lower is None:
        return 0.0
    ov = overlap(ind.points, ind.labels) if constraints.overlap_upper is not None else 0.0
    ec = eccentricity_constraint(ind) if constraints.eccen_lower is not None else 1.0
    return penalty_terms(ov, ec, constraints)
