"""Fitness functions: silhouette width and the two optimization modes.

Index mode drives a dataset's overall silhouette width toward a target
value by minimizing |target - silhouette|. Versus mode maximizes the
adjusted-Rand-index gap between a designated winner and loser clustering
algorithm, both scored against the generating-model labels.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModelError
from .model import Individual, Partition
from .numerics import pairwise_distances

logger = logging.getLogger(__name__)


@dataclass
class IndexObjective:
    """Minimize |target - overall silhouette width|."""

    target: float

    def validate(self) -> None:
        if not -1.0 <= self.target <= 1.0:
            raise ValueError("target silhouette must lie in [-1, 1]")


@dataclass
class VersusObjective:
    """Maximize ARI(winner) - ARI(loser) against the ground truth."""

    winner: "ClustererSpec"
    loser: "ClustererSpec"

    def validate(self) -> None:
        self.winner.validate()
        self.loser.validate()


def silhouette_samples(
    points: np.ndarray, labels: Partition, dists: np.ndarray | None = None
) -> np.ndarray:
    """Per-point silhouette values s = (b - a) / max(a, b).

    a is the mean distance to the point's own-cluster co-members (excluding
    itself); b is the smallest mean distance to any other cluster. Points in
    singleton clusters get s = 0 by convention, as do points with a = b = 0.
    """
    n = points.shape[0]
    labels = np.asarray(labels)
    if dists is None:
        dists = pairwise_distances(points)
    order = np.argsort(labels, kind="stable")
    sorted_labels = labels[order]
    uniq, starts = np.unique(sorted_labels, return_index=True)
    if uniq.shape[0] < 2:
        raise ValueError("silhouette is undefined for a single cluster")
    counts = np.diff(np.append(starts, n))
    # Row i of sums holds the total distance from point i to each cluster.
    # Labels are already contiguous for generated datasets, so skip the
    # column permutation (an N^2 copy) when possible.
    columns = dists if np.array_equal(sorted_labels, labels) else dists[:, order]
    sums = np.add.reduceat(columns, starts, axis=1)
    own = np.searchsorted(uniq, labels)
    rows = np.arange(n)
    own_counts = counts[own]
    with np.errstate(invalid="ignore", divide="ignore"):
        a = sums[rows, own] / (own_counts - 1)
    means = sums / counts
    means[rows, own] = np.inf
    b = means.min(axis=1)
    denom = np.maximum(a, b)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = (b - a) / denom
    s = np.where((own_counts < 2) | (denom == 0.0) | ~np.isfinite(a), 0.0, s)
    return s


def silhouette_point(points: np.ndarray, labels: Partition, i: int) -> float:
    """Silhouette value of one point (direct O(N) computation)."""
    labels = np.asarray(labels)
    uniq = np.unique(labels)
    if uniq.shape[0] < 2:
        raise ValueError("silhouette is undefined for a single cluster")
    d = np.linalg.norm(points - points[i], axis=1)
    own = labels[i]
    own_mask = labels == own
    if own_mask.sum() < 2:
        return 0.0
    a = d[own_mask].sum() / (own_mask.sum() - 1)
    b = min(d[labels == k].mean() for k in uniq if k != own)
    denom = max(a, b)
    if denom == 0.0:
        return 0.0
    return (b - a) / denom


def silhouette_overall(
    points: np.ndarray, labels: Partition, dists: np.ndarray | None = None
) -> float:
    """Mean per-point silhouette over the whole dataset."""
    if points.shape[0] < 2:
        raise ValueError("silhouette needs at least 2 points")
    return float(silhouette_samples(points, labels, dists).mean())


def index_fitness(ind: Individual, objective: IndexObjective) -> float:
    """|target - overall silhouette|, to be minimized."""
    return abs(objective.target - silhouette_overall(ind.points, ind.labels))


def versus_scores(
    ind: Individual,
    objective: VersusObjective,
    rng: np.random.Generator,
    dists: np.ndarray | None = None,
) -> tuple[float, float]:
    """ARI of the winner and loser algorithms against the ground truth.

    Stochastic algorithms draw a fresh initialization seed from rng at
    every call. A failing algorithm is retried once with a new seed and
    then scored 0.
    """
    from .clusterers import ari, run_clusterer

    k_true = ind.n_clusters
    scores = []
    for spec in (objective.winner, objective.loser):
        partition = None
        for _ in range(2):
            seed = int(rng.integers(np.iinfo(np.int64).max))
            try:
                partition = run_clusterer(spec, ind.points, k_true, seed, dists)
                break
            except DegenerateModelError as exc:
                logger.warning("%s clusterer failed (%s); retrying", spec.kind, exc)
        if partition is None:
            logger.warning("%s clusterer failed twice; scoring ARI 0", spec.kind)
            scores.append(0.0)
        else:
            scores.append(ari(partition, ind.labels))
    return scores[0], scores[1]


def versus_fitness(
    ind: Individual, objective: VersusObjective, rng: np.random.Generator
) -> float:
    """ARI(winner) - ARI(loser), to be maximized."""
    ari_w, ari_l = versus_scores(ind, objective, rng)
    return ari_w - ari_l
