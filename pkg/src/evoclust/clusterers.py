"""The four benchmark clustering algorithms and the adjusted Rand index.

K-Means++ and the full-covariance Gaussian mixture are implemented here;
the agglomerative linkages delegate the merge sequence to scipy's
hierarchy routines (equivalent to the Lance-Williams recurrence for the
single and average criteria) and cut the tree at k clusters. None of the
algorithms ever sees ground-truth labels.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.cluster.hierarchy
import scipy.linalg
from scipy.spatial.distance import cdist, squareform

from .errors import DegenerateModelError
from .model import Partition
from .numerics import fork_rng, pairwise_distances

logger = logging.getLogger(__name__)

CLUSTERER_KINDS = ("kmeans_pp", "gmm", "single_linkage", "average_linkage")

_DEFAULTS = {
    "kmeans_pp": (300, 1e-4),
    "gmm": (100, 1e-3),
    "single_linkage": (0, 0.0),
    "average_linkage": (0, 0.0),
}


@dataclass
class ClustererSpec:
    """One benchmark algorithm plus its parameters.

    k = None means "use the dataset's true cluster count" (resolved by the
    caller). Deterministic kinds ignore init_seed. max_iter/tol default per
    kind when left as None.
    """

    kind: str
    k: int | None = None
    init_seed: int = 0
    max_iter: int | None = None
    tol: float | None = None

    def validate(self) -> None:
        if self.kind not in CLUSTERER_KINDS:
            raise ValueError(
                f"unknown clusterer {self.kind!r}; choose from {CLUSTERER_KINDS}"
            )
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")

    def resolved(self) -> tuple[int, float]:
        d_iter, d_tol = _DEFAULTS[self.kind]
        return (
            self.max_iter if self.max_iter is not None else d_iter,
            self.tol if self.tol is not None else d_tol,
        )


def run_clusterer(
    spec: ClustererSpec,
    points: np.ndarray,
    k_true: int,
    seed: int | None = None,
    dists: np.ndarray | None = None,
) -> Partition:
    """Dispatch a spec against a dataset; seed overrides spec.init_seed.

    A precomputed distance matrix is forwarded to the linkage methods.
    """
    spec.validate()
    k = spec.k if spec.k is not None else k_true
    init_seed = spec.init_seed if seed is None else seed
    max_iter, tol = spec.resolved()
    if spec.kind == "kmeans_pp":
        return kmeans_pp(points, k, init_seed, max_iter, tol)
    if spec.kind == "gmm":
        return gmm_em(points, k, init_seed, max_iter, tol)
    method = "single" if spec.kind == "single_linkage" else "average"
    return linkage(points, k, method, dists)


def kmeans_pp(
    points: np.ndarray, k: int, seed: int, max_iter: int = 300, tol: float = 1e-4
) -> Partition:
    """K-Means with squared-distance-weighted seeding and Lloyd iterations.

    Converges when the largest centre shift drops below tol. Empty clusters
    are repaired by reassigning the point farthest from its current centre.
    """
    n = points.shape[0]
    if n < k:
        raise ValueError(f"cannot form {k} clusters from {n} points")
    rng = fork_rng(seed)
    centers = _pp_seeding(points, k, rng)
    labels = np.zeros(n, dtype=int)
    for _ in range(max_iter):
        sq = cdist(points, centers, "sqeuclidean")
        labels = np.argmin(sq, axis=1)
        point_sq = sq[np.arange(n), labels]
        for empty in np.flatnonzero(np.bincount(labels, minlength=k) == 0):
            farthest = int(np.argmax(point_sq))
            labels[farthest] = empty
            point_sq[farthest] = -1.0  # cannot be stolen by another repair
        new_centers = np.stack(
            [points[labels == j].mean(axis=0) for j in range(k)]
        )
        shift = np.linalg.norm(new_centers - centers, axis=1).max()
        centers = new_centers
        if shift < tol:
            break
    return np.argmin(cdist(points, centers, "sqeuclidean"), axis=1)


def _pp_seeding(points, k, rng) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    closest_sq = cdist(points, centers[:1], "sqeuclidean").ravel()
    for j in range(1, k):
        total = closest_sq.sum()
        if total > 0.0:
            idx = rng.choice(n, p=closest_sq / total)
        else:
            idx = rng.integers(n)
        centers[j] = points[idx]
        new_sq = cdist(points, centers[j : j + 1], "sqeuclidean").ravel()
        closest_sq = np.minimum(closest_sq, new_sq)
    return centers


def gmm_em(
    points: np.ndarray, k: int, seed: int, max_iter: int = 100, tol: float = 1e-3
) -> Partition:
    """Full-covariance Gaussian mixture fit by EM, hard labels by maximum
    responsibility.

    Initialized from one kmeans_pp pass. Covariances are regularized by
    adding 1e-6 * (mean feature variance) to the diagonal. Convergence is
    a mean-per-point log-likelihood gain below tol. A degenerate component
    triggers one restart with a new seed before giving up.
    """
    if points.shape[0] < k:
        raise ValueError(f"cannot fit {k} components to {points.shape[0]} points")
    reg = 1e-6 * float(points.var(axis=0).mean())
    try:
        return _em_attempt(points, k, seed, max_iter, tol, reg)
    except DegenerateModelError:
        logger.warning("gmm degenerate with seed %d; restarting once", seed)
        retry_seed = int(
            np.random.SeedSequence(seed, spawn_key=(1,)).generate_state(1)[0]
        )
        return _em_attempt(points, k, retry_seed, max_iter, tol, reg)


def _em_attempt(points, k, seed, max_iter, tol, reg) -> Partition:
    n, d = points.shape
    resp = np.zeros((n, k))
    resp[np.arange(n), kmeans_pp(points, k, seed)] = 1.0
    weights, means, covs = _m_step(points, resp, reg)
    prev_ll = -np.inf
    for _ in range(max_iter):
        log_prob = _log_gaussian_prob(points, means, covs) + np.log(weights)
        log_norm = _logsumexp(log_prob)
        ll = float(log_norm.mean())
        resp = np.exp(log_prob - log_norm[:, None])
        weights, means, covs = _m_step(points, resp, reg)
        if abs(ll - prev_ll) < tol:
            break
        prev_ll = ll
    log_prob = _log_gaussian_prob(points, means, covs) + np.log(weights)
    return np.argmax(log_prob, axis=1)


def _m_step(points, resp, reg):
    n, d = points.shape
    k = resp.shape[1]
    nk = resp.sum(axis=0)
    if np.any(nk < 10 * np.finfo(float).eps):
        raise DegenerateModelError("a mixture component lost all its mass")
    weights = nk / n
    means = (resp.T @ points) / nk[:, None]
    covs = np.empty((k, d, d))
    for j in range(k):
        diff = points - means[j]
        covs[j] = (resp[:, j] * diff.T) @ diff / nk[j]
        covs[j].flat[:: d + 1] += reg
    return weights, means, covs


def _log_gaussian_prob(points, means, covs):
    n, d = points.shape
    k = means.shape[0]
    out = np.empty((n, k))
    for j in range(k):
        try:
            lower = np.linalg.cholesky(covs[j])
        except np.linalg.LinAlgError as exc:
            raise DegenerateModelError("singular component covariance") from exc
        diff = points - means[j]
        z = scipy.linalg.solve_triangular(lower, diff.T, lower=True)
        log_det = np.log(np.diag(lower)).sum()
        out[:, j] = -0.5 * (d * math.log(2 * math.pi) + (z**2).sum(axis=0)) - log_det
    return out


def _logsumexp(a):
    m = a.max(axis=1)
    return m + np.log(np.exp(a - m[:, None]).sum(axis=1))


def linkage(
    points: np.ndarray, k: int, method: str, dists: np.ndarray | None = None
) -> Partition:
    """Agglomerative clustering cut at k clusters.

    method is "single" (merge on the shortest inter-cluster distance) or
    "average" (merge on the mean of all inter-cluster point distances).
    The merge sequence comes from scipy's hierarchy routines; the partition
    is read off the first n - k merges directly.
    """
    if method not in ("single", "average"):
        raise ValueError(f"unknown linkage method {method!r}")
    n = points.shape[0]
    if n < k:
        raise ValueError(f"cannot form {k} clusters from {n} points")
    if n == k:
        return np.arange(n)
    if dists is None:
        dists = pairwise_distances(points)
    condensed = squareform(dists, checks=False)
    merges = scipy.cluster.hierarchy.linkage(condensed, method=method)
    return _labels_at_k(merges, n, k)


def _labels_at_k(merges: np.ndarray, n: int, k: int) -> Partition:
    """Partition after the first n - k agglomerative merges, labelled by
    first occurrence (cluster i of row idx merges into node n + idx)."""
    parent = np.arange(n + merges.shape[0])

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = int(parent[x])
        return x

    for idx in range(n - k):
        merged = n + idx
        parent[find(int(merges[idx, 0]))] = merged
        parent[find(int(merges[idx, 1]))] = merged
    labels = np.empty(n, dtype=int)
    numbering: dict[int, int] = {}
    for i in range(n):
        root = find(i)
        labels[i] = numbering.setdefault(root, len(numbering))
    return labels


def ari(a: Partition, b: Partition) -> float:
    """Adjusted Rand index between two partitions of the same points.

    1.0 means identical assignments; the expected value for independent
    random assignments is 0. Computed from the contingency table with the
    usual adjusted-for-chance normalization. The degenerate case where both
    partitions carry no pair information (e.g. both are a single cluster)
    is defined as 1.0.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("partitions must have equal length")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    na, nb = ai.max() + 1, bi.max() + 1
    table = np.bincount(ai * nb + bi, minlength=na * nb).reshape(na, nb)

    def comb2(x):
        x = x.astype(float)
        return (x * (x - 1.0) / 2.0).sum()

    sum_cells = comb2(table)
    sum_rows = comb2(table.sum(axis=1))
    sum_cols = comb2(table.sum(axis=0))
    total = a.shape[0] * (a.shape[0] - 1) / 2.0
    expected = sum_rows * sum_cols / total
    max_index = 0.5 * (sum_rows + sum_cols)
    if max_index == expected:
        return 1.0
    return float((sum_cells - expected) / (max_index - expected))
