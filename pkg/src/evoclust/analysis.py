"""Problem features of labeled datasets and the 2-D instance space.

Seven features describe how hard a labeled dataset is to cluster:
connectivity (neighbourhood label agreement), dimensionality, average
cluster eccentricity, entropy of cluster sizes, number of clusters, and the
mean and standard deviation of the per-point silhouette width. A collection
of datasets is embedded in 2-D by PCA of the standardized feature matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .model import Partition
from .numerics import pairwise_distances, pca_fit, singular_values
from .objectives import silhouette_samples

logger = logging.getLogger(__name__)

FEATURE_NAMES = (
    "connectivity",
    "dimensionality",
    "avg_eccentricity",
    "entropy",
    "num_clusters",
    "sil_mean",
    "sil_std",
)

ECCENTRICITY_VARIANCE_SHARE = 0.95


@dataclass
class FeatureVector:
    connectivity: float
    dimensionality: int
    avg_eccentricity: float
    entropy: float
    num_clusters: int
    sil_mean: float
    sil_std: float

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=float)


def connectivity(
    points: np.ndarray,
    labels: Partition,
    n_neighbors: int = 10,
    dists: np.ndarray | None = None,
) -> float:
    """Neighbourhood disagreement: for each point, the j-th nearest
    neighbour contributes 1/j when it carries a different label. The summed
    penalty is divided by the number of points so values compare across
    datasets. Distance ties break toward the lowest index.
    """
    n = points.shape[0]
    labels = np.asarray(labels)
    if n <= n_neighbors:
        raise ValueError(f"connectivity needs more than {n_neighbors} points")
    if dists is None:
        dists = pairwise_distances(points)
    idx = np.arange(n)
    dists[idx, idx] = np.inf
    neighbors = np.argsort(dists, axis=1, kind="stable")[:, :n_neighbors]
    dists[idx, idx] = 0.0
    foreign = labels[neighbors] != labels[:, None]
    weights = 1.0 / np.arange(1, n_neighbors + 1)
    return float((foreign * weights).sum() / n)


def avg_eccentricity(points: np.ndarray, labels: Partition) -> float:
    """Mean over clusters of the max/min ratio among the top covariance
    eigenvalues that account for 95% of each cluster's variance.

    Trimming the eigenvalue tail keeps near-degenerate directions (subspace
    clusters, duplicated points) from blowing the ratio up.
    """
    labels = np.asarray(labels)
    ratios = []
    for label in np.unique(labels):
        cluster = points[labels == label]
        if cluster.shape[0] < 2:
            raise ValueError("eccentricity needs at least 2 points per cluster")
        centered = cluster - cluster.mean(axis=0)
        eig = singular_values(centered) ** 2 / (cluster.shape[0] - 1)
        total = eig.sum()
        if total <= 0.0:
            ratios.append(1.0)
            continue
        kept = int(np.searchsorted(np.cumsum(eig), ECCENTRICITY_VARIANCE_SHARE * total)) + 1
        kept = min(kept, eig.shape[0])
        smallest = eig[kept - 1]
        if smallest <= 0.0:
            logger.warning("zero eigenvalue in the 95%% subset; applying floor")
            smallest = 1e-12 * eig[0]
        ratios.append(float(eig[0] / smallest))
    return float(np.mean(ratios))


def entropy_cluster_sizes(labels: Partition, n_clusters: int | None = None) -> float:
    """Entropy of the cluster-size distribution in log base K, so equal
    sizes give exactly 1.0 for any K. A single cluster is defined as 0."""
    labels = np.asarray(labels)
    counts = np.bincount(labels)
    counts = counts[counts > 0]
    k = n_clusters if n_clusters is not None else counts.shape[0]
    if k < 2:
        return 0.0
    p = counts / counts.sum()
    return float(-(p * (np.log(p) / np.log(k))).sum())


def compute_features(points: np.ndarray, labels: Partition) -> FeatureVector:
    labels = np.asarray(labels)
    k = np.unique(labels).shape[0]
    if k < 2:
        raise ValueError("features need at least 2 clusters")
    dists = pairwise_distances(points)
    sil = silhouette_samples(points, labels, dists)
    return FeatureVector(
        connectivity=connectivity(points, labels, dists=dists),
        dimensionality=points.shape[1],
        avg_eccentricity=avg_eccentricity(points, labels),
        entropy=entropy_cluster_sizes(labels, k),
        num_clusters=k,
        sil_mean=float(sil.mean()),
        sil_std=float(sil.std()),
    )


@dataclass
class InstanceSpace:
    """2-D PCA embedding of a feature-vector collection."""

    coordinates: np.ndarray  # (n_datasets, 2)
    component_loadings: np.ndarray  # (2, 7), orthonormal rows
    explained_variance_ratio: np.ndarray
    feature_means: np.ndarray
    feature_stds: np.ndarray

    def project(self, features: FeatureVector) -> np.ndarray:
        z = (features.as_array() - self.feature_means) / self.feature_stds
        return z @ self.component_loadings.T


def build_instance_space(features: list[FeatureVector]) -> InstanceSpace:
    """Standardize the feature matrix column-wise and project to 2-D."""
    if len(features) < 3:
        raise ValueError("instance space needs at least 3 datasets")
    x = np.stack([f.as_array() for f in features])
    means = x.mean(axis=0)
    stds = x.std(axis=0)
    constant = stds < 1e-12
    if constant.any():
        names = [FEATURE_NAMES[i] for i in np.flatnonzero(constant)]
        logger.warning("constant feature column(s) %s standardized to zeros", names)
        stds = np.where(constant, 1.0, stds)
    z = (x - means) / stds
    components, ratios = pca_fit(z, 2)
    return InstanceSpace(
        coordinates=z @ components.T,
        component_loadings=components,
        explained_variance_ratio=ratios,
        feature_means=means,
        feature_stds=stds,
    )
