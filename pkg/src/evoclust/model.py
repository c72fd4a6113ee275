"""Genotype representation of a dataset: a list of Gaussian cluster genes
plus the sample points they generate.

Each gene holds the parameters of one cluster's generating distribution and
a frozen block of standard-normal base samples. Materializing an individual
maps each gene's base samples through the current covariance, so fitness
changes under mutation reflect parameter changes only, never resampling
noise. Points are stored contiguously by cluster; the ground-truth labels
are derived from the (fixed) cluster sizes and never change during a run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import cholesky_lower

# A partition is a length-N integer vector of cluster labels in [0, K).
Partition = np.ndarray


@dataclass
class Gene:
    """One cluster's generating distribution.

    The full covariance is rotation @ diag(axis_variances) @ rotation.T, so
    axis_variances are exactly the covariance eigenvalues and their product
    is its determinant. base_samples are frozen at initialization.
    """

    mean: np.ndarray
    axis_variances: np.ndarray
    rotation: np.ndarray
    size: int
    base_samples: np.ndarray

    def __post_init__(self):
        self.base_samples.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.mean.shape[0]

    def copy(self) -> "Gene":
        # base_samples are immutable, so clones share them.
        return Gene(
            mean=self.mean.copy(),
            axis_variances=self.axis_variances.copy(),
            rotation=self.rotation.copy(),
            size=self.size,
            base_samples=self.base_samples,
        )


def full_covariance(gene: Gene) -> np.ndarray:
    """Full covariance matrix of a gene: R @ diag(v) @ R.T."""
    return (gene.rotation * gene.axis_variances) @ gene.rotation.T


@dataclass
class Individual:
    """A genotype of K genes plus its materialized dataset and caches.

    fitness/penalty (and the diagnostic values alongside them) are only
    valid when set by an evaluation; any structural change clears them.
    """

    genes: list[Gene]
    labels: Partition
    points: np.ndarray | None = None
    fitness: float | None = None
    penalty: float | None = None
    silhouette: float | None = None
    overlap: float | None = None
    eccentricity: float | None = None
    ari_pair: tuple[float, float] | None = field(default=None, repr=False)

    @property
    def n_clusters(self) -> int:
        return len(self.genes)

    @property
    def n_points(self) -> int:
        return self.labels.shape[0]

    @property
    def dim(self) -> int:
        return self.genes[0].dim

    @property
    def stale(self) -> bool:
        """True until an evaluation has cached fitness and penalty."""
        return self.fitness is None or self.penalty is None

    def clear_caches(self) -> None:
        self.fitness = None
        self.penalty = None
        self.silhouette = None
        self.overlap = None
        self.eccentricity = None
        self.ari_pair = None

    def clone(self) -> "Individual":
        return Individual(
            genes=[g.copy() for g in self.genes],
            labels=self.labels,
            points=None if self.points is None else self.points.copy(),
            fitness=self.fitness,
            penalty=self.penalty,
            silhouette=self.silhouette,
            overlap=self.overlap,
            eccentricity=self.eccentricity,
            ari_pair=self.ari_pair,
        )


def labels_from_sizes(sizes) -> Partition:
    return np.repeat(np.arange(len(sizes)), sizes)


def materialize(ind: Individual) -> Individual:
    """Regenerate the point matrix from the genes, in place.

    Cluster k's rows are mean_k + base_samples_k @ L_k.T with L_k the lower
    Cholesky factor of the gene's covariance. Clears cached evaluation
    values, since they referred to the previous parameters.
    """
    blocks = []
    for gene in ind.genes:
        lower = cholesky_lower(full_covariance(gene))
        blocks.append(gene.mean + gene.base_samples @ lower.T)
    ind.points = np.vstack(blocks)
    ind.clear_caches()
    return ind
