"""evoclust: evolve synthetic clustering benchmarks.

A library and CLI that evolves Gaussian-cluster datasets toward either a
target silhouette width (index mode) or a maximal performance gap between
two clustering algorithms (versus mode), and analyzes the results with
clustering-specific problem features projected into a 2-D instance space.
"""

__version__ = "0.1.0"

from .analysis import (
    FEATURE_NAMES,
    FeatureVector,
    InstanceSpace,
    build_instance_space,
    compute_features,
)
from .clusterers import ClustererSpec, ari, gmm_em, kmeans_pp, linkage
from .constraints import ConstraintSet, eccentricity_constraint, overlap, penalty
from .engine import HistoryRecord, RunConfig, RunResult, evaluate, run, step
from .genetics import (
    InitParams,
    MutationParams,
    allocate_cluster_sizes,
    crossover_uniform,
    init_population,
    mutate,
)
from .model import Gene, Individual, Partition, full_covariance, materialize
from .objectives import (
    IndexObjective,
    VersusObjective,
    index_fitness,
    silhouette_overall,
    silhouette_samples,
    versus_fitness,
)
from .selection import binary_tournament, environmental_select, stochastic_rank

__all__ = [
    "FEATURE_NAMES",
    "FeatureVector",
    "InstanceSpace",
    "build_instance_space",
    "compute_features",
    "ClustererSpec",
    "ari",
    "gmm_em",
    "kmeans_pp",
    "linkage",
    "ConstraintSet",
    "eccentricity_constraint",
    "overlap",
    "penalty",
    "HistoryRecord",
    "RunConfig",
    "RunResult",
    "evaluate",
    "run",
    "step",
    "InitParams",
    "MutationParams",
    "allocate_cluster_sizes",
    "crossover_uniform",
    "init_population",
    "mutate",
    "Gene",
    "Individual",
    "Partition",
    "full_covariance",
    "materialize",
    "IndexObjective",
    "VersusObjective",
    "index_fitness",
    "silhouette_overall",
    "silhouette_samples",
    "versus_fitness",
    "binary_tournament",
    "environmental_select",
    "stochastic_rank",
    "__version__",
]
