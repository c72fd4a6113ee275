"""Population initialization, crossover, and the mutation-operator family.

Mean mutation comes in five flavours:

* ``original``  -- resample around the current mean, N(mean, width * I).
* ``rails``     -- move toward/away from one random other cluster.
* ``pso_random``   -- weighted pull toward one other cluster and the global
  data mean, direction chosen by a fair coin.
* ``pso_informed`` -- same displacement, direction chosen by the sign of
  (current silhouette - target silhouette).
* ``de``        -- add a fixed multiple of the difference between two other
  cluster means.

Covariance mutation composes a fractional random rotation onto the gene's
accumulated rotation and rescales the axis variances by exp(x - 1/D) with
x Dirichlet(1,...,1), which has unit product and therefore preserves the
covariance determinant exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigurationError, OperatorInapplicableError
from .model import Gene, Individual, labels_from_sizes, materialize
from .numerics import haar_rotation, rotation_fractional_power

logger = logging.getLogger(__name__)

MEAN_OPERATORS = ("original", "rails", "pso_random", "pso_informed", "de")

# Axis variances are clipped below at this fraction of the sampling bound at
# initialization, keeping the Cholesky factor well conditioned.
VARIANCE_FLOOR_FRACTION = 1e-6


@dataclass
class InitParams:
    """Sampling bounds and dataset shape for population initialization."""

    n_points: int
    n_clusters: int
    n_dims: int
    var_upper: float = 1.0
    mean_upper: float | None = None  # default: 10 * sqrt(var_upper)
    equal_sizes: bool = False
    min_cluster_size: int = 2

    def __post_init__(self):
        if self.mean_upper is None:
            self.mean_upper = 10.0 * float(np.sqrt(self.var_upper))

    def validate(self) -> None:
        if self.n_points < 1 or self.n_clusters < 1 or self.n_dims < 1:
            raise ConfigurationError("n_points, n_clusters, n_dims must be >= 1")
        if self.var_upper <= 0 or self.mean_upper <= 0:
            raise ConfigurationError("sampling bounds must be positive")
        if self.n_clusters * max(1, self.min_cluster_size) > self.n_points:
            raise ConfigurationError(
                f"{self.n_clusters} clusters of at least "
                f"{max(1, self.min_cluster_size)} points will not fit in "
                f"{self.n_points} points"
            )


@dataclass
class MutationParams:
    mean_operator: str = "pso_random"
    gaussian_width: float = 1.0  # variance of the 'original' operator's step
    de_factor: float = 1.0
    rotation_power: float = 0.1
    prob_mean: float | None = None  # default 1/K, resolved by the engine
    prob_cov: float | None = None

    def validate(self) -> None:
        if self.mean_operator not in MEAN_OPERATORS:
            raise ConfigurationError(
                f"unknown mean operator {self.mean_operator!r}; "
                f"choose from {MEAN_OPERATORS}"
            )
        if self.gaussian_width <= 0:
            raise ConfigurationError("gaussian_width must be positive")
        if not 0.0 <= self.de_factor <= 2.0:
            raise ConfigurationError("de_factor must lie in [0, 2]")
        if not 0.0 < self.rotation_power <= 1.0:
            raise ConfigurationError("rotation_power must lie in (0, 1]")
        for name in ("prob_mean", "prob_cov"):
            p = getattr(self, name)
            if p is not None and not 0.0 <= p <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1]")


def allocate_cluster_sizes(
    n_points: int,
    n_clusters: int,
    min_size: int,
    equal: bool,
    rng: np.random.Generator,
) -> np.ndarray:
    """Cluster sizes summing exactly to n_points, each >= min_size.

    Random sizes are min_size + w_i * (N - K * min_size) with w uniform on
    the simplex (Dirichlet(1,...,1)), rounded by the largest-remainder
    method so the integer sizes still sum to N.
    """
    if n_clusters * min_size > n_points:
        raise ConfigurationError(
            f"minimum size {min_size} infeasible for {n_clusters} clusters "
            f"and {n_points} points"
        )
    if equal:
        base, rem = divmod(n_points, n_clusters)
        sizes = np.full(n_clusters, base, dtype=int)
        sizes[:rem] += 1
        return sizes
    weights = rng.dirichlet(np.ones(n_clusters))
    continuous = min_size + weights * (n_points - n_clusters * min_size)
    sizes = np.floor(continuous).astype(int)
    remainder = n_points - int(sizes.sum())
    if remainder > 0:
        fractional = continuous - np.floor(continuous)
        take = np.argsort(-fractional, kind="stable")[:remainder]
        sizes[take] += 1
    return sizes


def init_gene(params: InitParams, size: int, rng: np.random.Generator) -> Gene:
    """Sample a fresh gene: uniform mean and axis variances, Haar rotation,
    and a frozen block of standard-normal base samples."""
    if size < 1:
        raise ConfigurationError("cluster size must be >= 1")
    mean = rng.uniform(0.0, params.mean_upper, params.n_dims)
    variances = rng.uniform(0.0, params.var_upper, params.n_dims)
    variances = np.maximum(variances, VARIANCE_FLOOR_FRACTION * params.var_upper)
    rotation = haar_rotation(params.n_dims, rng)
    base = rng.standard_normal((size, params.n_dims))
    return Gene(mean, variances, rotation, size, base)


def init_population(
    params: InitParams, pop_size: int, rng: np.random.Generator
) -> list[Individual]:
    """Initial population sharing one cluster-size allocation.

    Sizes (and hence the ground-truth labels) are drawn once and shared by
    every individual for the whole run.
    """
    if pop_size < 2:
        raise ConfigurationError("population size must be >= 2")
    params.validate()
    sizes = allocate_cluster_sizes(
        params.n_points,
        params.n_clusters,
        max(1, params.min_cluster_size),
        params.equal_sizes,
        rng,
    )
    labels = labels_from_sizes(sizes)
    population = []
    for _ in range(pop_size):
        genes = [init_gene(params, int(s), rng) for s in sizes]
        population.append(materialize(Individual(genes=genes, labels=labels)))
    return population


def crossover_uniform(
    a: Individual, b: Individual, rng: np.random.Generator
) -> tuple[Individual, Individual]:
    """Uniform crossover at the cluster-component level.

    For each gene index the mean pair is swapped with probability 0.5 and,
    independently, the covariance component (axis variances, rotation, and
    the base samples that travel with them) with probability 0.5.
    """
    if a.n_clusters != b.n_clusters or a.dim != b.dim:
        raise ValueError("parents have incompatible shapes")
    if any(ga.size != gb.size for ga, gb in zip(a.genes, b.genes)):
        raise ValueError("parents have incompatible cluster sizes")
    child_a, child_b = a.clone(), b.clone()
    for ga, gb in zip(child_a.genes, child_b.genes):
        if rng.random() < 0.5:
            ga.mean, gb.mean = gb.mean, ga.mean
        if rng.random() < 0.5:
            ga.axis_variances, gb.axis_variances = gb.axis_variances, ga.axis_variances
            ga.rotation, gb.rotation = gb.rotation, ga.rotation
            ga.base_samples, gb.base_samples = gb.base_samples, ga.base_samples
    for child in (child_a, child_b):
        child.points = None
        child.clear_caches()
    return child_a, child_b


def _random_other_index(i, n_clusters, rng) -> int:
    j = int(rng.integers(n_clusters - 1))
    return j + 1 if j >= i else j


def mutate_mean_original(i, ind, width, rng) -> np.ndarray:
    """Resample around the current mean: N(mean, width * I)."""
    mean = ind.genes[i].mean
    return mean + np.sqrt(width) * rng.standard_normal(mean.shape[0])


def mutate_mean_rails(i, ind, rng) -> np.ndarray:
    """Move toward or away from one random other cluster by a random
    fraction of the separating vector."""
    if ind.n_clusters < 2:
        raise OperatorInapplicableError("rails operator needs at least 2 clusters")
    n = _random_other_index(i, ind.n_clusters, rng)
    w1 = rng.uniform()
    toward = rng.uniform() <= 0.5
    step = w1 * (ind.genes[n].mean - ind.genes[i].mean)
    return ind.genes[i].mean + step if toward else ind.genes[i].mean - step


def _pso_displacement(i, ind, rng) -> np.ndarray:
    n = _random_other_index(i, ind.n_clusters, rng)
    w1 = rng.uniform()
    w2 = rng.uniform()
    mean_i = ind.genes[i].mean
    global_mean = ind.points.mean(axis=0)
    return w1 * (ind.genes[n].mean - mean_i) + w2 * (global_mean - mean_i)


def mutate_mean_pso_random(i, ind, rng) -> np.ndarray:
    """Weighted pull toward one other cluster and the global data mean,
    with a fair coin deciding toward versus away."""
    if ind.n_clusters < 2:
        raise OperatorInapplicableError("pso operator needs at least 2 clusters")
    step = _pso_displacement(i, ind, rng)
    toward = rng.uniform() <= 0.5
    return ind.genes[i].mean + step if toward else ind.genes[i].mean - step


def mutate_mean_pso_informed(i, ind, silhouette, target, rng) -> np.ndarray:
    """Same displacement as pso_random, but the direction comes from the
    sign of (current silhouette - target): move clusters together when the
    dataset is more separated than wanted, apart otherwise."""
    if ind.n_clusters < 2:
        raise OperatorInapplicableError("pso operator needs at least 2 clusters")
    step = _pso_displacement(i, ind, rng)
    if silhouette > target:
        return ind.genes[i].mean + step
    return ind.genes[i].mean - step


def mutate_mean_de(i, ind, factor, rng) -> np.ndarray:
    """Displace by factor * (mean_r1 - mean_r2) for two random other
    clusters, differential-evolution style."""
    if ind.n_clusters < 3:
        raise OperatorInapplicableError("de operator needs at least 3 clusters")
    others = [j for j in range(ind.n_clusters) if j != i]
    picked = rng.choice(len(others), size=2, replace=False)
    r1, r2 = others[picked[0]], others[picked[1]]
    return ind.genes[i].mean + factor * (ind.genes[r1].mean - ind.genes[r2].mean)


def mutate_covariance(gene: Gene, power: float, rng: np.random.Generator) -> Gene:
    """Rotate by a fraction of a fresh Haar rotation and rescale the axis
    variances with unit-product factors, leaving det(covariance) unchanged."""
    rotation_step = rotation_fractional_power(haar_rotation(gene.dim, rng), power)
    x = rng.dirichlet(np.ones(gene.dim))
    factors = np.exp(x - 1.0 / gene.dim)
    return replace(
        gene,
        axis_variances=gene.axis_variances * factors,
        rotation=rotation_step @ gene.rotation,
    )


@dataclass
class MutationContext:
    """Run-level information some operators need (only the informed
    operator reads the target today)."""

    target_silhouette: float | None = None


def _new_mean(i, ind, params, ctx, silhouette, rng) -> np.ndarray:
    op = params.mean_operator
    try:
        if op == "original":
            return mutate_mean_original(i, ind, params.gaussian_width, rng)
        if op == "rails":
            return mutate_mean_rails(i, ind, rng)
        if op == "pso_random":
            return mutate_mean_pso_random(i, ind, rng)
        if op == "pso_informed":
            return mutate_mean_pso_informed(
                i, ind, silhouette, ctx.target_silhouette, rng
            )
        if op == "de":
            return mutate_mean_de(i, ind, params.de_factor, rng)
    except OperatorInapplicableError as exc:
        logger.warning("%s; falling back to the original operator", exc)
        return mutate_mean_original(i, ind, params.gaussian_width, rng)
    raise ConfigurationError(f"unknown mean operator {op!r}")


def mutate(
    ind: Individual,
    params: MutationParams,
    ctx: MutationContext,
    rng: np.random.Generator,
) -> Individual:
    """Per-gene mutation: each gene's mean is perturbed with probability
    prob_mean and its covariance with probability prob_cov.

    New means are all computed from the pre-mutation genotype (gene
    decisions are independent), then applied; the result is re-materialized.
    """
    out = ind.clone()
    if out.points is None:
        materialize(out)
    silhouette = None
    if params.mean_operator == "pso_informed":
        if ctx.target_silhouette is None:
            raise ConfigurationError(
                "pso_informed operator requires a target silhouette"
            )
        from .objectives import silhouette_overall

        silhouette = silhouette_overall(out.points, out.labels)
    prob_mean = 1.0 / out.n_clusters if params.prob_mean is None else params.prob_mean
    prob_cov = 1.0 / out.n_clusters if params.prob_cov is None else params.prob_cov
    new_means: dict[int, np.ndarray] = {}
    for k in range(out.n_clusters):
        if rng.random() < prob_mean:
            new_means[k] = _new_mean(k, out, params, ctx, silhouette, rng)
        if rng.random() < prob_cov:
            out.genes[k] = mutate_covariance(out.genes[k], params.rotation_power, rng)
    for k, mean in new_means.items():
        out.genes[k].mean = mean
    return materialize(out)
