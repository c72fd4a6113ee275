"""The generational loop: evaluate, select parents, vary, select survivors.

A run is fully reproducible from its seed: every random decision, including
the initialization seeds handed to stochastic clusterers in versus mode,
derives from one generator owned by the run. The population list is kept in
stochastic-rank order between generations, so position doubles as rank for
tournament selection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .constraints import ConstraintSet, eccentricity_constraint, overlap, penalty_terms
from .errors import ConfigurationError
from .genetics import (
    InitParams,
    MutationContext,
    MutationParams,
    crossover_uniform,
    init_population,
    mutate,
)
from .model import Individual, materialize
from .numerics import make_rng, pairwise_distances
from .objectives import (
    IndexObjective,
    VersusObjective,
    silhouette_overall,
    versus_scores,
)
from .selection import (
    RankedPopulation,
    binary_tournament,
    environmental_select,
    stochastic_rank,
)

logger = logging.getLogger(__name__)

MODES = ("index", "versus")


@dataclass
class RunConfig:
    """Everything one seeded run needs."""

    mode: str
    init: InitParams
    objective: IndexObjective | VersusObjective
    mutation: MutationParams = field(default_factory=MutationParams)
    constraints: ConstraintSet = field(default_factory=ConstraintSet)
    generations: int = 100
    pop_size: int = 10
    crossover_prob: float = 0.7
    fitness_prob: float | None = None  # default 0.5 (index) / 0.75 (versus)
    seed: int = 0
    num_runs: int = 1
    best_selection: str = "fitness"  # or "rank"

    @property
    def direction(self) -> str:
        return "minimize" if self.mode == "index" else "maximize"

    def resolved(self) -> "RunConfig":
        """A validated copy with mode-dependent defaults filled in."""
        cfg = replace(self)
        if cfg.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}")
        if cfg.mode == "index" and not isinstance(cfg.objective, IndexObjective):
            raise ConfigurationError("index mode needs an index objective (target)")
        if cfg.mode == "versus" and not isinstance(cfg.objective, VersusObjective):
            raise ConfigurationError(
                "versus mode needs a versus objective (winner and loser)"
            )
        if cfg.fitness_prob is None:
            cfg.fitness_prob = 0.5 if cfg.mode == "index" else 0.75
        if not 0.0 <= cfg.fitness_prob <= 1.0:
            raise ConfigurationError("fitness_prob must lie in [0, 1]")
        if not 0.0 <= cfg.crossover_prob <= 1.0:
            raise ConfigurationError("crossover_prob must lie in [0, 1]")
        if cfg.generations < 0:
            raise ConfigurationError("generations must be >= 0")
        if cfg.pop_size < 2:
            raise ConfigurationError("pop_size must be >= 2")
        if cfg.num_runs < 1:
            raise ConfigurationError("num_runs must be >= 1")
        if cfg.best_selection not in ("fitness", "rank"):
            raise ConfigurationError("best_selection must be 'fitness' or 'rank'")
        if cfg.mode == "versus" and cfg.mutation.mean_operator == "pso_informed":
            raise ConfigurationError(
                "pso_informed needs a silhouette target; use index mode"
            )
        cfg.init.validate()
        cfg.mutation.validate()
        cfg.constraints.validate()
        cfg.objective.validate()
        return cfg

    def mutation_context(self) -> MutationContext:
        target = self.objective.target if self.mode == "index" else None
        return MutationContext(target_silhouette=target)


@dataclass
class HistoryRecord:
    """Per-generation snapshot of the rank-best individual (plus the
    population mean fitness)."""

    generation: int
    best_fitness: float
    mean_fitness: float
    best_silhouette: float
    best_overlap: float
    best_eccentricity: float
    best_penalty: float

    FIELDS = (
        "generation",
        "best_fitness",
        "mean_fitness",
        "best_silhouette",
        "best_overlap",
        "best_eccentricity",
        "best_penalty",
    )


@dataclass
class RunResult:
    best: Individual
    history: list[HistoryRecord]
    seed: int


def evaluate(
    ind: Individual, config: RunConfig, rng: np.random.Generator
) -> Individual:
    """Cache fitness, penalty, and the diagnostic values on an individual.

    One distance matrix is shared between the silhouette and the overlap
    computation. Versus-mode fitness draws fresh clusterer seeds from rng,
    so re-evaluating the same individual can legitimately change its score.
    """
    if ind.points is None:
        materialize(ind)
    dists = pairwise_distances(ind.points)
    ind.overlap = overlap(ind.points, ind.labels, dists)
    ind.eccentricity = eccentricity_constraint(ind)
    ind.penalty = penalty_terms(ind.overlap, ind.eccentricity, config.constraints)
    if config.mode == "index":
        ind.silhouette = silhouette_overall(ind.points, ind.labels, dists)
        ind.fitness = abs(config.objective.target - ind.silhouette)
    else:
        ari_w, ari_l = versus_scores(ind, config.objective, rng, dists)
        ind.ari_pair = (ari_w, ari_l)
        ind.fitness = ari_w - ari_l
    return ind


def _record(population: list[Individual], generation: int) -> HistoryRecord:
    best = population[0]  # population is kept in rank order
    silhouette = best.silhouette
    if silhouette is None:
        silhouette = silhouette_overall(best.points, best.labels)
        best.silhouette = silhouette
    return HistoryRecord(
        generation=generation,
        best_fitness=best.fitness,
        mean_fitness=float(np.mean([ind.fitness for ind in population])),
        best_silhouette=silhouette,
        best_overlap=best.overlap,
        best_eccentricity=best.eccentricity,
        best_penalty=best.penalty,
    )


def step(
    population: list[Individual], config: RunConfig, rng: np.random.Generator
) -> list[Individual]:
    """One generation: tournaments, crossover, mutation, evaluation, and
    environmental selection of the pooled parents and offspring.

    Expects (and returns) a population in rank order.
    """
    n = len(population)
    ranked = RankedPopulation(np.arange(n), config.fitness_prob)
    ctx = config.mutation_context()
    offspring: list[Individual] = []
    while len(offspring) < config.pop_size:
        pa = population[binary_tournament(ranked, rng)]
        pb = population[binary_tournament(ranked, rng)]
        if rng.random() < config.crossover_prob:
            ca, cb = crossover_uniform(pa, pb, rng)
        else:
            ca, cb = pa.clone(), pb.clone()
        offspring.append(mutate(ca, config.mutation, ctx, rng))
        if len(offspring) < config.pop_size:
            offspring.append(mutate(cb, config.mutation, ctx, rng))
    for child in offspring:
        evaluate(child, config, rng)
    return environmental_select(
        population + offspring,
        config.fitness_prob,
        config.pop_size,
        rng,
        config.direction,
    )


def pick_best(population: list[Individual], config: RunConfig) -> Individual:
    """The run's chosen dataset: fitness-best by default, or the rank-best
    survivor when configured."""
    if config.best_selection == "rank":
        return population[0]
    fitness = [ind.fitness for ind in population]
    idx = int(np.argmin(fitness) if config.direction == "minimize" else np.argmax(fitness))
    return population[idx]


def run(config: RunConfig) -> RunResult:
    """Initialize, iterate `generations` steps, and return the chosen
    dataset plus the per-generation history (generations + 1 records)."""
    cfg = config.resolved()
    rng = make_rng(cfg.seed)
    population = init_population(cfg.init, cfg.pop_size, rng)
    for ind in population:
        evaluate(ind, cfg, rng)
    ranked = stochastic_rank(population, cfg.fitness_prob, rng, cfg.direction)
    population = [population[i] for i in ranked.ordering]
    history = [_record(population, 0)]
    for generation in range(1, cfg.generations + 1):
        population = step(population, cfg, rng)
        history.append(_record(population, generation))
    return RunResult(best=pick_best(population, cfg), history=history, seed=cfg.seed)
