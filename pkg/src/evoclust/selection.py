"""Stochastic ranking, tournament parent selection, and truncation.

Stochastic ranking orders a population with a bubble-sort-like sequence of
adjacent comparisons: a pair is compared on fitness when both individuals
are feasible or with probability fitness_prob, and on constraint penalty
otherwise. Sweeps stop early once a pass makes no swap. Ties never swap,
so the procedure is stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, StaleIndividualError
from .model import Individual

DIRECTIONS = ("minimize", "maximize")


@dataclass
class RankedPopulation:
    """A permutation of population indices, best rank first."""

    ordering: np.ndarray
    fitness_prob: float
    positions: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.positions = np.empty_like(self.ordering)
        self.positions[self.ordering] = np.arange(self.ordering.shape[0])


def stochastic_rank(
    population: list[Individual],
    fitness_prob: float,
    rng: np.random.Generator,
    direction: str = "minimize",
) -> RankedPopulation:
    if direction not in DIRECTIONS:
        raise ConfigurationError(f"direction must be one of {DIRECTIONS}")
    n = len(population)
    for ind in population:
        if ind.stale:
            raise StaleIndividualError("cannot rank an unevaluated individual")
    fitness = np.array([ind.fitness for ind in population])
    if direction == "maximize":
        fitness = -fitness
    pen = np.array([ind.penalty for ind in population])
    order = np.arange(n)
    for _ in range(n):
        swapped = False
        for i in range(n - 1):
            a, b = order[i], order[i + 1]
            u = rng.random()
            if (pen[a] == 0.0 and pen[b] == 0.0) or u < fitness_prob:
                if fitness[a] > fitness[b]:
                    order[i], order[i + 1] = b, a
                    swapped = True
            elif pen[a] > pen[b]:
                order[i], order[i + 1] = b, a
                swapped = True
        if not swapped:
            break
    return RankedPopulation(ordering=order, fitness_prob=fitness_prob)


def binary_tournament(ranked: RankedPopulation, rng: np.random.Generator) -> int:
    """Index of the better-ranked of two distinct uniformly drawn
    individuals (the whole population when it has only one member)."""
    n = ranked.ordering.shape[0]
    if n == 1:
        return int(ranked.ordering[0])
    a, b = rng.choice(n, size=2, replace=False)
    return int(a if ranked.positions[a] < ranked.positions[b] else b)


def environmental_select(
    pool: list[Individual],
    fitness_prob: float,
    mu: int,
    rng: np.random.Generator,
    direction: str = "minimize",
) -> list[Individual]:
    """Stochastically rank the pooled parents and offspring and keep the
    first mu, returned in rank order."""
    if len(pool) < mu:
        raise ConfigurationError(
            f"selection pool of {len(pool)} cannot fill a population of {mu}"
        )
    ranked = stochastic_rank(pool, fitness_prob, rng, direction)
    return [pool[i] for i in ranked.ordering[:mu]]
