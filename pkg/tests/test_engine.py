import numpy as np
import pytest

from evoclust.clusterers import ClustererSpec
from evoclust.constraints import ConstraintSet
from evoclust.engine import RunConfig, evaluate, pick_best, run, step
from evoclust.errors import ConfigurationError
from evoclust.genetics import InitParams, MutationParams, init_population
from evoclust.numerics import make_rng
from evoclust.objectives import IndexObjective, VersusObjective, silhouette_overall


def index_config(**overrides):
    base = dict(
        mode="index",
        init=InitParams(n_points=80, n_clusters=4, n_dims=2),
        objective=IndexObjective(target=0.7),
        constraints=ConstraintSet(overlap_upper=0.0),
        generations=5,
        pop_size=6,
        seed=42,
    )
    base.update(overrides)
    return RunConfig(**base)


def versus_config(**overrides):
    base = dict(
        mode="versus",
        init=InitParams(n_points=100, n_clusters=4, n_dims=2),
        objective=VersusObjective(
            winner=ClustererSpec("kmeans_pp"), loser=ClustererSpec("single_linkage")
        ),
        constraints=ConstraintSet(overlap_upper=0.1),
        generations=3,
        pop_size=4,
        seed=1,
    )
    base.update(overrides)
    return RunConfig(**base)


class TestConfigValidation:
    def test_mode_objective_mismatch(self):
        with pytest.raises(ConfigurationError):
            index_config(
                objective=VersusObjective(
                    winner=ClustererSpec("gmm"), loser=ClustererSpec("kmeans_pp")
                )
            ).resolved()

    def test_default_fitness_prob_by_mode(self):
        assert index_config().resolved().fitness_prob == 0.5
        assert versus_config().resolved().fitness_prob == 0.75

    def test_informed_operator_needs_index_mode(self):
        cfg = versus_config(mutation=MutationParams(mean_operator="pso_informed"))
        with pytest.raises(ConfigurationError):
            cfg.resolved()

    def test_invalid_sizes_surface_before_compute(self):
        with pytest.raises(ConfigurationError):
            index_config(pop_size=1).resolved()
        with pytest.raises(ConfigurationError):
            index_config(generations=-1).resolved()

    def test_resolved_does_not_mutate_original(self):
        cfg = index_config()
        cfg.resolved()
        assert cfg.fitness_prob is None


class TestEvaluate:
    def test_index_mode_caches(self, rng):
        cfg = index_config().resolved()
        ind = init_population(cfg.init, 2, rng)[0]
        evaluate(ind, cfg, rng)
        assert not ind.stale
        assert ind.fitness == pytest.approx(
            abs(0.7 - silhouette_overall(ind.points, ind.labels))
        )
        assert ind.penalty is not None and ind.overlap is not None

    def test_index_reevaluation_identical(self, rng):
        cfg = index_config().resolved()
        ind = init_population(cfg.init, 2, rng)[0]
        evaluate(ind, cfg, rng)
        first = (ind.fitness, ind.penalty)
        evaluate(ind, cfg, rng)
        assert (ind.fitness, ind.penalty) == first

    def test_versus_reevaluation_may_differ(self):
        cfg = versus_config(
            objective=VersusObjective(
                winner=ClustererSpec("gmm"), loser=ClustererSpec("kmeans_pp")
            )
        ).resolved()
        rng = make_rng(0)
        ind = init_population(cfg.init, 2, rng)[0]
        values = set()
        for _ in range(8):
            evaluate(ind, cfg, rng)
            values.add(ind.fitness)
        # fresh clusterer seeds each evaluation: scores vary on a dataset
        # with touching clusters
        assert len(values) > 1

    def test_fitness_zero_iff_target_met(self, rng):
        cfg = index_config().resolved()
        ind = init_population(cfg.init, 2, rng)[0]
        evaluate(ind, cfg, rng)
        target_cfg = index_config(
            objective=IndexObjective(target=ind.silhouette)
        ).resolved()
        evaluate(ind, target_cfg, rng)
        assert ind.fitness == 0.0


class TestStep:
    def test_population_size_preserved(self, rng):
        cfg = index_config().resolved()
        pop = init_population(cfg.init, cfg.pop_size, rng)
        for ind in pop:
            evaluate(ind, cfg, rng)
        new_pop = step(pop, cfg, rng)
        assert len(new_pop) == cfg.pop_size
        assert all(not ind.stale for ind in new_pop)

    def test_odd_population_size(self, rng):
        cfg = index_config(pop_size=5).resolved()
        pop = init_population(cfg.init, 5, rng)
        for ind in pop:
            evaluate(ind, cfg, rng)
        assert len(step(pop, cfg, rng)) == 5

    def test_no_variation_introduces_no_new_datasets(self, rng):
        cfg = index_config(
            crossover_prob=0.0,
            mutation=MutationParams(prob_mean=0.0, prob_cov=0.0),
        ).resolved()
        pop = init_population(cfg.init, cfg.pop_size, rng)
        for ind in pop:
            evaluate(ind, cfg, rng)
        parent_points = {ind.points.tobytes() for ind in pop}
        new_pop = step(pop, cfg, rng)
        # every survivor is a copy of some original parent
        assert all(ind.points.tobytes() in parent_points for ind in new_pop)
        # and the rank-best dataset survives (ties never swap)
        best = min(ind.fitness for ind in pop)
        assert min(ind.fitness for ind in new_pop) <= best


class TestRun:
    def test_zero_generations_returns_initial_best(self):
        cfg = index_config(generations=0)
        result = run(cfg)
        assert len(result.history) == 1
        assert result.best.fitness == result.history[0].best_fitness

    def test_history_length_and_fields(self):
        cfg = index_config(generations=4)
        result = run(cfg)
        assert len(result.history) == 5
        assert [rec.generation for rec in result.history] == list(range(5))
        for rec in result.history:
            assert np.isfinite(rec.best_silhouette)
            assert np.isfinite(rec.mean_fitness)

    def test_same_seed_same_history(self):
        cfg = index_config(generations=6, seed=77)
        a, b = run(cfg), run(cfg)
        for ra, rb in zip(a.history, b.history):
            assert ra == rb
        assert np.array_equal(a.best.points, b.best.points)

    def test_versus_same_seed_reproducible(self):
        cfg = versus_config(seed=5)
        a, b = run(cfg), run(cfg)
        assert a.best.fitness == b.best.fitness
        assert a.best.ari_pair == b.best.ari_pair
        assert np.array_equal(a.best.points, b.best.points)

    def test_best_is_fitness_best_of_final_population(self):
        cfg = index_config(generations=3)
        result = run(cfg)
        assert result.best.fitness == min(
            rec.best_fitness for rec in result.history[-1:]
        )

    def test_feasible_best_fitness_nonincreasing(self):
        # without constraints every individual is feasible, so ranking is a
        # fitness sort and elitism makes the best fitness monotone
        cfg = index_config(generations=10, constraints=ConstraintSet())
        result = run(cfg)
        fits = [rec.best_fitness for rec in result.history]
        assert all(b <= a + 1e-15 for a, b in zip(fits, fits[1:]))

    def test_rank_best_selection_flag(self):
        cfg = index_config(best_selection="rank", generations=2)
        result = run(cfg)
        assert result.best.fitness == result.history[-1].best_fitness

    def test_evaluation_count(self, monkeypatch):
        import evoclust.engine as engine_mod

        calls = {"n": 0}
        original = engine_mod.evaluate

        def counting(ind, config, rng):
            calls["n"] += 1
            return original(ind, config, rng)

        monkeypatch.setattr(engine_mod, "evaluate", counting)
        cfg = index_config(generations=5, pop_size=6)
        engine_mod.run(cfg)
        assert calls["n"] == 6 * (5 + 1)


class TestPickBest:
    def test_minimize_and_maximize(self, rng):
        cfg_min = index_config().resolved()
        cfg_max = versus_config().resolved()
        pop = init_population(cfg_min.init, 4, rng)
        for i, ind in enumerate(pop):
            ind.fitness = float(i)
            ind.penalty = 0.0
        assert pick_best(pop, cfg_min).fitness == 0.0
        assert pick_best(pop, cfg_max).fitness == 3.0
