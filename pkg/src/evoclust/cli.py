"""Command-line interface.

Subcommands:

* ``generate``       -- evolve datasets from a JSON config (optionally a
  Cartesian parameter sweep) and export dataset/history CSVs.
* ``versus``         -- same, for winner-vs-loser configs; adds per-run ARI
  result rows and a head-to-head summary grid.
* ``analyze``        -- compute problem features and per-algorithm ARI for
  existing dataset CSVs.
* ``instance-space`` -- embed an analyze output into 2-D and export
  coordinates plus component loadings.
* ``operator-study`` -- convergence traces for every mean-mutation operator
  across four init/target scenarios.

Exit codes: 0 success, 1 runtime failure, 2 configuration/input error.
Figures are rendered next to every delimited output unless --no-plots is
given. The HAWKS_THREADS environment variable caps worker parallelism
(default: all logical cores).
"""

from __future__ import annotations

import argparse
import copy
import glob as globmod
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from itertools import product
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import FEATURE_NAMES, FeatureVector, build_instance_space, compute_features
from .clusterers import ClustererSpec, ari, gmm_em, kmeans_pp, linkage
from .constraints import ConstraintSet
from .engine import RunConfig, run
from .errors import ConfigurationError, DegenerateModelError
from .genetics import InitParams, MutationParams
from .io import (
    load_json,
    read_dataset_csv,
    read_table_csv,
    write_dataset_csv,
    write_history_csv,
    write_manifest,
    write_rows_csv,
)
from .numerics import child_seed
from .objectives import IndexObjective, VersusObjective

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_RUNTIME, EXIT_CONFIG = 0, 1, 2

ARI_COLUMNS = (
    "ari_avg_link",
    "ari_avg_link_2k",
    "ari_gmm",
    "ari_kmeanspp",
    "ari_single_link",
    "ari_single_link_2k",
)


def worker_count() -> int:
    env = os.environ.get("HAWKS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigurationError(f"HAWKS_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


# ----------------------------------------------------------------------
# Config parsing
# ----------------------------------------------------------------------

def _strict_fields(section: str, data: dict, allowed) -> None:
    unknown = set(data) - set(allowed)
    if unknown:
        raise ConfigurationError(
            f"config section {section!r}: unknown field(s) {sorted(unknown)}; "
            f"allowed: {sorted(allowed)}"
        )


def _clusterer_from_json(name: str, data) -> ClustererSpec:
    if isinstance(data, str):
        data = {"kind": data}
    if not isinstance(data, dict):
        raise ConfigurationError(f"objective.{name} must be a string or object")
    _strict_fields(f"objective.{name}", data, ("kind", "k", "init_seed", "max_iter", "tol"))
    if "kind" not in data:
        raise ConfigurationError(f"objective.{name} needs a 'kind'")
    return ClustererSpec(**data)


def build_config(data: dict) -> RunConfig:
    """Turn a JSON config dict (one sweep combination) into a RunConfig."""
    data = copy.deepcopy(data)
    _strict_fields(
        "top level",
        data,
        (
            "mode", "init", "mutation", "objective", "constraints",
            "generations", "pop_size", "crossover_prob", "fitness_prob",
            "seed", "num_runs", "best_selection", "sweep",
        ),
    )
    mode = data.get("mode")
    if mode not in ("index", "versus"):
        raise ConfigurationError(f"config field 'mode' must be 'index' or 'versus', got {mode!r}")
    init_data = data.get("init")
    if not isinstance(init_data, dict):
        raise ConfigurationError("config needs an 'init' section")
    _strict_fields(
        "init", init_data,
        ("n_points", "n_clusters", "n_dims", "var_upper", "mean_upper",
         "equal_sizes", "min_cluster_size"),
    )
    for required in ("n_points", "n_clusters", "n_dims"):
        if required not in init_data:
            raise ConfigurationError(f"config field 'init.{required}' is required")
    init = InitParams(**init_data)
    mut_data = data.get("mutation", {})
    _strict_fields(
        "mutation", mut_data,
        ("mean_operator", "gaussian_width", "de_factor", "rotation_power",
         "prob_mean", "prob_cov"),
    )
    mutation = MutationParams(**mut_data)
    obj_data = data.get("objective")
    if not isinstance(obj_data, dict):
        raise ConfigurationError("config needs an 'objective' section")
    if mode == "index":
        _strict_fields("objective", obj_data, ("target",))
        if "target" not in obj_data:
            raise ConfigurationError("index objective needs 'target'")
        objective = IndexObjective(target=float(obj_data["target"]))
    else:
        _strict_fields("objective", obj_data, ("winner", "loser"))
        if "winner" not in obj_data or "loser" not in obj_data:
            raise ConfigurationError("versus objective needs 'winner' and 'loser'")
        objective = VersusObjective(
            winner=_clusterer_from_json("winner", obj_data["winner"]),
            loser=_clusterer_from_json("loser", obj_data["loser"]),
        )
    cons_data = data.get("constraints", {})
    _strict_fields("constraints", cons_data, ("overlap_upper", "eccen_lower"))
    constraints = ConstraintSet(**cons_data)
    config = RunConfig(
        mode=mode,
        init=init,
        objective=objective,
        mutation=mutation,
        constraints=constraints,
        generations=int(data.get("generations", 100)),
        pop_size=int(data.get("pop_size", 10)),
        crossover_prob=float(data.get("crossover_prob", 0.7)),
        fitness_prob=data.get("fitness_prob"),
        seed=int(data.get("seed", 0)),
        num_runs=int(data.get("num_runs", 1)),
        best_selection=data.get("best_selection", "fitness"),
    )
    config.resolved()  # validate eagerly so errors surface before compute
    return config


def _apply_dotted(data: dict, path: str, value) -> None:
    keys = path.split(".")
    node = data
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigurationError(f"sweep path {path!r} does not address an object")
    node[keys[-1]] = value


def sweep_combinations(data: dict) -> list[dict]:
    """Expand the optional 'sweep' section (dotted field -> value list)
    into the Cartesian product of concrete config dicts."""
    sweep = data.get("sweep")
    if not sweep:
        base = copy.deepcopy(data)
        base.pop("sweep", None)
        return [base]
    if not isinstance(sweep, dict) or not all(isinstance(v, list) for v in sweep.values()):
        raise ConfigurationError("'sweep' must map dotted field paths to value lists")
    keys = sorted(sweep)
    combos = []
    for values in product(*(sweep[k] for k in keys)):
        combo = copy.deepcopy(data)
        combo.pop("sweep", None)
        for key, value in zip(keys, values):
            _apply_dotted(combo, key, value)
        combos.append(combo)
    return combos


# ----------------------------------------------------------------------
# Run planning and execution
# ----------------------------------------------------------------------

def _plan_runs(data: dict, out_dir: Path, runs_override, seed_override, want_plots):
    """Materialize every (combo, run) task with its derived seed and paths."""
    if runs_override is not None:
        data = dict(data, num_runs=int(runs_override))
    if seed_override is not None:
        data = dict(data, seed=int(seed_override))
    combos = sweep_combinations(data)
    tasks = []
    for combo_idx, combo in enumerate(combos):
        config = build_config(combo)
        subdir = out_dir if len(combos) == 1 else out_dir / f"combo_{combo_idx:02d}"
        for run_idx in range(config.num_runs):
            run_seed = config.seed + combo_idx * config.num_runs + run_idx
            run_config = copy.deepcopy(config)
            run_config.seed = run_seed
            tasks.append(
                {
                    "combo_idx": combo_idx,
                    "combo": combo,
                    "run_idx": run_idx,
                    "config": run_config,
                    "seed": run_seed,
                    "dataset_path": subdir / f"dataset_{run_seed}.csv",
                    "history_path": subdir / f"history_{run_seed}.csv",
                    "plots": want_plots,
                }
            )
    return combos, tasks


def _execute_run(task: dict) -> dict:
    """Worker body: one evolutionary run plus its file exports."""
    from . import plots  # imported here so workers configure Agg themselves

    start = time.perf_counter()
    result = run(task["config"])
    best = result.best
    write_dataset_csv(task["dataset_path"], best.points, best.labels)
    write_history_csv(task["history_path"], result.history)
    if task["plots"]:
        stem = task["dataset_path"].with_suffix("")
        plots.save_dataset_plot(
            str(stem) + ".png", best.points, best.labels,
            title=f"seed {task['seed']}",
        )
        plots.save_history_plot(
            str(task["history_path"].with_suffix("")) + ".png", result.history
        )
    row = None
    if task["config"].mode == "versus":
        ari_w, ari_l = best.ari_pair
        row = [task["run_idx"], task["seed"], ari_w, ari_l, ari_w - ari_l]
    return {
        "combo_idx": task["combo_idx"],
        "run_idx": task["run_idx"],
        "seed": task["seed"],
        "elapsed": time.perf_counter() - start,
        "row": row,
        "history": [
            (rec.generation, rec.best_silhouette, rec.best_overlap)
            for rec in result.history
        ],
    }


def _run_tasks(tasks):
    workers = min(worker_count(), max(1, len(tasks)))
    if workers == 1:
        return [_execute_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_execute_run, tasks, chunksize=1))


def _manifest_payload(command, data, tasks, out_dir):
    outputs = []
    for t in tasks:
        paths = [t["dataset_path"], t["history_path"]]
        if t["plots"]:
            paths += [p.with_suffix(".png") for p in paths]
        outputs.extend(str(p.relative_to(out_dir)) for p in paths)
    return {
        "tool": "evoclust",
        "version": __version__,
        "command": command,
        "config": data,
        "seeds": [t["seed"] for t in tasks],
        "outputs": sorted(outputs),
        "timings": None,
        "status": "planned",
    }


def _finish_manifest(manifest_path, payload, results, extra_outputs=()):
    payload = dict(payload)
    payload["outputs"] = sorted(payload["outputs"] + [str(p) for p in extra_outputs])
    payload["timings"] = {
        "total_seconds": sum(r["elapsed"] for r in results),
        "per_run_seconds": {str(r["seed"]): r["elapsed"] for r in results},
    }
    payload["status"] = "complete"
    write_manifest(manifest_path, payload)
    out_dir = manifest_path.parent
    missing = [p for p in payload["outputs"] if not (out_dir / p).exists()]
    if missing:
        raise RuntimeError(f"manifest names missing outputs: {missing}")


def cmd_generate(args) -> int:
    data = load_json(args.config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    combos, tasks = _plan_runs(data, out_dir, args.runs, args.seed, not args.no_plots)
    logger.info("generate: %d combination(s), %d run(s)", len(combos), len(tasks))
    payload = _manifest_payload("generate", data, tasks, out_dir)
    manifest_path = out_dir / "manifest.json"
    write_manifest(manifest_path, payload)
    results = _run_tasks(tasks)
    _finish_manifest(manifest_path, payload, results)
    return EXIT_OK


def cmd_versus(args) -> int:
    data = load_json(args.config)
    if data.get("mode") != "versus":
        raise ConfigurationError("the versus command needs a config with mode='versus'")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    combos, tasks = _plan_runs(data, out_dir, args.runs, args.seed, not args.no_plots)
    logger.info("versus: %d head-to-head(s), %d run(s)", len(combos), len(tasks))
    payload = _manifest_payload("versus", data, tasks, out_dir)
    manifest_path = out_dir / "manifest.json"
    write_manifest(manifest_path, payload)
    results = _run_tasks(tasks)

    result_header = ["run", "seed", "ari_winner", "ari_loser", "diff"]
    extra = []
    by_combo: dict[int, list] = {}
    for res in results:
        by_combo.setdefault(res["combo_idx"], []).append(res)
    summary_rows = []
    for combo_idx, combo_results in sorted(by_combo.items()):
        combo = combos[combo_idx]
        config = build_config(combo)
        winner, loser = config.objective.winner.kind, config.objective.loser.kind
        subdir = out_dir if len(combos) == 1 else out_dir / f"combo_{combo_idx:02d}"
        rows = [r["row"] for r in sorted(combo_results, key=lambda r: r["run_idx"])]
        write_rows_csv(subdir / "results.csv", result_header, rows)
        extra.append((subdir / "results.csv").relative_to(out_dir))
        summary_rows.extend([winner, loser, *row] for row in rows)
    write_rows_csv(
        out_dir / "summary.csv",
        ["winner", "loser", "run", "seed", "ari_winner", "ari_loser", "diff"],
        summary_rows,
    )
    extra.append(Path("summary.csv"))
    if not args.no_plots:
        from . import plots

        plots.save_versus_grid_plot(
            out_dir / "versus_grid.png",
            [(r[0], r[1], r[4], r[5]) for r in summary_rows],
        )
        extra.append(Path("versus_grid.png"))
    _finish_manifest(manifest_path, payload, results, extra)
    return EXIT_OK


# ----------------------------------------------------------------------
# analyze / instance-space
# ----------------------------------------------------------------------

def _expand_datasets(patterns) -> list[str]:
    paths = []
    for pattern in patterns:
        matches = sorted(globmod.glob(pattern))
        if matches:
            paths.extend(matches)
        elif Path(pattern).exists():
            paths.append(pattern)
        else:
            raise ConfigurationError(f"no datasets match {pattern!r}")
    return paths


def _safe_ari(fn, truth) -> float:
    try:
        return ari(fn(), truth)
    except DegenerateModelError as exc:
        logger.warning("clusterer failed (%s); scoring ARI 0", exc)
        return 0.0


def cmd_analyze(args) -> int:
    paths = _expand_datasets(args.datasets)
    with_2k = args.linkage_2k
    columns = [c for c in ARI_COLUMNS if with_2k or not c.endswith("_2k")]
    header = ["dataset", *FEATURE_NAMES, *columns]
    rows = []
    ari_values: dict[str, list[float]] = {c: [] for c in columns}
    for idx, path in enumerate(paths):
        points, labels = read_dataset_csv(path)
        k = int(np.unique(labels).shape[0])
        if k < 2:
            print(
                f"analyze: rejected {path}: only {k} cluster present "
                "(silhouette undefined)",
                file=sys.stderr,
            )
            continue
        features = compute_features(points, labels)
        seed = child_seed(args.seed, idx)
        scores = {
            "ari_avg_link": _safe_ari(lambda: linkage(points, k, "average"), labels),
            "ari_gmm": _safe_ari(lambda: gmm_em(points, k, seed), labels),
            "ari_kmeanspp": _safe_ari(lambda: kmeans_pp(points, k, seed), labels),
            "ari_single_link": _safe_ari(lambda: linkage(points, k, "single"), labels),
        }
        if with_2k:
            k2 = min(2 * k, points.shape[0])
            scores["ari_avg_link_2k"] = _safe_ari(
                lambda: linkage(points, k2, "average"), labels
            )
            scores["ari_single_link_2k"] = _safe_ari(
                lambda: linkage(points, k2, "single"), labels
            )
        for c in columns:
            ari_values[c].append(scores[c])
        rows.append([path, *features.as_array(), *(scores[c] for c in columns)])
    if not rows:
        raise ConfigurationError("no analyzable datasets (all rejected)")
    out_path = Path(args.out)
    write_rows_csv(out_path, header, rows)
    if not args.no_plots:
        from . import plots

        plots.save_ari_boxplot(str(out_path.with_suffix("")) + "_ari.png", ari_values)
    logger.info("analyze: wrote %d rows to %s", len(rows), out_path)
    return EXIT_OK


def _features_from_row(header, row) -> FeatureVector:
    values = dict(zip(header, row))
    return FeatureVector(
        connectivity=float(values["connectivity"]),
        dimensionality=int(float(values["dimensionality"])),
        avg_eccentricity=float(values["avg_eccentricity"]),
        entropy=float(values["entropy"]),
        num_clusters=int(float(values["num_clusters"])),
        sil_mean=float(values["sil_mean"]),
        sil_std=float(values["sil_std"]),
    )


def best_algorithm(header, row, tol: float = 1e-12) -> str:
    """Name of the top-ARI algorithm, or 'tied' when at least two share a
    perfect top score."""
    values = dict(zip(header, row))
    scores = [(c, float(values[c])) for c in ARI_COLUMNS if c in values]
    top = max(s for _, s in scores)
    top_names = [c for c, s in scores if s >= top - tol]
    if len(top_names) >= 2 and top >= 1.0 - tol:
        return "tied"
    return top_names[0].removeprefix("ari_")


def cmd_instance_space(args) -> int:
    header, rows = read_table_csv(args.features)
    missing = [c for c in ("dataset", *FEATURE_NAMES) if c not in header]
    if missing:
        raise ConfigurationError(f"{args.features}: missing column(s) {missing}")
    if len(rows) < 3:
        raise ConfigurationError(
            f"instance space needs at least 3 datasets, got {len(rows)}"
        )
    features = [_features_from_row(header, row) for row in rows]
    space = build_instance_space(features)
    datasets = [dict(zip(header, row))["dataset"] for row in rows]
    best = [best_algorithm(header, row) for row in rows]
    out_path = Path(args.out)
    write_rows_csv(
        out_path,
        ["dataset", "pc1", "pc2", "source", "best_algorithm"],
        (
            [datasets[i], space.coordinates[i, 0], space.coordinates[i, 1],
             args.source, best[i]]
            for i in range(len(rows))
        ),
    )
    loadings_path = Path(str(out_path.with_suffix("")) + "_loadings.csv")
    write_rows_csv(loadings_path, list(FEATURE_NAMES), space.component_loadings)
    if not args.no_plots:
        from . import plots

        plots.save_instance_space_plot(
            str(out_path.with_suffix("")) + ".png", space.coordinates, best
        )
    logger.info(
        "instance-space: %d datasets, explained variance %s",
        len(rows),
        np.round(space.explained_variance_ratio, 4).tolist(),
    )
    return EXIT_OK


# ----------------------------------------------------------------------
# operator study
# ----------------------------------------------------------------------

OPERATOR_STUDY_TARGETS = {"low": 0.2, "high": 0.9}
# Mean-box multipliers relative to the default sampling box: 'overlapping'
# starts clusters on top of each other (silhouette ~0.1), 'apart' well
# separated (silhouette > 0.7).
OPERATOR_STUDY_SPREAD = {"overlapping": 0.3, "apart": 10.0}


def operator_study_config(operator, scenario, dim, n_points, n_clusters,
                          generations) -> RunConfig:
    init_name, target_name = scenario.split("_")
    init = InitParams(
        n_points=n_points,
        n_clusters=n_clusters,
        n_dims=dim,
        var_upper=1.0,
        mean_upper=10.0 * OPERATOR_STUDY_SPREAD[init_name],
    )
    return RunConfig(
        mode="index",
        init=init,
        objective=IndexObjective(target=OPERATOR_STUDY_TARGETS[target_name]),
        mutation=MutationParams(mean_operator=operator),
        constraints=ConstraintSet(overlap_upper=0.0),
        generations=generations,
        fitness_prob=0.5,
    )


def cmd_operator_study(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    dims = [int(d) for d in args.dims.split(",")]
    scenarios = [
        f"{init}_{target}"
        for init in OPERATOR_STUDY_SPREAD
        for target in OPERATOR_STUDY_TARGETS
    ]
    from .genetics import MEAN_OPERATORS

    tasks = []
    for s_idx, scenario in enumerate(scenarios):
        for d_idx, dim in enumerate(dims):
            for o_idx, operator in enumerate(MEAN_OPERATORS):
                for run_idx in range(args.runs):
                    config = operator_study_config(
                        operator, scenario, dim,
                        args.n_points, args.n_clusters, args.generations,
                    )
                    config.seed = child_seed(args.seed, s_idx, d_idx, o_idx, run_idx)
                    tasks.append(
                        {
                            "combo_idx": (s_idx, d_idx, o_idx),
                            "combo": None,
                            "run_idx": run_idx,
                            "config": config,
                            "seed": config.seed,
                            "dataset_path": out_dir / "runs"
                            / f"dataset_{operator}_{scenario}_{dim}_{run_idx}.csv",
                            "history_path": out_dir / "runs"
                            / f"history_{operator}_{scenario}_{dim}_{run_idx}.csv",
                            "plots": False,
                            "label": (operator, scenario, dim, config.seed),
                        }
                    )
    logger.info("operator-study: %d runs", len(tasks))
    payload = _manifest_payload("operator-study", {"runs": args.runs}, tasks, out_dir)
    manifest_path = out_dir / "manifest.json"
    write_manifest(manifest_path, payload)
    results = _run_tasks(tasks)
    trace_rows = []
    for task, res in zip(tasks, results):
        operator, scenario, dim, seed = task["label"]
        for generation, s_all, ov in res["history"]:
            trace_rows.append([operator, scenario, dim, seed, generation, s_all, ov])
    traces_path = out_dir / "traces.csv"
    write_rows_csv(
        traces_path,
        ["operator", "scenario", "dim", "seed", "generation", "s_all", "overlap"],
        trace_rows,
    )
    extra = [Path("traces.csv")]
    if not args.no_plots:
        from . import plots

        plots.save_operator_traces_plot(
            out_dir / "traces.png",
            [(r[0], r[1], r[2], r[3], r[4], r[5]) for r in trace_rows],
        )
        extra.append(Path("traces.png"))
    _finish_manifest(manifest_path, payload, results, extra)
    return EXIT_OK


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoclust",
        description="Evolve synthetic clustering benchmarks and analyze them.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="evolve datasets from a config")
    gen.add_argument("--config", required=True)
    gen.add_argument("--out", required=True)
    gen.add_argument("--runs", type=int, default=None, help="override num_runs")
    gen.add_argument("--seed", type=int, default=None, help="override base seed")
    gen.add_argument("--no-plots", action="store_true")
    gen.set_defaults(func=cmd_generate)

    vs = sub.add_parser("versus", help="head-to-head dataset evolution")
    vs.add_argument("--config", required=True)
    vs.add_argument("--out", required=True)
    vs.add_argument("--runs", type=int, default=None)
    vs.add_argument("--seed", type=int, default=None)
    vs.add_argument("--no-plots", action="store_true")
    vs.set_defaults(func=cmd_versus)

    an = sub.add_parser("analyze", help="problem features + algorithm ARI")
    an.add_argument("datasets", nargs="+", help="dataset CSVs or glob patterns")
    an.add_argument("--out", required=True)
    an.add_argument("--linkage-2k", action="store_true",
                    help="also run both linkages with twice the true k")
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--no-plots", action="store_true")
    an.set_defaults(func=cmd_analyze)

    ins = sub.add_parser("instance-space", help="2-D embedding of an analyze output")
    ins.add_argument("features", help="features CSV from 'analyze'")
    ins.add_argument("--out", required=True)
    ins.add_argument("--source", default="evoclust", help="source tag column value")
    ins.add_argument("--no-plots", action="store_true")
    ins.set_defaults(func=cmd_instance_space)

    ops = sub.add_parser("operator-study", help="mutation-operator comparison")
    ops.add_argument("--out", required=True)
    ops.add_argument("--runs", type=int, default=30, help="seeds per scenario")
    ops.add_argument("--seed", type=int, default=0)
    ops.add_argument("--generations", type=int, default=100)
    ops.add_argument("--dims", default="2,50")
    ops.add_argument("--n-points", type=int, default=500)
    ops.add_argument("--n-clusters", type=int, default=10)
    ops.add_argument("--no-plots", action="store_true")
    ops.set_defaults(func=cmd_operator_study)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=logging.INFO, stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"evoclust: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 -- CLI boundary
        logger.exception("run failed: %s", exc)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
