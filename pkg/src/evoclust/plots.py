"""Matplotlib figure rendering for the CLI report paths.

Each writer takes already-computed data and saves one PNG next to the
delimited output it illustrates. Nothing here feeds back into the
optimization or the CSV contracts.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .numerics import pca_fit

_CMAP = "tab20"


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def _planar(points: np.ndarray) -> np.ndarray:
    if points.shape[1] == 2:
        return points
    if points.shape[1] == 1:
        return np.column_stack([points[:, 0], np.zeros(points.shape[0])])
    centered = points - points.mean(axis=0)
    components, _ = pca_fit(centered, 2)
    return centered @ components.T


def save_dataset_plot(path, points, labels, title=""):
    """Scatter of a labeled dataset (projected to 2-D when needed)."""
    xy = _planar(np.asarray(points))
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(xy[:, 0], xy[:, 1], c=np.asarray(labels), cmap=_CMAP, s=6, lw=0)
    ax.set_title(title)
    ax.set_aspect("equal", adjustable="datalim")
    _save(fig, path)


def save_history_plot(path, history, title=""):
    """Best fitness and best silhouette across generations."""
    gens = [rec.generation for rec in history]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.plot(gens, [rec.best_fitness for rec in history], label="best")
    ax1.plot(gens, [rec.mean_fitness for rec in history], label="mean", alpha=0.6)
    ax1.set_xlabel("generation")
    ax1.set_ylabel("fitness")
    ax1.legend()
    ax2.plot(gens, [rec.best_silhouette for rec in history], color="tab:green")
    ax2.set_xlabel("generation")
    ax2.set_ylabel("silhouette width")
    fig.suptitle(title)
    fig.tight_layout()
    _save(fig, path)


def save_instance_space_plot(path, coords, categories, title="instance space"):
    """Embedding scatter, coloured by a categorical column (e.g. the best
    algorithm per dataset)."""
    coords = np.asarray(coords)
    fig, ax = plt.subplots(figsize=(6, 5))
    names = sorted(set(categories))
    cmap = plt.get_cmap(_CMAP)
    for i, name in enumerate(names):
        mask = np.array([c == name for c in categories])
        ax.scatter(
            coords[mask, 0], coords[mask, 1],
            color=cmap(i % 20), label=str(name), s=14, lw=0,
        )
    ax.set_xlabel("pc1")
    ax.set_ylabel("pc2")
    ax.set_title(title)
    ax.legend(fontsize=7)
    _save(fig, path)


def save_versus_grid_plot(path, rows):
    """Winner/loser ARI slope lines, one panel per head-to-head.

    rows: iterables of (winner, loser, ari_winner, ari_loser).
    """
    pairs = {}
    for winner, loser, ari_w, ari_l in rows:
        pairs.setdefault((winner, loser), []).append((ari_w, ari_l))
    winners = sorted({w for w, _ in pairs})
    losers = sorted({l for _, l in pairs})
    fig, axes = plt.subplots(
        len(winners), len(losers),
        figsize=(2.4 * len(losers), 2.2 * len(winners)),
        squeeze=False,
    )
    for i, winner in enumerate(winners):
        for j, loser in enumerate(losers):
            ax = axes[i][j]
            for ari_w, ari_l in pairs.get((winner, loser), []):
                ax.plot([0, 1], [ari_w, ari_l], color="tab:blue", alpha=0.4)
            ax.set_xticks([0, 1])
            ax.set_xticklabels(["winner", "loser"], fontsize=6)
            ax.set_ylim(-0.1, 1.05)
            if j == 0:
                ax.set_ylabel(winner, fontsize=7)
            if i == 0:
                ax.set_title(loser, fontsize=7)
    fig.tight_layout()
    _save(fig, path)


def save_ari_boxplot(path, ari_columns: dict[str, list[float]]):
    """Boxplot of per-dataset ARI for each algorithm column."""
    names = list(ari_columns)
    fig, ax = plt.subplots(figsize=(1.2 * len(names) + 2, 4))
    ax.boxplot([ari_columns[n] for n in names], tick_labels=names)
    ax.set_ylabel("ARI")
    ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    _save(fig, path)


def save_operator_traces_plot(path, traces):
    """Mean silhouette trace per operator, one panel per scenario/dim.

    traces: iterables of (operator, scenario, dim, seed, generation, s_all).
    """
    panels = {}
    for operator, scenario, dim, _seed, generation, s_all in traces:
        panel = panels.setdefault((scenario, int(dim)), {})
        panel.setdefault(operator, {}).setdefault(int(generation), []).append(s_all)
    keys = sorted(panels)
    fig, axes = plt.subplots(
        1, max(1, len(keys)), figsize=(3.2 * max(1, len(keys)), 3), squeeze=False
    )
    for ax, key in zip(axes[0], keys):
        for operator, per_gen in sorted(panels[key].items()):
            gens = sorted(per_gen)
            ax.plot(gens, [np.mean(per_gen[g]) for g in gens], label=operator)
        ax.set_title(f"{key[0]} d={key[1]}", fontsize=8)
        ax.set_xlabel("generation")
        ax.set_ylabel("silhouette width")
    axes[0][0].legend(fontsize=6)
    fig.tight_layout()
    _save(fig, path)
