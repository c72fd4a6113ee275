"""CSV and manifest reading/writing.

Floats are printed with 17 significant digits so every file round-trips
losslessly: export -> import -> export is byte-identical.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import ConfigurationError


def fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_rows_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def write_dataset_csv(path, points: np.ndarray, labels: np.ndarray) -> None:
    """Dataset file: columns f0..f{D-1} then the ground-truth label."""
    header = [f"f{j}" for j in range(points.shape[1])] + ["label"]
    rows = (list(p) + [int(label)] for p, label in zip(points, labels))
    write_rows_csv(path, header, rows)


def read_dataset_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a dataset file, reporting the file and line on any defect."""
    path = Path(path)
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigurationError(f"{path}: line 1: empty file") from None
        if not header or header[-1] != "label":
            raise ConfigurationError(f"{path}: line 1: last column must be 'label'")
        width = len(header)
        points, labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise ConfigurationError(
                    f"{path}: line {lineno}: expected {width} columns, got {len(row)}"
                )
            try:
                points.append([float(v) for v in row[:-1]])
                labels.append(int(row[-1]))
            except ValueError as exc:
                raise ConfigurationError(f"{path}: line {lineno}: {exc}") from None
    if not points:
        raise ConfigurationError(f"{path}: no data rows")
    return np.array(points, dtype=float), np.array(labels, dtype=int)


def write_history_csv(path, history) -> None:
    rows = ([getattr(rec, name) for name in type(history[0]).FIELDS] for rec in history)
    write_rows_csv(path, list(type(history[0]).FIELDS), rows)


def read_table_csv(path) -> tuple[list[str], list[list[str]]]:
    path = Path(path)
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigurationError(f"{path}: line 1: empty file") from None
        return header, [row for row in reader if row]


def write_manifest(path, payload: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def load_json(path) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON: {exc}") from None
