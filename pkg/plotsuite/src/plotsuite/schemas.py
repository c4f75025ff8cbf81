"""Readers for the experiment export files, with loud schema validation.

Four documented input schemas:

- training curves CSV: ``episode,attacker_reward,defender_reward,``
  ``episode_length,winner`` — one row per training episode.
- evaluation trials CSV: ``trial,seed,defender_score,attacker_score,winner,``
  ``episode_length`` plus per-action-kind count columns, all named
  ``attacker_<kind>`` or ``defender_<kind>`` — one row per trial.
- evaluation summary JSON: ``matchup``, ``n_trials``, ``defender`` and
  ``attacker`` objects (each with ``mean``, ``iqm``, ``histogram``,
  ``action_usage``), and ``win_rate``.
- sweep CSV: ``connectivity,security,ratio,mean_defender_reward,``
  ``mean_attacker_reward`` — one row per grid cell, a complete grid.

Any departure raises SchemaError naming the offending column or field and
the file; a CSV with a valid header but no data rows raises EmptyInputError
instead of producing a blank figure downstream.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "SchemaError",
    "EmptyInputError",
    "TrainingCurves",
    "EvalTrials",
    "EvalSummary",
    "SweepGrid",
    "load_training_csv",
    "load_eval_csv",
    "load_eval_summary",
    "load_sweep_csv",
]


class SchemaError(ValueError):
    """An input file departs from its documented schema."""


class EmptyInputError(ValueError):
    """An input file parses but carries no data rows."""


TRAINING_COLUMNS = ("episode", "attacker_reward", "defender_reward", "episode_length", "winner")
EVAL_FIXED_COLUMNS = ("trial", "seed", "defender_score", "attacker_score", "winner", "episode_length")
SWEEP_COLUMNS = ("connectivity", "security", "ratio", "mean_defender_reward", "mean_attacker_reward")

_EVAL_EXTRA = re.compile(r"^(attacker|defender)_[a-z][a-z_]*$")


@dataclass(frozen=True)
class TrainingCurves:
    label: str
    episode: np.ndarray
    attacker_reward: np.ndarray
    defender_reward: np.ndarray
    episode_length: np.ndarray
    winner: tuple[str, ...]


@dataclass(frozen=True)
class EvalTrials:
    label: str
    defender_scores: np.ndarray
    attacker_scores: np.ndarray
    winners: tuple[str, ...]
    episode_lengths: np.ndarray


@dataclass(frozen=True)
class EvalSummary:
    label: str
    n_trials: int
    defender_mean: float
    defender_iqm: float
    attacker_mean: float
    attacker_iqm: float
    defender_win_rate: float
    attacker_win_rate: float


@dataclass(frozen=True)
class SweepGrid:
    label: str
    connectivity: np.ndarray  # sorted axis values
    security: np.ndarray
    mean_defender_reward: np.ndarray  # [i, j] over (connectivity, security)
    mean_attacker_reward: np.ndarray


def _read_rows(path: str | Path) -> tuple[list[str], list[dict]]:
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise EmptyInputError(f"{path}: empty file, no header row")
        rows = list(reader)
    if not rows:
        raise EmptyInputError(f"{path}: no data rows")
    return list(header), rows


def _require_columns(path: Path, header: list[str], required: tuple[str, ...],
                     allow_extra: bool = False) -> None:
    present = set(header)
    for col in required:
        if col not in present:
            raise SchemaError(f"{path}: missing column {col!r}")
    if allow_extra:
        for col in header:
            if col not in required and not _EVAL_EXTRA.match(col):
                raise SchemaError(f"{path}: unexpected column {col!r}")
    else:
        for col in header:
            if col not in required:
                raise SchemaError(f"{path}: unexpected column {col!r}")


def _column(path: Path, rows: list[dict], name: str, kind: type) -> np.ndarray:
    out = []
    for i, row in enumerate(rows):
        raw = row[name]
        try:
            out.append(kind(raw))
        except (TypeError, ValueError):
            raise SchemaError(
                f"{path}: column {name!r}, row {i + 1}: "
                f"expected {kind.__name__}, got {raw!r}"
            ) from None
    dtype = np.int64 if kind is int else np.float64
    return np.asarray(out, dtype=dtype)


def _strip_prefix(stem: str, prefix: str) -> str:
    return stem[len(prefix):] if stem.startswith(prefix) else stem


def load_training_csv(path: str | Path) -> TrainingCurves:
    path = Path(path)
    header, rows = _read_rows(path)
    _require_columns(path, header, TRAINING_COLUMNS)
    return TrainingCurves(
        label=_strip_prefix(path.stem, "curves_"),
        episode=_column(path, rows, "episode", int),
        attacker_reward=_column(path, rows, "attacker_reward", float),
        defender_reward=_column(path, rows, "defender_reward", float),
        episode_length=_column(path, rows, "episode_length", int),
        winner=tuple(row["winner"] for row in rows),
    )


def load_eval_csv(path: str | Path) -> EvalTrials:
    path = Path(path)
    header, rows = _read_rows(path)
    _require_columns(path, header, EVAL_FIXED_COLUMNS, allow_extra=True)
    return EvalTrials(
        label=_strip_prefix(path.stem, "eval_"),
        defender_scores=_column(path, rows, "defender_score", float),
        attacker_scores=_column(path, rows, "attacker_score", float),
        winners=tuple(row["winner"] for row in rows),
        episode_lengths=_column(path, rows, "episode_length", int),
    )


def _json_number(path: Path, data: dict, dotted: str) -> float:
    node = data
    walked = []
    for key in dotted.split("."):
        walked.append(key)
        if not isinstance(node, dict) or key not in node:
            raise SchemaError(f"{path}: missing field {'.'.join(walked)!r}")
        node = node[key]
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise SchemaError(f"{path}: field {dotted!r} must be a number, got {node!r}")
    return float(node)


def load_eval_summary(path: str | Path) -> EvalSummary:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise SchemaError(f"{path}: not valid JSON ({err})") from None
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object at the top level")
    label = data.get("matchup")
    if not isinstance(label, str) or not label:
        raise SchemaError(f"{path}: missing field 'matchup'")
    return EvalSummary(
        label=label,
        n_trials=int(_json_number(path, data, "n_trials")),
        defender_mean=_json_number(path, data, "defender.mean"),
        defender_iqm=_json_number(path, data, "defender.iqm"),
        attacker_mean=_json_number(path, data, "attacker.mean"),
        attacker_iqm=_json_number(path, data, "attacker.iqm"),
        defender_win_rate=_json_number(path, data, "win_rate.defender"),
        attacker_win_rate=_json_number(path, data, "win_rate.attacker"),
    )


def load_sweep_csv(path: str | Path) -> SweepGrid:
    path = Path(path)
    header, rows = _read_rows(path)
    _require_columns(path, header, SWEEP_COLUMNS)
    conn = _column(path, rows, "connectivity", float)
    sec = _column(path, rows, "security", float)
    mean_def = _column(path, rows, "mean_defender_reward", float)
    mean_atk = _column(path, rows, "mean_attacker_reward", float)

    conn_axis = np.unique(conn)
    sec_axis = np.unique(sec)
    if conn_axis.size * sec_axis.size != len(rows):
        raise SchemaError(
            f"{path}: expected a complete {conn_axis.size}x{sec_axis.size} grid, "
            f"got {len(rows)} rows"
        )
    grid_def = np.full((conn_axis.size, sec_axis.size), np.nan)
    grid_atk = np.full((conn_axis.size, sec_axis.size), np.nan)
    i_idx = np.searchsorted(conn_axis, conn)
    j_idx = np.searchsorted(sec_axis, sec)
    grid_def[i_idx, j_idx] = mean_def
    grid_atk[i_idx, j_idx] = mean_atk
    if np.isnan(grid_def).any():
        raise SchemaError(f"{path}: duplicate or missing grid cells")
    return SweepGrid(
        label=path.stem,
        connectivity=conn_axis,
        security=sec_axis,
        mean_defender_reward=grid_def,
        mean_attacker_reward=grid_atk,
    )
