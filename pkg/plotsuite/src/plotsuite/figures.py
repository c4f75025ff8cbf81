"""Figure renderers.

Five figure kinds, each taking the documented export files as input:

- ``training_curves``: per-episode rewards from one or more training-curve
  CSVs, one panel per file, raw series plus a trailing moving average
  (window 50 by default).
- ``reward_bars``: mean episode reward per matchup from evaluation summary
  JSON files, grouped attacker/defender bars.
- ``iqm_bars``: same layout, interquartile-mean scores instead of means.
- ``score_distributions``: per-trial defender score histograms from
  evaluation trial CSVs, one panel per file; every panel keeps its own
  independent axes so differently-scaled matchups stay readable.
- ``sweep_heatmap``: mean defender reward over the connectivity x security
  cost grid from a sweep CSV.

Rendering is deterministic: identical inputs produce byte-identical PNG
files (fixed style, fixed dpi, no timestamps in the file metadata).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schemas import (
    EmptyInputError,
    SchemaError,
    load_eval_csv,
    load_eval_summary,
    load_sweep_csv,
    load_training_csv,
)

__all__ = ["KINDS", "SMOOTHING_WINDOW", "FigureSpec", "render", "moving_average"]

KINDS = (
    "training_curves",
    "reward_bars",
    "iqm_bars",
    "score_distributions",
    "sweep_heatmap",
)

#: Default trailing moving-average window for training curves.
SMOOTHING_WINDOW = 50

_ATTACKER_COLOR = "#c44e52"
_DEFENDER_COLOR = "#4c72b0"

_RC = {
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.family": "DejaVu Sans",
    "font.size": 9.0,
    "axes.titlesize": 10.0,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "grid.linewidth": 0.6,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.framealpha": 0.85,
    "svg.hashsalt": "plotsuite",
}


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: what to draw, from which files, to where."""

    kind: str
    inputs: tuple[str, ...]
    output: str
    smoothing_window: int = SMOOTHING_WINDOW

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        if not self.inputs:
            raise ValueError("FigureSpec needs at least one input file")
        if not self.output:
            raise ValueError("FigureSpec needs an output path")
        if self.smoothing_window < 1:
            raise ValueError("smoothing_window must be >= 1")
        object.__setattr__(self, "inputs", tuple(str(p) for p in self.inputs))


def moving_average(values: np.ndarray, window: int) -> np.ndarray:
    """Trailing moving average; early points average what is available.

    Element k is the mean of values[max(0, k-window+1) .. k], so the output
    has the same length as the input and no startup gap.
    """
    values = np.asarray(values, dtype=np.float64)
    if window < 1:
        raise ValueError("window must be >= 1")
    csum = np.concatenate(([0.0], np.cumsum(values)))
    n = values.size
    idx = np.arange(n)
    lo = np.maximum(idx - window + 1, 0)
    return (csum[idx + 1] - csum[lo]) / (idx - lo + 1)


def _panel_grid(n: int) -> tuple[int, int]:
    ncols = 1 if n == 1 else 2
    nrows = (n + ncols - 1) // ncols
    return nrows, ncols


def _render_training_curves(spec: FigureSpec) -> plt.Figure:
    curves = [load_training_csv(p) for p in spec.inputs]
    nrows, ncols = _panel_grid(len(curves))
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(5.6 * ncols, 3.6 * nrows), squeeze=False
    )
    flat = axes.ravel()
    for ax in flat[len(curves):]:
        ax.set_visible(False)
    w = spec.smoothing_window
    for ax, c in zip(flat, curves):
        ax.plot(c.episode, c.attacker_reward, color=_ATTACKER_COLOR, alpha=0.25, lw=0.8)
        ax.plot(c.episode, c.defender_reward, color=_DEFENDER_COLOR, alpha=0.25, lw=0.8)
        ax.plot(c.episode, moving_average(c.attacker_reward, w),
                color=_ATTACKER_COLOR, lw=1.6, label="attacker")
        ax.plot(c.episode, moving_average(c.defender_reward, w),
                color=_DEFENDER_COLOR, lw=1.6, label="defender")
        ax.set_title(c.label)
        ax.set_xlabel("episode")
        ax.set_ylabel("episode reward")
        ax.legend(loc="best")
    fig.suptitle(f"Training curves (moving average, window {w})")
    return fig

def _render_bars(spec: FigureSpec, which: str) -> plt.Figure:
    summaries = [load_eval_summary(p) for p in spec.inputs]
    labels = [s.label for s in summaries]
    if which == "mean":
        atk = [s.attacker_mean for s in summaries]
        dfd = [s.defender_mean for s in summaries]
        title = "Mean episode reward by matchup"
    else:
        atk = [s.attacker_iqm for s in summaries]
        dfd = [s.defender_iqm for s in summaries]
        title = "Interquartile-mean episode reward by matchup"
    x = np.arange(len(summaries), dtype=np.float64)
    width = 0.38
    fig, ax = plt.subplots(figsize=(max(5.6, 1.9 * len(summaries) + 2.4), 3.8))
    ax.bar(x - width / 2, atk, width, color=_ATTACKER_COLOR, label="attacker")
    ax.bar(x + width / 2, dfd, width, color=_DEFENDER_COLOR, label="defender")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=15, ha="right")
    ax.set_ylabel("episode reward")
    ax.set_title(title)
    ax.legend(loc="best")
    return fig


def _render_score_distributions(spec: FigureSpec) -> plt.Figure:
    trials = [load_eval_csv(p) for p in spec.inputs]
    nrows, ncols = _panel_grid(len(trials))
    # sharex/sharey stay off on purpose: each matchup keeps its own scale.
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(5.0 * ncols, 3.4 * nrows),
        squeeze=False, sharex=False, sharey=False,
    )
    flat = axes.ravel()
    for ax in flat[len(trials):]:
        ax.set_visible(False)
    for ax, t in zip(flat, trials):
        ax.hist(t.defender_scores, bins=20, color=_DEFENDER_COLOR, alpha=0.85)
        ax.set_title(f"{t.label} (n={t.defender_scores.size})")
        ax.set_xlabel("defender score")
        ax.set_ylabel("trials")
    fig.suptitle("Defender score distributions")
    return fig


def _render_sweep_heatmap(spec: FigureSpec) -> plt.Figure:
    if len(spec.inputs) != 1:
        raise ValueError(
            f"sweep_heatmap takes exactly one sweep CSV, got {len(spec.inputs)}"
        )
    grid = load_sweep_csv(spec.inputs[0])
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    im = ax.imshow(grid.mean_defender_reward, origin="lower", aspect="auto",
                   cmap="viridis")
    ax.set_xticks(np.arange(grid.security.size))
    ax.set_xticklabels([f"{v:.2g}" for v in grid.security], rotation=45, ha="right")
    ax.set_yticks(np.arange(grid.connectivity.size))
    ax.set_yticklabels([f"{v:.2g}" for v in grid.connectivity])
    ax.set_xlabel("security cost scale")
    ax.set_ylabel("connectivity cost scale")
    ax.set_title("Mean defender reward over cost grid")
    ax.grid(False)
    fig.colorbar(im, ax=ax, label="mean defender reward")
    return fig


def render(spec: FigureSpec) -> Path:
    """Render one figure to `spec.output`; returns the written path.

    Output is byte-stable: rendering the same spec twice over unchanged
    inputs writes identical files.
    """
    missing = [p for p in spec.inputs if not Path(p).is_file()]
    if missing:
        raise FileNotFoundError(f"input file(s) not found: {', '.join(missing)}")
    with plt.rc_context(_RC):
        if spec.kind == "training_curves":
            fig = _render_training_curves(spec)
        elif spec.kind == "reward_bars":
            fig = _render_bars(spec, "mean")
        elif spec.kind == "iqm_bars":
            fig = _render_bars(spec, "iqm")
        elif spec.kind == "score_distributions":
            fig = _render_score_distributions(spec)
        else:
            fig = _render_sweep_heatmap(spec)
        try:
            fig.tight_layout()
            out = Path(spec.output)
            out.parent.mkdir(parents=True, exist_ok=True)
            fmt = out.suffix.lstrip(".").lower() or "png"
            fig.savefig(out, format=fmt, metadata=_scrub_metadata(fmt))
        finally:
            plt.close(fig)
    return out


def _scrub_metadata(fmt: str) -> dict:
    """Metadata overrides that strip every run-dependent byte per format."""
    if fmt == "png":
        return {"Software": None}  # drops the library version tag
    if fmt == "svg":
        return {"Date": None}
    if fmt == "pdf":
        return {"CreationDate": None}
    return {}
