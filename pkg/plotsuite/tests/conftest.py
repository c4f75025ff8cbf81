"""Fixtures wrapping the synthetic export writers in synth.py."""

import pytest

from synth import write_eval_csv, write_eval_json, write_sweep_csv, write_training_csv


@pytest.fixture
def training_csv(tmp_path):
    return write_training_csv(tmp_path / "curves_optimistic.csv")


@pytest.fixture
def eval_csv(tmp_path):
    return write_eval_csv(tmp_path / "eval_optimistic_vs_nsared.csv")


@pytest.fixture
def eval_json(tmp_path):
    return write_eval_json(tmp_path / "eval_optimistic_vs_nsared.json")


@pytest.fixture
def sweep_csv(tmp_path):
    return write_sweep_csv(tmp_path / "sweep.csv")
