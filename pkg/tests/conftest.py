"""Shared fixtures and the acceptance-summary terminal hook."""

from __future__ import annotations

import numpy as np
import pytest

from netsiege.env import EnvConfig, GameState, NetworkGraph, NodeState

# ---------------------------------------------------------------------------
# Acceptance reporting: tests marked @pytest.mark.acceptance(criterion=...)
# get one "[ACCEPTANCE] <criterion>: PASS/FAIL" line in the terminal summary.
# ---------------------------------------------------------------------------

_ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    criterion = marker.kwargs.get("criterion", item.name)
    if rep.when == "call":
        _ACCEPTANCE_RESULTS[criterion] = "PASS" if rep.passed else "FAIL"
    elif rep.failed:  # setup/teardown error counts as a failure
        _ACCEPTANCE_RESULTS[criterion] = "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for criterion, result in _ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"[ACCEPTANCE] {criterion}: {result}")


# ---------------------------------------------------------------------------
# Shared builders
# ---------------------------------------------------------------------------


@pytest.fixture
def tiny_config() -> EnvConfig:
    """Small fast environment used across engine tests."""
    return EnvConfig(n_nodes=6, connectivity=0.5, max_timesteps=50)


def build_state(
    n: int,
    edges: set[tuple[int, int]],
    vulnerabilities: list[float],
    entry: int = 0,
) -> GameState:
    """Hand-built GameState for oracle tests: entry compromised, no alerts."""
    nodes = [NodeState(vulnerability=v) for v in vulnerabilities]
    graph = NetworkGraph(nodes=nodes, edges=edges, attacker_entry=entry)
    state = GameState(graph=graph, attacker_host=entry)
    state.compromised_set.add(entry)
    graph.nodes[entry].true_compromise = True
    return state


def path_state(n: int, vuln: float = 0.5, entry: int = 0) -> GameState:
    """Path graph 0-1-2-...-(n-1) with uniform vulnerability."""
    edges = {(i, i + 1) for i in range(n - 1)}
    return build_state(n, edges, [vuln] * n, entry=entry)


def star_state(n: int, vuln: float = 0.5) -> GameState:
    """Star graph with node 0 at the center, center compromised."""
    edges = {(0, i) for i in range(1, n)}
    return build_state(n, edges, [vuln] * n, entry=0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
