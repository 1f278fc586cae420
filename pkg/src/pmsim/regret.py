"""Exact post-hoc regret accounting from a transcript.

External regret compares against the best fixed action in hindsight;
internal regret against the best single-pair rewrite "every time action i
was played, play j instead"; the local variant restricts j to neighbors of
i.  All three are plain sums over the transcript, so they are recomputable
exactly at any prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import NeighborhoodGraph


class RegretTracker:
    """Streaming accumulator for all three regret notions.

    ``pair_sums[i, j]`` accumulates, in round order, the per-round difference
    ``loss[i, j_t] - loss[j, j_t]`` on rounds where i was played; keeping the
    per-round differences (rather than differencing two totals) makes the
    result bit-identical to a round-by-round rewrite of the transcript.
    """

    def __init__(self, loss: np.ndarray, graph: NeighborhoodGraph | None = None):
        self.loss = np.asarray(loss, dtype=float)
        n = self.loss.shape[0]
        self.graph = graph
        self.cum_loss = 0.0
        self.outcome_counts = np.zeros(self.loss.shape[1])
        self.pair_sums = np.zeros((n, n))
        self._neighbor_mask = None
        if graph is not None:
            mask = np.zeros((n, n), dtype=bool)
            for i, j in graph.neighbor_pairs():
                mask[i, j] = True
            self._neighbor_mask = mask
        self.rounds = 0

    def update(self, action: int, outcome: int) -> None:
        self.rounds += 1
        self.cum_loss += self.loss[action, outcome]
        self.outcome_counts[outcome] += 1
        self.pair_sums[action] += self.loss[action, outcome] - self.loss[:, outcome]

    def external(self) -> float:
        return self.cum_loss - float((self.loss @ self.outcome_counts).min())

    def best_fixed_action(self) -> int:
        return int(np.argmin(self.loss @ self.outcome_counts))

    def internal(self) -> tuple[float, tuple[int, int] | None]:
        d = self.pair_sums.copy()
        np.fill_diagonal(d, -np.inf)
        i, j = np.unravel_index(np.argmax(d), d.shape)
        if d[i, j] <= 0.0:
            return 0.0, None  # the identity rewrite is already best
        return float(d[i, j]), (int(i), int(j))

    def local_internal(self) -> float:
        if self._neighbor_mask is None:
            raise ValueError("local internal regret needs a neighborhood graph")
        vals = self.pair_sums[self._neighbor_mask]
        return float(max(vals.max(initial=-np.inf), 0.0))


def _feed(transcript, loss, graph=None) -> RegretTracker:
    if not transcript:
        raise ValueError("empty transcript")
    tracker = RegretTracker(loss, graph)
    for row in transcript:
        tracker.update(row.action, row.outcome)
    return tracker


def external_regret(transcript, loss) -> float:
    return _feed(transcript, loss).external()


def internal_regret(transcript, loss) -> tuple[float, tuple[int, int] | None]:
    return _feed(transcript, loss).internal()


def local_internal_regret(transcript, loss, graph: NeighborhoodGraph) -> float:
    return _feed(transcript, loss, graph).local_internal()


def theorem_bound(n_actions: int, v_bar: float, horizon: int) -> float:
    """Guaranteed ceiling on expected cumulative internal regret."""
    return 4.0 * n_actions * v_bar * math.sqrt(6.0 * math.log(n_actions) * horizon)


@dataclass
class RegretReport:
    external: float
    internal: float
    local_internal: float
    best_fixed_action: int
    worst_departure: tuple[int, int] | None
    theorem_bound: float
    checkpoints: list[int]
    curves: dict[str, list[float]]


def regret_report(transcript, loss, graph: NeighborhoodGraph, v_bar: float,
                  checkpoints: list[int] | None = None) -> RegretReport:
    """Full report, with cumulative curves at the requested checkpoints."""
    if not transcript:
        raise ValueError("empty transcript")
    horizon = transcript[-1].t
    checkpoints = sorted(t for t in (checkpoints or range(1, horizon + 1)) if t <= horizon)
    tracker = RegretTracker(loss, graph)
    curves: dict[str, list[float]] = {
        "cum_loss": [], "external": [], "internal": [], "local_internal": []}
    marks = set(checkpoints)
    for row in transcript:
        tracker.update(row.action, row.outcome)
        if row.t in marks:
            curves["cum_loss"].append(tracker.cum_loss)
            curves["external"].append(tracker.external())
            curves["internal"].append(tracker.internal()[0])
            curves["local_internal"].append(tracker.local_internal())
    internal, worst = tracker.internal()
    return RegretReport(
        external=tracker.external(),
        internal=internal,
        local_internal=tracker.local_internal(),
        best_fixed_action=tracker.best_fixed_action(),
        worst_departure=worst,
        theorem_bound=theorem_bound(loss.shape[0], v_bar, horizon),
        checkpoints=checkpoints,
        curves=curves,
    )
