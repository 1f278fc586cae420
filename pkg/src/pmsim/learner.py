"""Per-vertex learners: signal buffers, loss-difference estimates, exponential weights.

Each action owns one learner that plays only over its neighbor set.  Between
its own invocations the learner passively buffers the rounds it can learn
from; when invoked it converts the buffered signals into relative-cost
estimates for every neighbor, feeds them to an exponential-weights update,
and re-emits its sampling distribution mixed with a little uniform
exploration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .games import SignalObservation
from .observability import ObservabilityReport


@dataclass
class RoundRecord:
    """One buffered round, seen from the owning learner's side.

    ``q_snapshot`` is the owner's sampling distribution that was in force at
    round ``t``; the importance weight divides by it, not by the current one.
    """

    t: int
    k: int
    played: int
    signal: SignalObservation
    q_snapshot: np.ndarray


@dataclass
class CostVector:
    f: np.ndarray  # over all N actions, zero outside the owner's neighbors
    s: int


@dataclass
class LearnerState:
    action: int
    neighbors: np.ndarray  # sorted, includes the owner
    x: np.ndarray          # exponential-weights iterate over neighbors
    q: np.ndarray          # mixed distribution over all N actions
    eta: float
    gamma: float
    count: int = 0
    buffer: list[RoundRecord] = field(default_factory=list)


def make_learner(action: int, neighbors, n_actions: int, eta: float, gamma: float) -> LearnerState:
    """Fresh learner with the uniform mixed distribution over its neighbor set."""
    neighbors = np.asarray(sorted(neighbors), dtype=int)
    x = np.full(len(neighbors), 1.0 / len(neighbors))
    q = np.zeros(n_actions)
    q[neighbors] = x
    return LearnerState(action=action, neighbors=neighbors, x=x, q=q, eta=eta, gamma=gamma)


def estimate_b(state: LearnerState, rec: RoundRecord, observers: ObservabilityReport,
               j: int) -> float:
    """Loss-difference estimate of neighbor ``j`` against the owner, from one round.

    Only two kinds of round contribute: rounds where the owner's own action
    was played (the observer's top block reads the signal), and rounds where
    the owner was the sampled neighborhood and ``j`` was played (bottom
    block, importance-weighted by the snapshotted probability of ``j``).
    """
    i = state.action
    if j == i:
        return 0.0  # an action against itself has relative cost zero
    ov = observers.observer(i, j)
    sig = rec.signal.vector
    b = 0.0
    if rec.played == i:
        b += float(ov.top @ sig)
    if rec.k == i and rec.played == j:
        qj = rec.q_snapshot[j]
        if qj <= 0.0:
            raise RuntimeError(
                f"learner {i} sampled neighbor {j} with zero probability at round {rec.t}"
            )
        b += float(ov.bottom @ sig) / qj
    return b


def aggregate_costs(state: LearnerState, observers: ObservabilityReport) -> CostVector:
    """Sum the buffered estimates into one cost vector over the neighbor set."""
    if not state.buffer:
        raise RuntimeError(f"learner {state.action} invoked with an empty buffer")
    if state.buffer[-1].k != state.action:
        raise RuntimeError(
            f"learner {state.action} invoked but the last buffered round "
            f"belongs to neighborhood {state.buffer[-1].k}"
        )
    f = np.zeros(len(state.q))
    for j in state.neighbors:
        f[j] = sum(estimate_b(state, rec, observers, int(j)) for rec in state.buffer)
    return CostVector(f=f, s=state.count + 1)


def exp_weights_step(x: np.ndarray, f: np.ndarray, eta: float) -> np.ndarray:
    """Multiplicative-weights update ``x' ~ x * exp(-eta f)``, overflow-safe.

    Subtracting the max exponent first keeps the weights in range and makes
    the update invariant (to rounding) under constant shifts of ``f``.
    """
    z = -eta * np.asarray(f, dtype=float)
    w = x * np.exp(z - z.max())
    total = w.sum()
    if total <= 0.0 or not np.isfinite(total):
        raise RuntimeError("exponential-weights update produced no usable mass")
    return w / total


def invoke(state: LearnerState, observers: ObservabilityReport) -> LearnerState:
    """One full invocation: costs from the buffer, weight update, re-mixed q."""
    costs = aggregate_costs(state, observers)
    state.x = exp_weights_step(state.x, costs.f[state.neighbors], state.eta)
    q = np.zeros(len(state.q))
    q[state.neighbors] = (1.0 - state.gamma) * state.x + state.gamma / len(state.neighbors)
    state.q = q
    state.buffer.clear()
    state.count += 1
    assert abs(state.x.sum() - 1.0) <= 1e-12
    assert abs(state.q.sum() - 1.0) <= 1e-12
    assert state.q[state.neighbors].min() >= state.gamma / len(state.neighbors) - 1e-12
    return state
