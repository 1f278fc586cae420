"""Two-level sampling engine.

Every round the engine stacks the learners' distributions into a column-
stochastic matrix Q, solves the flow condition p = Qp, samples a
neighborhood from p and an action from that neighborhood's distribution,
obtains the signal, routes the round to the (at most two) learners whose
estimators can use it, and invokes the sampled neighborhood's learner.
Direct sampling from p and the two-level scheme agree exactly because p is
stationary for Q; the engine asserts that identity every round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adversaries import Adversary
from .errors import FixedPointError, NotLocallyObservableError
from .games import Game
from .geometry import NeighborhoodGraph, build_graph
from .learner import LearnerState, RoundRecord, invoke, make_learner
from .observability import ObservabilityReport, check_game

FLOW_TOL = 1e-9
_DIRECT_TOL = 1e-12
_POWER_TOL = 1e-12
_POWER_MAX_ITERS = 1_000_000


def auto_eta(n_actions: int, v_bar: float, horizon: int) -> float:
    """Learning rate balancing the regret bound's variance and entropy terms."""
    return math.sqrt(math.log(n_actions) / (24.0 * v_bar ** 2 * max(horizon, 1)))


def auto_gamma(horizon: int) -> float:
    """Default exploration mix, vanishing as the horizon grows."""
    return min(0.25, 1.0 / math.sqrt(max(horizon, 1)))


@dataclass(frozen=True)
class EngineConfig:
    eta: float | str = "auto"
    gamma: float | str = "auto"
    seed: int = 0


@dataclass(frozen=True)
class TranscriptRow:
    t: int
    k: int        # sampled neighborhood
    action: int   # played action I_t
    outcome: int  # adversary move j_t
    symbol: int   # observed symbol index within the played action's alphabet
    loss: float


def _residual(Q: np.ndarray, p: np.ndarray) -> np.ndarray:
    return Q @ p - p


def fixed_point(Q: np.ndarray) -> np.ndarray:
    """Stationary distribution p = Qp of a column-stochastic matrix.

    Direct dense solve of (Q - I) with the last row replaced by the
    normalization constraint; falls back to damped power iteration from the
    uniform vector when the direct system is singular (multiple stationary
    distributions), which also fixes the tie-break: the fallback returns the
    fixed point nearest its uniform start.
    """
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    colsum = Q.sum(axis=0)
    if Q.min() < -1e-10 or np.abs(colsum - 1.0).max() > 1e-10:
        bad = int(np.argmax(np.abs(colsum - 1.0)))
        raise FixedPointError(f"non-stochastic column {bad} (sum {colsum[bad]!r})")

    if n == 2:
        # balance equation: mass(2->1) * p1 = mass(1->2) * p0
        a, b = max(Q[0, 1], 0.0), max(Q[1, 0], 0.0)
        if a + b > _DIRECT_TOL:
            return np.array([a / (a + b), b / (a + b)])
    else:
        A = Q - np.eye(n)
        A[-1, :] = 1.0
        rhs = np.zeros(n)
        rhs[-1] = 1.0
        try:
            p = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError:
            p = None
        if p is not None and np.all(p >= -1e-12):
            p = np.clip(p, 0.0, None)
            p /= p.sum()
            if np.abs(_residual(Q, p)).sum() <= _DIRECT_TOL:
                return p

    p = np.full(n, 1.0 / n)
    for _ in range(_POWER_MAX_ITERS):
        r = _residual(Q, p)
        if np.abs(r).sum() <= _POWER_TOL:
            return p
        p = p + 0.5 * r  # average of p and Qp, damping periodic chains
        p = np.clip(p, 0.0, None)
        p /= p.sum()
    raise FixedPointError(
        f"power iteration did not converge (residual {np.abs(_residual(Q, p)).sum():.3e})"
    )


def sample_index(rng: np.random.Generator, pmf: np.ndarray) -> int:
    """Inverse-CDF draw consuming exactly one uniform."""
    u = rng.random()
    acc = 0.0
    last = 0
    for i, w in enumerate(pmf.tolist()):
        if w > 0.0:
            acc += w
            if u < acc:
                return i
            last = i
    return last  # total mass a hair under 1.0


class Engine:
    """One game run: owns the learners, the transcript, and the random streams.

    Draw order within a round is fixed: neighborhood k, then action I, then
    signal randomness (random-signal games only).  The adversary draws from
    its own stream, so its moves are reproducible independently of learner
    parameters.
    """

    def __init__(self, game: Game, adversary: Adversary, horizon: int,
                 config: EngineConfig | None = None,
                 graph: NeighborhoodGraph | None = None,
                 observers: ObservabilityReport | None = None):
        config = config or EngineConfig()
        if graph is None:
            graph, _ = build_graph(game)
        if observers is None:
            observers = check_game(game, graph)
        if not observers.locally_observable:
            raise NotLocallyObservableError(
                f"pairs without observers: {observers.unobservable_pairs()}"
            )
        self.game = game
        self.graph = graph
        self.observers = observers
        self.horizon = horizon
        self.eta = config.eta if config.eta != "auto" else auto_eta(
            game.n_actions, observers.v_bar, horizon)
        self.gamma = config.gamma if config.gamma != "auto" else auto_gamma(horizon)

        root = np.random.SeedSequence(config.seed)
        engine_ss, adversary_ss = root.spawn(2)
        self.rng = np.random.default_rng(engine_ss)
        self.adversary = adversary
        adversary.bind(game, np.random.default_rng(adversary_ss) if adversary.needs_rng else None)

        n = game.n_actions
        self.learners: list[LearnerState] = [
            make_learner(i, graph.neighbors[i], n, self.eta, self.gamma) for i in range(n)
        ]
        self.Q = np.column_stack([lr.q for lr in self.learners])
        self.t = 0
        self.transcript: list[TranscriptRow] = []
        self._history: list[int] = []
        self.max_flow_residual_l1 = 0.0
        self.max_flow_residual_linf = 0.0

    def step(self) -> TranscriptRow:
        if self.t >= self.horizon:
            raise RuntimeError("horizon exhausted")
        self.t += 1
        p = fixed_point(self.Q)
        r = np.abs(_residual(self.Q, p))
        l1 = float(r.sum())
        self.max_flow_residual_l1 = max(self.max_flow_residual_l1, l1)
        self.max_flow_residual_linf = max(self.max_flow_residual_linf, float(r.max()))
        if l1 > FLOW_TOL:
            raise FixedPointError(f"flow condition violated at round {self.t}: {l1:.3e}")
        self.p = p

        k = sample_index(self.rng, p)
        a = sample_index(self.rng, self.learners[k].q)
        j = self.adversary.next_outcome(self.t, self._history)
        signal = self.game.observe(a, j, self.rng, t=self.t)

        for owner in {a, k}:
            lr = self.learners[owner]
            lr.buffer.append(RoundRecord(
                t=self.t, k=k, played=a, signal=signal, q_snapshot=lr.q.copy()))
        invoke(self.learners[k], self.observers)
        self.Q[:, k] = self.learners[k].q

        self._history.append(a)
        row = TranscriptRow(t=self.t, k=k, action=a, outcome=j, symbol=signal.symbol,
                            loss=float(self.game.loss[a, j]))
        self.transcript.append(row)
        return row

    def run(self) -> list[TranscriptRow]:
        while self.t < self.horizon:
            self.step()
        return self.transcript


def run(game: Game, adversary: Adversary, horizon: int,
        config: EngineConfig | None = None, *,
        graph: NeighborhoodGraph | None = None,
        observers: ObservabilityReport | None = None) -> list[TranscriptRow]:
    """Run a full game and return its transcript."""
    return Engine(game, adversary, horizon, config, graph=graph, observers=observers).run()
