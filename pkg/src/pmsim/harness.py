"""Experiment orchestration: game catalog, seeded sweeps, CSV/JSON persistence.

A sweep runs one game against one adversary kind over a grid of horizons and
seeds, writes one CSV per run plus a summary with mean/std regret curves, the
guarantee values, and a log-log slope fit of mean internal regret against the
horizon.  Identical configurations produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from .adversaries import Adversary, AdaptiveWorst, FixedSequence, IID
from .engine import Engine, EngineConfig
from .errors import DegenerateGameError, DominatedActionError, GameFormatError, \
    NotLocallyObservableError
from .games import Game, load_game
from .geometry import analyze_geometry
from .observability import check_game
from .regret import RegretTracker, theorem_bound

CSV_COLUMNS = ["t", "k", "I", "j", "loss", "cum_loss",
               "ext_regret", "int_regret", "local_int_regret"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    game: Game
    expected_observable: bool


def _bandit_mp() -> Game:
    return Game.deterministic([[0, 1], [1, 0]], [["0", "1"], ["1", "0"]])


def _bandit_mp_random() -> Game:
    # bandit_mp with every symbol noised into a 0.9/0.1 mixture
    def mix(sym):
        return {sym: 0.9, ("1" if sym == "0" else "0"): 0.1}

    rows = [[mix("0"), mix("1")], [mix("1"), mix("0")]]
    return Game.with_random_signals([[0, 1], [1, 0]], rows)


def _apple_tasting() -> Game:
    return Game.deterministic([[1, 0], [0, 1]], [["*", "*"], ["0", "1"]])


def _label_efficient() -> Game:
    return Game.deterministic(
        [[1, 1], [0, 1], [1, 0]],
        [["0", "1"], ["*", "*"], ["#", "#"]],
    )


def _full_info_3x3() -> Game:
    sig = [["0", "1", "2"]] * 3
    return Game.deterministic([[0, 1, 1], [1, 0, 1], [1, 1, 0]], sig)


def catalog() -> list[CatalogEntry]:
    """Stock games: the observable classics plus one known-unobservable one."""
    return [
        CatalogEntry("bandit_mp", _bandit_mp(), True),
        CatalogEntry("bandit_mp_random", _bandit_mp_random(), True),
        CatalogEntry("apple_tasting", _apple_tasting(), True),
        CatalogEntry("label_efficient", _label_efficient(), False),
        CatalogEntry("full_info_3x3", _full_info_3x3(), True),
    ]


def resolve_game(name_or_path: str) -> tuple[Game, str]:
    """Catalog name, or a path to a game document."""
    for entry in catalog():
        if entry.name == name_or_path:
            return entry.game, entry.name
    if os.path.exists(name_or_path):
        return load_game(name_or_path), name_or_path
    raise GameFormatError(f"no catalog game or file named {name_or_path!r}")


def make_adversary(spec: Any, game: Game) -> Adversary:
    """Build an adversary from a dict or a shorthand string.

    Strings: ``uniform``, ``iid:0.5,0.5``, ``fixed:0,1,0,...``, ``adaptive``
    or ``adaptive:WINDOW``.
    """
    if isinstance(spec, str):
        kind, _, arg = spec.partition(":")
        if kind == "uniform":
            spec = {"kind": "iid", "dist": "uniform"}
        elif kind == "iid":
            spec = {"kind": "iid", "dist": [float(x) for x in arg.split(",")] if arg else "uniform"}
        elif kind == "fixed":
            spec = {"kind": "fixed", "outcomes": [int(x) for x in arg.split(",")]}
        elif kind == "adaptive":
            spec = {"kind": "adaptive", "window": int(arg) if arg else None}
        else:
            raise ValueError(f"unknown adversary spec {spec!r}")
    kind = spec.get("kind")
    if kind == "iid":
        dist = spec.get("dist", "uniform")
        if isinstance(dist, str) and dist == "uniform":
            dist = [1.0 / game.n_outcomes] * game.n_outcomes
        return IID(dist)
    if kind == "fixed":
        return FixedSequence(spec["outcomes"])
    if kind == "adaptive":
        return AdaptiveWorst(spec.get("window"))
    raise ValueError(f"unknown adversary kind {kind!r}")


class SlopeFit(NamedTuple):
    slope: float
    clamped_points: int


def fit_slope(points, floor: float = 1.0) -> SlopeFit:
    """Least-squares slope of log(value) against log(horizon).

    Non-positive values are clamped to ``floor`` before taking logs; the
    number of clamped points is part of the result.
    """
    points = list(points)
    if len(points) < 2:
        raise ValueError("slope fit needs at least two points")
    clamped = sum(1 for _, y in points if y <= 0)
    xs = np.log([float(t) for t, _ in points])
    ys = np.log([max(float(y), floor) for _, y in points])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return SlopeFit(slope, clamped)


@dataclass
class ExperimentConfig:
    game: str
    adversary: Any = "uniform"
    horizons: list[int] = field(default_factory=lambda: [1000])
    seeds: Any = 1  # count (replicate index is the seed) or explicit list
    eta: Any = "auto"
    gamma: Any = "auto"
    checkpoints: list[int] | None = None
    out_dir: str = "pm_out"

    def seed_list(self) -> list[int]:
        seeds = list(range(self.seeds)) if isinstance(self.seeds, int) \
            else [int(s) for s in self.seeds]
        if len(set(seeds)) != len(seeds):
            raise ValueError(f"seeds must be distinct: {seeds}")
        return seeds

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {"game", "adversary", "horizons", "seeds", "eta", "gamma",
                 "checkpoints", "out_dir"}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)


@dataclass
class ExperimentResult:
    summary: dict
    summary_path: str
    csv_paths: list[str]


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def _write_run_csv(path: str, transcript, loss, graph, checkpoints) -> float:
    """Write checkpoint rows for one run; returns the final internal regret."""
    horizon = transcript[-1].t if transcript else 0
    marks = set(checkpoints) if checkpoints else set(range(1, horizon + 1))
    tracker = RegretTracker(loss, graph)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in transcript:
            tracker.update(row.action, row.outcome)
            if row.t in marks:
                writer.writerow([
                    row.t, row.k, row.action, row.outcome, _fmt(row.loss),
                    _fmt(tracker.cum_loss), _fmt(tracker.external()),
                    _fmt(tracker.internal()[0]), _fmt(tracker.local_internal()),
                ])
    return tracker.internal()[0] if transcript else 0.0


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run the sweep described by ``config`` and persist CSVs plus a summary.

    Games failing the observability gate are refused: a classification
    report is written and NotLocallyObservableError raised.  Dominated or
    degenerate games are refused via their geometry errors.
    """
    game, game_name = resolve_game(config.game)
    graph, geo = analyze_geometry(game)
    observers = check_game(game, graph)
    os.makedirs(config.out_dir, exist_ok=True)

    if not observers.locally_observable:
        report = {
            "game": game_name,
            "locally_observable": False,
            "observability": observers.to_dict(),
            "dominated_actions": geo.dominated_actions,
            "degenerate_witnesses": [list(w) for w in geo.degenerate_witnesses],
        }
        path = os.path.join(config.out_dir, "classification.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        raise NotLocallyObservableError(
            f"{game_name}: pairs without observers {observers.unobservable_pairs()} "
            f"(report at {path})"
        )
    if geo.degenerate_witnesses:
        raise DegenerateGameError(f"{game_name}: tied cells {geo.degenerate_witnesses}")
    if geo.dominated_actions:
        raise DominatedActionError(f"{game_name}: dominated action(s) {geo.dominated_actions}")

    horizons = sorted(config.horizons)
    seeds = config.seed_list()
    csv_paths = []
    final_int = {T: [] for T in horizons}
    for T in horizons:
        for seed in seeds:
            engine = Engine(
                game, make_adversary(config.adversary, game), T,
                EngineConfig(eta=config.eta, gamma=config.gamma, seed=seed),
                graph=graph, observers=observers,
            )
            transcript = engine.run()
            path = os.path.join(config.out_dir, f"run_T{T}_seed{seed}.csv")
            final_int[T].append(_write_run_csv(path, transcript, game.loss, graph,
                                               config.checkpoints))
            csv_paths.append(path)

    means = [float(np.mean(final_int[T])) for T in horizons]
    stds = [float(np.std(final_int[T])) for T in horizons]
    fit = fit_slope(zip(horizons, means)) if len(horizons) >= 2 else None
    summary = {
        "game": game_name,
        "N": game.n_actions,
        "M": game.n_outcomes,
        "v_bar": observers.v_bar,
        "l_bar": observers.l_bar,
        "eta": config.eta,
        "gamma": config.gamma,
        "horizons": horizons,
        "mean_int_regret": means,
        "std_int_regret": stds,
        "theorem_bound": [theorem_bound(game.n_actions, observers.v_bar, T) for T in horizons],
        "slope": fit.slope if fit else None,
        "clamped_points": fit.clamped_points if fit else 0,
    }
    summary_path = os.path.join(config.out_dir, "summary.json")
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    return ExperimentResult(summary, summary_path, csv_paths)
