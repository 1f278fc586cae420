"""Observer vectors: recovering loss differences from pair signal matrices.

A neighboring pair (i, j) is observable when the loss difference between the
two actions lies in the row space of their stacked signal matrix, i.e. there
is a vector v with ``stacked(i, j)^T v = loss[j] - loss[i]``.  Such a v turns
observed signals into unbiased loss-difference estimates, so its existence
for every neighboring pair is exactly what the learner needs.  We always pick
the minimum-norm solution: it is unique, reproducible, and minimizes the
constant that scales the regret guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .games import Game
from .geometry import NeighborhoodGraph

REL_TOL = 1e-8


@dataclass(frozen=True)
class ObserverVector:
    """Minimum-norm v with stacked(i, j)^T v ~ loss[j] - loss[i].

    ``split`` is the number of leading coordinates belonging to action i's
    symbols; the rest belong to action j.  ``residual`` is the sup-norm
    defect of the linear system; the pair is observable iff it is below
    REL_TOL relative to the target's magnitude.
    """

    i: int
    j: int
    v: np.ndarray
    split: int
    residual: float
    observable: bool

    @property
    def top(self) -> np.ndarray:
        return self.v[:self.split]

    @property
    def bottom(self) -> np.ndarray:
        return self.v[self.split:]

    @property
    def sup_norm(self) -> float:
        return float(np.abs(self.v).max())


@dataclass
class ObservabilityReport:
    per_pair: dict[tuple[int, int], ObserverVector]
    locally_observable: bool
    v_bar: float
    l_bar: float

    def observer(self, i: int, j: int) -> ObserverVector:
        return self.per_pair[(i, j)]

    def unobservable_pairs(self) -> list[tuple[int, int]]:
        return sorted(p for p, ov in self.per_pair.items() if not ov.observable)

    def to_dict(self) -> dict:
        return {
            "locally_observable": self.locally_observable,
            "v_bar": self.v_bar,
            "l_bar": self.l_bar,
            "pairs": [
                {
                    "i": ov.i,
                    "j": ov.j,
                    "observable": ov.observable,
                    "residual": ov.residual,
                    "v": ov.v.tolist() if ov.observable else None,
                }
                for ov in (self.per_pair[p] for p in sorted(self.per_pair))
            ],
        }


def solve_observer(game: Game, i: int, j: int) -> ObserverVector:
    """Least-squares observer for the ordered pair (i, j)."""
    if i == j:
        raise ValueError("observer vectors are defined for distinct actions")
    stacked = game.stacked_signal_matrix(i, j)
    target = game.loss[j] - game.loss[i]
    v, *_ = np.linalg.lstsq(stacked.T, target, rcond=None)
    residual = float(np.abs(stacked.T @ v - target).max())
    tol = REL_TOL * (1.0 + float(np.abs(target).max()))
    return ObserverVector(
        i=i, j=j, v=v, split=game.signal_matrix(i).n_symbols,
        residual=residual, observable=residual <= tol,
    )


def check_game(game: Game, graph: NeighborhoodGraph) -> ObservabilityReport:
    """Solve every neighboring pair in both orientations and aggregate.

    Each learner consumes its own orientation of a pair, so (i, j) and (j, i)
    are solved separately even though one is the block-swapped negation of
    the other.
    """
    per_pair = {(i, j): solve_observer(game, i, j) for i, j in graph.neighbor_pairs()}
    observable = all(ov.observable for ov in per_pair.values())
    v_bar = max((ov.sup_norm for ov in per_pair.values() if ov.observable), default=0.0)
    return ObservabilityReport(
        per_pair=per_pair,
        locally_observable=observable,
        v_bar=v_bar,
        l_bar=float(np.abs(game.loss).max()),
    )
