#!/usr/bin/env python3
"""Best-response cells over the outcome simplex and who neighbors whom.

A three-action game: two matching-pennies rows plus a flat hedge row.  The
hedge owns the middle of the simplex, so the pennies rows stop being
neighbors of each other -- every rewrite the learner must resist is local.
"""

import numpy as np

from pmsim import (
    DegenerateGameError,
    DominatedActionError,
    Game,
    best_response,
    build_graph,
    cell_margin,
    pair_margin,
)

L = np.array([[0.0, 1.0], [1.0, 0.0], [0.4, 0.4]])
game = Game.deterministic(L, [["0", "1"]] * 3)

print("best response along the simplex edge q = (q0, 1-q0):")
for q0 in np.linspace(0, 1, 11):
    br = best_response(L, [q0, 1 - q0])
    print(f"  q0={q0:.1f}: action {br.action} (ties {br.ties})")

print("\ncell margins:", [round(cell_margin(L, i), 6) for i in range(3)])
print("pair margins:")
for i in range(3):
    for j in range(i + 1, 3):
        print(f"  ({i},{j}): {pair_margin(L, i, j):.6f}")

graph, report = build_graph(game)
print("\nneighbor sets:", graph.neighbors)
print("connected:", graph.is_connected())

print("\nthe gate rejects broken geometry:")
for loss in ([[0, 1], [1, 0], [0.6, 0.6]], [[0, 1], [1, 0], [0.5, 0.5]]):
    try:
        build_graph(Game.deterministic(loss, [["0", "1"]] * 3))
    except (DominatedActionError, DegenerateGameError) as exc:
        print(f"  {loss} -> {type(exc).__name__}: {exc}")
