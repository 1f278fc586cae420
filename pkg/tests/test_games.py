import json

import numpy as np
import pytest

from pmsim import Game, GameFormatError, parse_game

BANDIT_DOC = json.dumps({"loss": [[0, 1], [1, 0]], "signals": [["0", "1"], ["1", "0"]]})


def test_parse_deterministic_round_trip():
    game = parse_game(BANDIT_DOC)
    assert game.n_actions == 2 and game.n_outcomes == 2
    assert not game.random_signals
    np.testing.assert_array_equal(game.loss, [[0, 1], [1, 0]])
    assert parse_game(json.dumps(game.to_dict())).to_dict() == game.to_dict()


def test_parse_bad_distribution_names_position():
    doc = {
        "loss": [[0, 1], [1, 0]],
        "signal_dists": [
            [{"a": 1.0}, {"a": 1.0}],
            [{"a": 0.4, "b": 0.5}, {"a": 1.0}],
        ],
    }
    with pytest.raises(GameFormatError, match=r"row 2 col 1: distribution sums to 0.9"):
        parse_game(json.dumps(doc))


@pytest.mark.parametrize("doc", [
    {"loss": [[0, 1], [1, 0, 0]], "signals": [["a", "b"], ["a", "b"]]},   # ragged loss
    {"loss": [[0, 1], [1, 0]], "signals": [["a", "b"]]},                  # missing row
    {"loss": [[0, 1], [1, 0]], "signals": [["a"], ["a", "b"]]},           # short row
    {"loss": [[0, 1]], "signals": [["a", "b"]]},                          # N < 2
    {"loss": [[0], [1]], "signals": [["a"], ["b"]]},                      # M < 2
    {"loss": [[0, 1], [1, 0]]},                                           # no feedback
    {"loss": [[0, 1], [1, 0]], "signals": [["a", "b"], ["a", "b"]],
     "signal_dists": [[{"a": 1.0}] * 2] * 2},                             # both kinds
])
def test_parse_rejects_malformed(doc):
    with pytest.raises(GameFormatError):
        parse_game(json.dumps(doc))


def test_parse_rejects_negative_weight():
    doc = {"loss": [[0, 1], [1, 0]],
           "signal_dists": [[{"a": 1.2, "b": -0.2}, {"a": 1.0}], [{"a": 1.0}] * 2]}
    with pytest.raises(GameFormatError, match=r"row 1 col 1.*negative"):
        parse_game(json.dumps(doc))


def test_parse_rejects_nonfinite_loss():
    with pytest.raises(GameFormatError, match="finite"):
        Game.deterministic([[0, float("inf")], [1, 0]], [["a", "b"], ["a", "b"]])


def test_signal_matrix_first_occurrence_order():
    game = Game.deterministic([[0, 1, 2], [1, 1, 1]], [["a", "b", "a"], ["z", "z", "z"]])
    sm = game.signal_matrix(0)
    assert sm.symbols == ("a", "b")
    np.testing.assert_array_equal(sm.matrix, [[1, 0, 1], [0, 1, 0]])
    constant = game.signal_matrix(1)
    assert constant.symbols == ("z",)
    np.testing.assert_array_equal(constant.matrix, [[1, 1, 1]])


def test_signal_matrix_random_transcription():
    game = Game.with_random_signals(
        [[0, 1], [1, 0]],
        [[{"a": 0.3, "b": 0.7}, {"a": 1.0}], [{"c": 1.0}, {"c": 1.0}]],
    )
    xi = game.signal_matrix(0)
    assert xi.symbols == ("a", "b")
    np.testing.assert_allclose(xi.matrix, [[0.3, 1.0], [0.7, 0.0]])


def test_stacked_signal_matrix_bandit(bandit_mp):
    stacked = bandit_mp.stacked_signal_matrix(0, 1)
    # hand enumeration: both rows have symbols ("0","1") in column order, so
    # each block is the identity
    np.testing.assert_array_equal(stacked, [[1, 0], [0, 1], [1, 0], [0, 1]])


def test_stacked_signal_matrix_apple_tasting(apple_tasting):
    np.testing.assert_array_equal(
        apple_tasting.stacked_signal_matrix(0, 1), [[1, 1], [1, 0], [0, 1]])


def test_stacked_row_count_and_self_pair_error(full_info_3x3):
    game = full_info_3x3
    for i in range(3):
        for j in range(3):
            if i == j:
                with pytest.raises(ValueError):
                    game.stacked_signal_matrix(i, j)
            else:
                stacked = game.stacked_signal_matrix(i, j)
                assert stacked.shape[0] == (game.signal_matrix(i).n_symbols
                                            + game.signal_matrix(j).n_symbols)


def test_observe_deterministic_is_pure():
    game = Game.deterministic([[0, 1, 0], [1, 0, 1]], [["a", "b", "a"], ["c", "c", "c"]])
    obs = game.observe(0, 2)
    assert obs.symbol == 0  # symbol "a"
    np.testing.assert_array_equal(obs.vector, [1, 0])
    again = game.observe(0, 2)
    assert again.symbol == obs.symbol
    np.testing.assert_array_equal(again.vector, obs.vector)


def test_observe_degenerate_distribution_is_constant():
    game = Game.with_random_signals(
        [[0, 1], [1, 0]], [[{"a": 1.0}, {"b": 1.0}], [{"c": 1.0}] * 2])
    rng = np.random.default_rng(0)
    for _ in range(50):
        assert game.observe(0, 0, rng).symbol == 0


def test_observe_monte_carlo_frequency():
    game = Game.with_random_signals(
        [[0, 1], [1, 0]], [[{"a": 0.5, "b": 0.5}, {"a": 1.0}], [{"c": 1.0}] * 2])
    rng = np.random.default_rng(12345)
    n = 100_000
    hits = sum(game.observe(0, 0, rng).symbol == 0 for _ in range(n))
    assert abs(hits / n - 0.5) < 0.01


def test_observation_is_unit_vector(bandit_mp_random):
    rng = np.random.default_rng(3)
    for _ in range(200):
        obs = bandit_mp_random.observe(0, rng.integers(2), rng)
        assert obs.vector.sum() == 1.0 and set(obs.vector) <= {0.0, 1.0}


def test_columns_stay_stochastic_after_parse():
    rng = np.random.default_rng(99)
    for _ in range(25):
        n, m = rng.integers(2, 5), rng.integers(2, 5)
        rows = []
        for _ in range(n):
            row = []
            for _ in range(m):
                w = rng.random(rng.integers(1, 4))
                w /= w.sum()
                row.append({f"s{k}": float(x) for k, x in enumerate(w)})
            rows.append(row)
        game = Game.with_random_signals(rng.random((n, m)) + 0.0, rows)
        for i in range(n):
            cols = game.signal_matrix(i).matrix.sum(axis=0)
            np.testing.assert_allclose(cols, 1.0, atol=1e-12)


def test_reparse_is_deterministic(bandit_mp_random):
    doc = json.dumps(bandit_mp_random.to_dict())
    a, b = parse_game(doc), parse_game(doc)
    for i in range(a.n_actions):
        assert a.signal_matrix(i).symbols == b.signal_matrix(i).symbols
        np.testing.assert_array_equal(a.signal_matrix(i).matrix, b.signal_matrix(i).matrix)
