import numpy as np
import pytest
from _mc import check_unbiased

from pmsim import analyze_geometry, check_game
from pmsim.learner import (
    RoundRecord,
    aggregate_costs,
    estimate_b,
    exp_weights_step,
    invoke,
    make_learner,
)


@pytest.fixture(scope="module")
def bandit_setup(bandit_mp):
    graph, _ = analyze_geometry(bandit_mp)
    return bandit_mp, graph, check_game(bandit_mp, graph)


@pytest.fixture(scope="module")
def apple_setup(apple_tasting):
    graph, _ = analyze_geometry(apple_tasting)
    return apple_tasting, graph, check_game(apple_tasting, graph)


def _record(game, state, k, played, outcome, t=1, q=None):
    sig = game.observe(played, outcome, np.random.default_rng(0), t=t)
    return RoundRecord(t=t, k=k, played=played, signal=sig,
                       q_snapshot=state.q if q is None else np.asarray(q, dtype=float))


def test_estimate_b_zero_when_uninvolved(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.1)
    rec = _record(game, state, k=1, played=1, outcome=0)  # I != 0 and k != 0
    assert estimate_b(state, rec, obs, 0) == 0.0
    assert estimate_b(state, rec, obs, 1) == 0.0


def test_estimate_b_importance_weighted_branch(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.1)
    rec = _record(game, state, k=0, played=1, outcome=0, q=[0.75, 0.25])
    # own-action block silent; neighbor block reads signal "1" (index 0 of row 1)
    expected = obs.observer(0, 1).bottom[rec.signal.symbol] / 0.25
    assert estimate_b(state, rec, obs, 1) == pytest.approx(expected)
    assert estimate_b(state, rec, obs, 0) == 0.0  # self-estimate always zero


def test_estimate_b_own_play_branch(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.1)
    rec = _record(game, state, k=1, played=0, outcome=1)
    expected = obs.observer(0, 1).top[rec.signal.symbol]
    assert estimate_b(state, rec, obs, 1) == pytest.approx(expected)


def test_estimate_b_zero_probability_is_fatal(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.0)
    rec = _record(game, state, k=0, played=1, outcome=0, q=[1.0, 0.0])
    with pytest.raises(RuntimeError, match="zero probability"):
        estimate_b(state, rec, obs, 1)


def test_estimate_b_uses_snapshot_not_current_q(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.1)
    rec = _record(game, state, k=0, played=1, outcome=0, q=[0.5, 0.5])
    state.q = np.array([0.99, 0.01])  # later update must not leak in
    expected = obs.observer(0, 1).bottom[rec.signal.symbol] / 0.5
    assert estimate_b(state, rec, obs, 1) == pytest.approx(expected)


def test_aggregate_two_hand_computed_rounds(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.0)
    state.buffer.append(_record(game, state, k=1, played=0, outcome=1, t=1))
    state.buffer.append(_record(game, state, k=0, played=1, outcome=0, t=2,
                                q=[0.5, 0.5]))
    costs = aggregate_costs(state, obs)
    # round 1: top block of v=(.5,-.5,.5,-.5) reads symbol "1" -> -0.5
    # round 2: bottom block reads symbol "1" -> +0.5, importance weight 1/0.5
    assert costs.f[1] == pytest.approx(-0.5 + 0.5 / 0.5)
    assert costs.f[0] == 0.0


def test_aggregate_blind_self_round_is_all_zero(apple_setup):
    # the blind row's observer block is zero, so self-play rounds teach nothing
    game, graph, obs = apple_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.0)
    state.buffer.append(_record(game, state, k=0, played=0, outcome=1))
    np.testing.assert_allclose(aggregate_costs(state, obs).f, [0.0, 0.0], atol=1e-12)


def test_aggregate_requires_buffer(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.1, gamma=0.0)
    with pytest.raises(RuntimeError, match="empty buffer"):
        aggregate_costs(state, obs)


def test_exp_weights_identity_on_zero_costs():
    x = np.array([0.2, 0.3, 0.5])
    np.testing.assert_allclose(exp_weights_step(x, np.zeros(3), eta=0.7), x, atol=1e-15)


def test_exp_weights_closed_form():
    x = np.array([0.5, 0.5])
    out = exp_weights_step(x, np.array([1.0, 0.0]), eta=np.log(2.0))
    np.testing.assert_allclose(out, [1 / 3, 2 / 3], atol=1e-12)


def test_exp_weights_shift_invariance():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        x = rng.dirichlet(np.ones(n))
        f = rng.normal(scale=5.0, size=n)
        c = rng.normal(scale=10.0)
        a = exp_weights_step(x, f, eta=0.3)
        b = exp_weights_step(x, f + c, eta=0.3)
        assert np.abs(a - b).max() <= 1e-12


def test_invoke_zero_costs_keeps_uniform(apple_setup):
    game, graph, obs = apple_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.5, gamma=0.0)
    state.buffer.append(_record(game, state, k=0, played=0, outcome=1))
    invoke(state, obs)
    np.testing.assert_allclose(state.q, [0.5, 0.5], atol=1e-15)
    assert state.count == 1 and not state.buffer


def test_invoke_gamma_mixing(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=1.0, gamma=0.2)
    # huge relative cost for the neighbor drives x' to a corner exactly
    state.buffer.append(_record(game, state, k=0, played=0, outcome=1, t=1))
    costs_rec = _record(game, state, k=0, played=1, outcome=0, t=2, q=[0.5, 1e-6])
    state.buffer.append(costs_rec)
    invoke(state, obs)
    np.testing.assert_allclose(state.x, [1.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(state.q, [0.9, 0.1], atol=1e-12)


def test_invoke_gamma_zero_means_q_equals_x(bandit_setup):
    game, graph, obs = bandit_setup
    state = make_learner(0, graph.neighbors[0], 2, eta=0.5, gamma=0.0)
    state.buffer.append(_record(game, state, k=0, played=1, outcome=0, q=[0.5, 0.5]))
    invoke(state, obs)
    np.testing.assert_array_equal(state.q, state.x)


def test_invoke_restores_distribution_invariants(bandit_setup):
    game, graph, obs = bandit_setup
    rng = np.random.default_rng(4)
    state = make_learner(0, graph.neighbors[0], 2, eta=0.8, gamma=0.3)
    for t in range(1, 60):
        k = int(rng.integers(2))
        played = int(rng.integers(2)) if k != 0 else int(rng.choice([0, 1]))
        state.buffer.append(_record(game, state, k=k, played=played,
                                    outcome=int(rng.integers(2)), t=t))
        if k == 0:
            invoke(state, obs)
            assert abs(state.q.sum() - 1.0) <= 1e-12
            assert abs(state.x.sum() - 1.0) <= 1e-12
            assert np.all(state.q[state.neighbors] >= 0.3 / 2 - 1e-15)
            mixed = (1 - 0.3) * state.x + 0.3 / 2
            np.testing.assert_array_equal(state.q[state.neighbors], mixed)


def test_estimator_unbiased_small_scale(bandit_setup):
    game, graph, obs = bandit_setup
    check_unbiased(game, graph, obs, qs=[[0.7, 0.3], [0.4, 0.6]],
                   n_rounds=30_000, seed=100)
