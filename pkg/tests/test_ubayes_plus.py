import numpy as np
import pytest

from fixtures import BLACK, WHITE, decoy_graph
from ugclass import (
    UBayesPlusParams,
    UncertainGraph,
    ensemble_scores,
    theta_sweep,
    ubayes_plus_rn_run,
    ubayes_plus_run,
    ubayes_run,
)
from ugclass.errors import MismatchedLabelSets, TooFewLabels
from ugclass.synthetic import planted_partition
from ugclass.ubayes_plus import sample_network, split_holdout

FULL_ONLY = dict(alpha=1.0, beta=0.5, theta_grid=(1.0,))


def test_default_params():
    p = UBayesPlusParams()
    assert (p.alpha, p.beta) == (0.2, 0.1)
    assert len(p.theta_grid) == 20
    assert p.theta_grid[0] == 0.05 and p.theta_grid[-1] == 1.0


@pytest.mark.parametrize("grid", [(0.5,), (0.5, 0.3, 1.0), (0.0, 1.0)])
def test_bad_grid(grid):
    with pytest.raises(ValueError):
        UBayesPlusParams(theta_grid=grid)


def test_sample_identity_and_count():
    g, truth = planted_partition(50, 2, seed=3)
    full = sample_network(g, truth, 1.0, seed=0)
    assert full.graph == g and np.array_equal(full.labels, truth)
    part = sample_network(g, truth, 0.2, seed=0)
    assert part.graph.node_count == 20
    again = sample_network(g, truth, 0.2, seed=0)
    assert np.array_equal(part.nodes, again.nodes)
    assert np.array_equal(part.labels, truth[part.nodes])


def test_split_counts():
    train, hold = split_holdout(range(10), 0.1, seed=4)
    assert (len(train), len(hold)) == (1, 9)
    assert set(train).isdisjoint(hold) and set(train) | set(hold) == set(range(10))
    with pytest.raises(TooFewLabels):
        split_holdout([7], 0.1, seed=0)


def test_sweep_perfect_homophily_picks_smallest_theta():
    # black clique 0..4, white clique 5..7, no cross edges, all probs >= 0.9;
    # unreachable hold-out nodes fall back to the black-majority prior, so
    # every theta scores 1.0 and the tie rule picks the smallest
    pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)] + [(5, 6), (5, 7), (6, 7)]
    probs = np.linspace(0.9, 1.0, len(pairs))
    g = UncertainGraph.from_arrays(8, [a for a, _ in pairs], [b for _, b in pairs], probs)
    truth = np.array([1] * 5 + [2] * 3)
    res = theta_sweep(g, truth, [0, 1, 5], [2, 3, 4], UBayesPlusParams().theta_grid)
    assert all(acc == 1.0 for _, acc in res.per_theta_accuracy)
    assert res.theta_star == 0.05


def test_sweep_single_grid_value():
    g, truth = planted_partition(10, 2, seed=2)
    res = theta_sweep(g, truth, [0, 10], [1, 11, 2], (1.0,))
    assert res.theta_star == 1.0
    assert 0.0 <= res.best_accuracy <= 1.0


def test_degenerate_params_equal_ubayes():
    g, truth = planted_partition(30, 3, seed=5)
    seeds = truth * (np.arange(len(truth)) % 4 == 0)
    plus = ubayes_plus_run(g, seeds, UBayesPlusParams(**FULL_ONLY))
    assert plus.info["theta_star"] == 1.0
    assert np.array_equal(plus.labels, ubayes_run(g, seeds).labels)


def test_decoy_fixture():
    g, seeds, target = decoy_graph()
    assert ubayes_run(g, seeds)[target] == WHITE
    high_share = (g.prob >= 0.5).mean()
    for s in range(5):
        run = ubayes_plus_run(g, seeds, UBayesPlusParams(alpha=1.0, beta=0.5, seed=s))
        assert run[target] == BLACK
        assert run.info["theta_star"] <= high_share


def test_deterministic():
    g, truth = planted_partition(40, 2, seed=9)
    seeds = truth * (np.arange(len(truth)) % 3 == 0)
    params = UBayesPlusParams(alpha=0.5, beta=0.3, seed=11)
    a = ubayes_plus_run(g, seeds, params)
    b = ubayes_plus_run(g, seeds, params)
    assert np.array_equal(a.labels, b.labels) and a.info == b.info


def test_too_small_sample_falls_back(caplog):
    g = UncertainGraph.from_arrays(4, [0, 1, 2], [1, 2, 3], [0.9, 0.5, 0.2])
    seeds = np.array([1, 0, 0, 2])
    run = ubayes_plus_run(g, seeds, UBayesPlusParams(alpha=0.25))
    assert run.info["theta_star"] is None
    assert np.array_equal(run.labels, ubayes_run(g, seeds).labels)
    assert "theta selection skipped" in caplog.text


def test_ensemble_values():
    np.testing.assert_allclose(ensemble_scores([0.8, 0.2], [0.2, 0.8], 1.0), [0.5, 0.5])
    np.testing.assert_allclose(ensemble_scores([0.6, 0.4], [0.2, 0.8], 0.5), [0.7 / 1.5, 0.8 / 1.5])
    assert np.argmax(ensemble_scores([0.55, 0.45], [0.1, 0.9], 1.0)) == 1
    assert np.argmax(ensemble_scores([0.3, 0.7], [0.9, 0.1], 0.0)) == 1
    with pytest.raises(MismatchedLabelSets):
        ensemble_scores([0.5, 0.5], [1.0], 0.5)


@pytest.mark.parametrize("seed", range(20))
def test_ensemble_convexity(seed):
    rng = np.random.default_rng(seed)
    b, r = rng.random(4), rng.random(4)
    out = ensemble_scores(b, r, rng.random())
    assert out.sum() == pytest.approx(1.0)
    r2 = r.copy()
    r2[np.argmax(b)] = r.max() + 1
    assert np.argmax(ensemble_scores(b, r2, rng.random())) == np.argmax(b)


def test_rn_zero_weight_equals_plus():
    g, truth = planted_partition(30, 2, seed=6)
    seeds = truth * (np.arange(len(truth)) % 3 == 0)
    params = UBayesPlusParams(alpha=0.6, beta=0.4, seed=2)
    a = ubayes_plus_rn_run(g, seeds, params, delta_e=0.0)
    assert np.array_equal(a.labels, ubayes_plus_run(g, seeds, params).labels)


def crafted_override():
    # node 5: one black neighbor at 0.1, one white at 0.9; Bayes leans black (0.6)
    g = UncertainGraph.from_arrays(6, [0, 1, 3, 2, 2, 4], [1, 3, 4, 4, 5, 5], [0.5, 0.5, 0.5, 0.5, 0.1, 0.9])
    return g, np.array([1, 1, 1, 2, 2, 0])


def test_rn_overrides_bayes():
    g, seeds = crafted_override()
    params = UBayesPlusParams(**FULL_ONLY)
    assert ubayes_plus_rn_run(g, seeds, params, delta_e=0.0)[5] == BLACK
    assert ubayes_plus_rn_run(g, seeds, params, delta_e=1.0)[5] == WHITE


def test_rn_agreeing_label_kept():
    g = UncertainGraph.from_arrays(4, [0, 1, 2], [1, 2, 3], [0.9, 0.9, 0.9])
    seeds = np.array([1, 1, 0, 2])
    for d in (0.0, 0.3, 1.0):
        run = ubayes_plus_rn_run(g, seeds, UBayesPlusParams(**FULL_ONLY), delta_e=d)
        assert run[2] == ubayes_run(g, seeds)[2]
