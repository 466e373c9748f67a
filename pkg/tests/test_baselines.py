import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import BLACK, WHITE
from ugclass import UncertainGraph, rn_classify, rn_score, sample_world, sampling_classify, wvrn_classify
from ugclass.baselines import VoteTally, relax
from ugclass.synthetic import planted_partition


def test_rn_score_values():
    s = rn_score([(BLACK, 0.3), (BLACK, 0.9), (WHITE, 0.2)])
    assert s[0] == pytest.approx(1.2 / 1.4) and s[1] == pytest.approx(0.2 / 1.4)
    assert rn_score([(WHITE, 0.4), (WHITE, 0.1)]).tolist() == [0.0, 1.0]
    assert rn_score([], num_labels=4).tolist() == [0.25] * 4
    assert rn_score([(0, 0.5)], num_labels=2).tolist() == [0.5, 0.5]


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 3), st.floats(0.01, 1.0)), min_size=1, max_size=8),
    st.floats(0.1, 1.0),
)
def test_rn_score_properties(nbrs, c):
    s = rn_score(nbrs, 3)
    assert s.sum() == pytest.approx(1.0)
    np.testing.assert_allclose(rn_score([(t, p * c) for t, p in nbrs], 3), s, rtol=1e-9, atol=1e-12)


def test_rn_classify_uses_seed_neighbors_only():
    g = UncertainGraph.from_arrays(5, [0, 1, 2, 3], [1, 2, 3, 4], [0.9, 0.9, 0.9, 0.9])
    run = rn_classify(g, np.array([2, 0, 0, 0, 1]))
    # node 2 has no seeded neighbor; the prior ties and goes to label 1
    assert run.labels.tolist() == [2, 2, 1, 1, 1]
    assert run.final_step == 1


def path(probs):
    n = len(probs) + 1
    return UncertainGraph.from_arrays(n, range(n - 1), range(1, n), probs)


def test_wvrn_single_black_neighbor():
    run = wvrn_classify(path([0.7]), np.array([1, 0]), num_labels=2)
    assert run.labels.tolist() == [1, 1]
    assert run.info["iterations"] <= 2


def test_wvrn_barbell_midpoint_tie():
    g = path([0.8, 0.5, 0.5, 0.8])
    seeds = np.array([BLACK, 0, 0, 0, WHITE])
    state = relax(g, seeds)
    np.testing.assert_allclose(state.belief[2], [0.5, 0.5], atol=1e-6)
    assert wvrn_classify(g, seeds).labels.tolist() == [1, 1, 1, 2, 2]


def test_wvrn_iteration_cap_and_invariants():
    g, truth = planted_partition(40, 3, seed=2)
    seeds = truth * (np.arange(len(truth)) % 5 == 0)
    state = relax(g, seeds, max_iterations=20, tol=0.0)
    assert state.iteration == 20
    np.testing.assert_allclose(state.belief.sum(axis=1), 1.0)
    known = seeds != 0
    assert (state.belief[known, seeds[known] - 1] == 1.0).all()
    run = wvrn_classify(g, seeds, max_iterations=20)
    assert run.info["iterations"] <= 20
    assert (run.labels[known] == seeds[known]).all()


def test_wvrn_time_budget_stops_early():
    g, truth = planted_partition(50, 2, seed=3)
    seeds = truth * (np.arange(len(truth)) % 10 == 0)
    run = wvrn_classify(g, seeds, time_budget=0.0)
    assert run.info["iterations"] == 1


def test_world_certain_edges_and_determinism():
    g = path([1.0, 0.5, 0.2])
    for s in range(20):
        assert sample_world(g, s).present[0]
    a, b = sample_world(g, 7), sample_world(g, 7)
    assert np.array_equal(a.present, b.present)
    assert (a.graph.prob == 1.0).all()


def test_world_inclusion_frequency_and_independence():
    g = path([0.5, 0.3])
    rng = np.random.default_rng(0)
    draws = np.array([sample_world(g, rng).present for _ in range(100_000)])
    f1, f2 = draws.mean(axis=0)
    assert abs(f1 - 0.5) <= 0.01
    joint = (draws[:, 0] & draws[:, 1]).mean()
    se = np.sqrt(0.15 * 0.85 / len(draws))
    assert abs(joint - f1 * f2) <= 3 * se


def test_sampling_all_certain_equals_unit_wvrn():
    g, truth = planted_partition(30, 2, seed=4)
    g = g.with_edges(g.src, g.dst, np.ones(g.num_edges))
    seeds = truth * (np.arange(len(truth)) % 4 == 0)
    capped = wvrn_classify(g, seeds, max_iterations=20, unit_weights=True).labels
    for worlds in (1, 7):
        assert np.array_equal(sampling_classify(g, seeds, worlds, seed=3).labels, capped)
    assert np.array_equal(capped, wvrn_classify(g, seeds, unit_weights=True).labels)


def test_single_world_equals_classifier_on_that_world():
    from ugclass._util import make_rng

    g, truth = planted_partition(20, 2, seed=5)
    seeds = truth * (np.arange(len(truth)) % 3 == 0)
    world = sample_world(g, make_rng(9, 0)).graph
    expect = wvrn_classify(world, seeds, max_iterations=20, num_labels=2, unit_weights=True).labels
    assert np.array_equal(sampling_classify(g, seeds, 1, seed=9).labels, expect)


def test_sampling_planted_margins():
    g, truth = planted_partition(50, 2, intra_degree=6, inter_degree=2, seed=6)
    seeds = truth * (np.arange(len(truth)) % 5 == 0)
    run = sampling_classify(g, seeds, 50, seed=1)
    votes = run.info["tally"].votes
    assert (votes.sum(axis=1) == 50).all()
    assert np.mean(votes[np.arange(len(truth)), truth - 1] > 25) >= 0.9


def test_sampling_matches_world_enumeration():
    # 6 nodes, 6 uncertain edges: exact vote distribution by enumerating 2^6 worlds
    src, dst = [0, 1, 2, 3, 4, 1], [1, 2, 3, 4, 5, 4]
    g = UncertainGraph.from_arrays(6, src, dst, [0.9, 0.6, 0.3, 0.5, 0.8, 0.4])
    prob = g.prob  # canonical edge order
    seeds = np.array([1, 0, 0, 0, 0, 2])
    exact = np.zeros((6, 2))
    for mask in itertools.product([False, True], repeat=6):
        m = np.array(mask)
        weight = np.prod(np.where(m, prob, 1 - prob))
        world = g.with_edges(g.src[m], g.dst[m], np.ones(int(m.sum())))
        lab = wvrn_classify(world, seeds, 20, num_labels=2, unit_weights=True).labels
        exact[np.arange(6), lab - 1] += weight
    worlds = 2000
    freq = sampling_classify(g, seeds, worlds, seed=2).info["tally"].votes / worlds
    se = np.sqrt(exact * (1 - exact) / worlds) + 1e-9
    assert (np.abs(freq - exact) <= 4 * se + 1e-12).all()


def test_tally_merge_and_conservation():
    a = VoteTally(np.zeros((3, 2), dtype=int))
    b = VoteTally(np.zeros((3, 2), dtype=int))
    a.add(np.array([1, 2, 2]))
    b.add(np.array([1, 1, 2]))
    b.add(np.array([2, 1, 2]))
    m1, m2 = a.merge(b), b.merge(a)
    assert np.array_equal(m1.votes, m2.votes) and m1.worlds_used == 3
    assert (m1.votes.sum(axis=1) == 3).all()
    assert m1.winners().tolist() == [1, 1, 2]
