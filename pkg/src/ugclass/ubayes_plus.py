"""uBayes+ (edge activation with automatic theta selection) and uBayes+RN.

The active-edge ratio theta is chosen on a node sample of the graph: the
sample's labeled nodes are split into a training part, which seeds uBayes, and
a hold-out part, which scores each candidate theta. The winning ratio is then
applied to the full graph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._util import ceil_count, default_theta_grid, make_rng, round_half_up
from .bayes import DEFAULT_DELTA_S, as_label_array, mix, normalize, num_labels_of
from .errors import EmptySample, MismatchedLabelSets, NoLabeledNodes, TooFewLabels
from .graph import as_graph, induced_subgraph, top_edges_by_prob
from .ubayes import LabelAssignment, UBayesParams, ubayes_run

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UBayesPlusParams:
    alpha: float = 0.2
    beta: float = 0.1
    theta_grid: tuple = field(default_factory=lambda: tuple(default_theta_grid()))
    seed: int = 0
    delta_s: float = DEFAULT_DELTA_S

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        grid = tuple(float(t) for t in self.theta_grid)
        if not grid or grid[-1] != 1.0:
            raise ValueError("theta_grid must end at 1.0")
        if any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] <= 0.0:
            raise ValueError("theta_grid must be strictly increasing and positive")
        object.__setattr__(self, "theta_grid", grid)


class SampledNetwork(NamedTuple):
    graph: object
    labels: np.ndarray
    nodes: np.ndarray  # original id of each sampled node


@dataclass(frozen=True)
class ThetaSweepResult:
    per_theta_accuracy: list
    theta_star: float

    @property
    def best_accuracy(self) -> float:
        return max(a for _, a in self.per_theta_accuracy)


def sample_network(g, seeds, alpha: float, seed) -> SampledNetwork:
    """Induced subgraph on ``ceil(alpha * |N|)`` uniformly drawn nodes."""
    g = as_graph(g)
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    labels = as_label_array(seeds)
    k = ceil_count(alpha, g.node_count)
    if k == 0:
        raise EmptySample("node sample is empty")
    nodes = np.sort(make_rng(seed, 0).choice(g.node_count, size=min(k, g.node_count), replace=False))
    return SampledNetwork(induced_subgraph(g, nodes), labels[nodes].copy(), nodes)


def split_holdout(labeled_nodes, beta: float, seed) -> tuple:
    """Disjoint random (train, hold) split with ``max(1, round(beta * n))`` training nodes.

    The training share is capped at ``n - 1`` so the hold-out set is never empty.
    """
    nodes = np.asarray(sorted(int(x) for x in labeled_nodes), dtype=np.int64)
    if len(nodes) < 2:
        raise TooFewLabels(f"need at least 2 labeled nodes to split, got {len(nodes)}")
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    n_train = min(max(1, round_half_up(beta, len(nodes))), len(nodes) - 1)
    perm = make_rng(seed, 1).permutation(nodes)
    return np.sort(perm[:n_train]), np.sort(perm[n_train:])


def theta_sweep(g, labels, train, hold, theta_grid, delta_s: float = DEFAULT_DELTA_S,
                delta_e: float = 0.0, num_labels: int | None = None) -> ThetaSweepResult:
    """Hold-out accuracy of uBayes for every theta in the grid.

    ``labels`` holds the known labels of ``g``; only ``train`` entries seed the
    runs and ``hold`` entries are scored.
    """
    g = as_graph(g)
    labels = as_label_array(labels)
    train = np.asarray(train, dtype=np.int64)
    hold = np.asarray(hold, dtype=np.int64)
    if len(train) == 0:
        raise NoLabeledNodes("theta sweep needs training labels")
    seeds = np.zeros_like(labels)
    seeds[train] = labels[train]
    l = num_labels_of(labels, num_labels)
    params = UBayesParams(delta_s=delta_s, rn_weight=delta_e, trace=False)
    curve = []
    for theta in theta_grid:
        run = ubayes_run(top_edges_by_prob(g, theta), seeds, params, l)
        acc = float(np.mean(run.labels[hold] == labels[hold])) if len(hold) else 0.0
        curve.append((float(theta), acc))
    best = max(a for _, a in curve)
    theta_star = next(t for t, a in curve if a == best)
    return ThetaSweepResult(curve, theta_star)


def select_theta(g, seeds, params: UBayesPlusParams, delta_e: float = 0.0,
                 num_labels: int | None = None) -> ThetaSweepResult:
    sample = sample_network(g, seeds, params.alpha, params.seed)
    train, hold = split_holdout(np.flatnonzero(sample.labels), params.beta, params.seed)
    return theta_sweep(sample.graph, sample.labels, train, hold, params.theta_grid,
                       params.delta_s, delta_e, num_labels)


def ubayes_plus_run(g, seeds, params: UBayesPlusParams | None = None, delta_e: float = 0.0,
                    num_labels: int | None = None) -> LabelAssignment:
    """uBayes on the ``theta*`` most probable edges of ``g``.

    Falls back to plain uBayes on the whole graph when the sample is empty or
    holds fewer than two labeled nodes. ``delta_e > 0`` turns on RN mixing.
    """
    params = params or UBayesPlusParams()
    g = as_graph(g)
    labels = as_label_array(seeds)
    if not (labels != 0).any():
        raise NoLabeledNodes("uBayes+ needs at least one labeled node")
    l = num_labels_of(labels, num_labels)
    inner = UBayesParams(delta_s=params.delta_s, rn_weight=delta_e)
    try:
        sweep = select_theta(g, labels, params, delta_e, l)
    except (EmptySample, TooFewLabels) as exc:
        log.warning("theta selection skipped (%s); running uBayes on all edges", exc)
        run = ubayes_run(g, labels, inner, l)
        run.info.update(theta_star=None, sweep=None)
        return run
    run = ubayes_run(top_edges_by_prob(g, sweep.theta_star), labels, inner, l)
    run.info.update(theta_star=sweep.theta_star, sweep=sweep.per_theta_accuracy)
    return run


def ubayes_plus_rn_run(g, seeds, params: UBayesPlusParams | None = None, delta_e: float = 0.5,
                       num_labels: int | None = None) -> LabelAssignment:
    """uBayes+ where each frontier node mixes its Bayes posterior with RN scores."""
    if not 0.0 <= delta_e <= 1.0:
        raise ValueError("delta_e must lie in [0, 1]")
    return ubayes_plus_run(g, seeds, params, delta_e, num_labels)


def ensemble_scores(bayes, rn, delta_e: float) -> np.ndarray:
    """Convex mix ``(bayes + delta_e * rn) / (1 + delta_e)`` of the normalized score vectors."""
    bayes = np.asarray(bayes, dtype=np.float64)
    rn = np.asarray(rn, dtype=np.float64)
    if bayes.shape != rn.shape:
        raise MismatchedLabelSets(f"score vectors cover {bayes.shape} and {rn.shape} labels")
    if not 0.0 <= delta_e <= 1.0:
        raise ValueError("delta_e must lie in [0, 1]")
    return mix(normalize(bayes), normalize(rn), delta_e)
