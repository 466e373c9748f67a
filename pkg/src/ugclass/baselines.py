"""Comparison classifiers: RN, wvRN with relaxation labeling, and possible-worlds sampling."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ._util import make_rng
from .bayes import as_label_array, estimate_priors, num_labels_of
from .errors import NoLabeledNodes
from .graph import UncertainGraph, as_graph
from .ubayes import LabelAssignment

CONVERGENCE_TOL = 1e-6
DEFAULT_NUM_WORLDS = 50
WORLD_SWEEPS = 20
# hard stop for relaxation when neither an iteration cap nor a time budget is given
MAX_SWEEPS = 1000


def rn_score(labeled_neighbors, num_labels: int | None = None) -> np.ndarray:
    """Probability-weighted share of each label among labeled neighbors.

    With no labeled neighbor the result is uniform over ``num_labels``.
    """
    pairs = [(int(t), float(p)) for t, p in labeled_neighbors if t]
    l = num_labels if num_labels is not None else max((t for t, _ in pairs), default=0)
    if l <= 0:
        raise ValueError("num_labels is required when no neighbor is labeled")
    mass = np.zeros(l)
    for t, p in pairs:
        mass[t - 1] += p
    total = mass.sum()
    if total <= 0:
        return np.full(l, 1.0 / l)
    return mass / total


def _seed_setup(g, seeds, num_labels):
    g = as_graph(g)
    labels = as_label_array(seeds)
    if len(labels) != g.node_count:
        raise ValueError(f"expected {g.node_count} labels, got {len(labels)}")
    known = labels != 0
    if not known.any():
        raise NoLabeledNodes("classifier needs at least one labeled node")
    return g, labels, known, num_labels_of(labels, num_labels)


def _adjacency(g: UncertainGraph, unit_weights: bool) -> sp.csr_matrix:
    w = np.ones_like(g.weights) if unit_weights else g.weights
    return sp.csr_matrix((w, g.indices, g.indptr), shape=(g.node_count, g.node_count))


def _pick(beliefs: np.ndarray) -> np.ndarray:
    return np.argmax(beliefs, axis=1) + 1


def rn_classify(g, seeds, num_labels: int | None = None) -> LabelAssignment:
    """Single RN pass over seed-labeled neighbors; nodes without any fall back to the prior."""
    g, labels, known, l = _seed_setup(g, seeds, num_labels)
    prior = estimate_priors(labels, l).raw
    onehot = np.zeros((g.node_count, l))
    onehot[known, labels[known] - 1] = 1.0
    mass = _adjacency(g, False) @ onehot
    total = mass.sum(axis=1)
    out = labels.copy()
    todo = ~known
    reached = todo & (total > 0)
    out[reached] = _pick(mass[reached])
    out[todo & ~reached] = int(np.argmax(prior)) + 1
    return LabelAssignment(out, seeds=int(known.sum()), final_step=int((todo & ~reached).sum()))


@dataclass
class RelaxationState:
    belief: np.ndarray  # (nodes, labels), rows sum to 1
    iteration: int = 0
    delta: float = np.inf


def relax(g, seeds, num_labels=None, max_iterations=None, time_budget=None,
          unit_weights=False, tol=CONVERGENCE_TOL) -> RelaxationState:
    """Synchronous weighted-vote relaxation; seeds are clamped to point masses."""
    g, labels, known, l = _seed_setup(g, seeds, num_labels)
    prior = estimate_priors(labels, l).raw
    belief = np.tile(prior, (g.node_count, 1))
    belief[known] = 0.0
    belief[known, labels[known] - 1] = 1.0
    adj = _adjacency(g, unit_weights)
    deg = np.asarray(adj.sum(axis=1)).ravel()
    free = np.flatnonzero(~known & (deg > 0))
    cap = MAX_SWEEPS if max_iterations is None and time_budget is None else max_iterations
    state = RelaxationState(belief)
    start = time.perf_counter()
    while len(free) and (cap is None or state.iteration < cap):
        update = (adj[free] @ state.belief) / deg[free, None]
        state.delta = float(np.abs(update - state.belief[free]).sum(axis=1).max())
        state.belief[free] = update
        state.iteration += 1
        if state.delta < tol:
            break
        if time_budget is not None and time.perf_counter() - start >= time_budget:
            break
    return state


def wvrn_classify(g, seeds, max_iterations: int | None = None, time_budget: float | None = None,
                  num_labels: int | None = None, unit_weights: bool = False) -> LabelAssignment:
    """wvRN: edge-probability-weighted relaxation labeling, argmax of final beliefs."""
    g, labels, known, l = _seed_setup(g, seeds, num_labels)
    state = relax(g, labels, l, max_iterations, time_budget, unit_weights)
    out = labels.copy()
    out[~known] = _pick(state.belief[~known])
    return LabelAssignment(out, seeds=int(known.sum()),
                           info={"iterations": state.iteration, "delta": state.delta})


@dataclass(frozen=True, eq=False)
class WorldSample:
    """One deterministic instantiation: the edges that exist, each with weight 1."""

    graph: UncertainGraph
    present: np.ndarray  # boolean mask over the base graph's edges


def sample_world(g, seed) -> WorldSample:
    g = as_graph(g)
    rng = make_rng(seed)
    present = rng.random(g.num_edges) < g.prob
    world = g.with_edges(g.src[present], g.dst[present], np.ones(int(present.sum())))
    return WorldSample(world, present)


@dataclass
class VoteTally:
    votes: np.ndarray  # (nodes, labels) counts
    worlds_used: int = 0

    def add(self, labels: np.ndarray):
        self.votes[np.arange(len(labels)), labels - 1] += 1
        self.worlds_used += 1

    def merge(self, other: "VoteTally") -> "VoteTally":
        return VoteTally(self.votes + other.votes, self.worlds_used + other.worlds_used)

    def winners(self) -> np.ndarray:
        return _pick(self.votes)


def sampling_classify(g, seeds, num_worlds: int = DEFAULT_NUM_WORLDS, time_budget: float | None = None,
                      seed=0, num_labels: int | None = None) -> LabelAssignment:
    """Vote over RN labelings of sampled possible worlds.

    Each world is classified by unit-weight relaxation (at most 20 sweeps);
    world ``w`` draws from child stream ``w`` of ``seed``.
    """
    if num_worlds < 1:
        raise ValueError("num_worlds must be at least 1")
    g, labels, known, l = _seed_setup(g, seeds, num_labels)
    tally = VoteTally(np.zeros((g.node_count, l), dtype=np.int64))
    start = time.perf_counter()
    for w in range(num_worlds):
        world = sample_world(g, make_rng(seed, w))
        tally.add(wvrn_classify(world.graph, labels, WORLD_SWEEPS, None, l, unit_weights=True).labels)
        if time_budget is not None and time.perf_counter() - start >= time_budget:
            break
    return LabelAssignment(tally.winners(), seeds=int(known.sum()),
                           info={"worlds_used": tally.worlds_used, "tally": tally})
