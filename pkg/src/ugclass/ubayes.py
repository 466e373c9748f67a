"""Iterative probabilistic labeling (uBayes).

Starting from the seed labels, each round re-estimates the Bayes model from
all fixed labels, scores every unlabeled node adjacent to a fixed node, fixes
those nodes at their best label and repeats. Nodes never reached this way are
labeled with the most frequent class in one final step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._util import ceil_count
from .bayes import (
    DEFAULT_DELTA_S,
    as_label_array,
    estimate_model,
    estimate_priors,
    log_scores_from_counts,
    mix,
    num_labels_of,
    softmax,
)
from .errors import NoLabeledNodes, TracingDisabled
from .graph import as_graph

log = logging.getLogger(__name__)


class IterationRecord(NamedTuple):
    iteration: int
    fixed: int  # |T| when the round starts
    frontier: int  # |T+| promoted in this round


@dataclass
class LabelAssignment:
    """Predicted labels for every node plus run bookkeeping.

    ``trace`` is ``None`` unless the run was traced. ``info`` carries
    classifier-specific metadata such as the selected theta.
    """

    labels: np.ndarray
    seeds: int = 0
    final_step: int = 0
    trace: list | None = None
    info: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, node):
        return int(self.labels[node])

    def unlabeled(self) -> np.ndarray:
        return np.flatnonzero(self.labels == 0)


@dataclass(frozen=True)
class UBayesParams:
    delta_s: float = DEFAULT_DELTA_S
    max_iterations: int | None = None
    # share of the frontier promoted per round, most confident first
    promote_fraction: float = 1.0
    # weight of the RN classifier when mixing scores; 0 disables mixing
    rn_weight: float = 0.0
    trace: bool = True

    def __post_init__(self):
        if not self.delta_s > 0:
            raise ValueError("delta_s must be positive")
        if not 0.0 < self.promote_fraction <= 1.0:
            raise ValueError("promote_fraction must lie in (0, 1]")
        if not 0.0 <= self.rn_weight <= 1.0:
            raise ValueError("rn_weight must lie in [0, 1]")
        if self.max_iterations is not None and self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")


def frontier(g, fixed) -> np.ndarray:
    """Unfixed nodes with at least one edge to a fixed node (sorted ids).

    ``fixed`` is a boolean mask or a collection of node ids.
    """
    g = as_graph(g)
    mask = _as_mask(fixed, g.node_count)
    fs, fd = mask[g.src], mask[g.dst]
    return np.unique(np.concatenate((g.dst[fs & ~fd], g.src[fd & ~fs])))


def _as_mask(nodes, n) -> np.ndarray:
    if isinstance(nodes, np.ndarray) and nodes.dtype == bool:
        return nodes
    mask = np.zeros(n, dtype=bool)
    mask[np.fromiter((int(x) for x in nodes), dtype=np.int64)] = True
    return mask


def ubayes_run(g, seeds, params: UBayesParams | None = None, num_labels: int | None = None) -> LabelAssignment:
    """Label every node of ``g`` (graph or activation view) from ``seeds``.

    ``seeds`` is a label array (0 = unlabeled) or a ``LabelAssignment``.
    ``num_labels`` fixes the label universe; it defaults to the largest seed.
    """
    params = params or UBayesParams()
    g = as_graph(g)
    labels = as_label_array(seeds).copy()
    if len(labels) != g.node_count:
        raise ValueError(f"expected {g.node_count} labels, got {len(labels)}")
    fixed = labels != 0
    n_seeds = int(fixed.sum())
    if n_seeds == 0:
        raise NoLabeledNodes("uBayes needs at least one labeled node")
    l = num_labels_of(labels, num_labels)
    src, dst, prob = g.src, g.dst, g.prob
    trace = [] if params.trace else None

    it = 0
    while params.max_iterations is None or it < params.max_iterations:
        fs, fd = fixed[src], fixed[dst]
        out = fs & ~fd
        inn = fd & ~fs
        anchor = np.concatenate((src[out], dst[inn]))
        target = np.concatenate((dst[out], src[inn]))
        if len(target) == 0:
            break
        nodes = np.unique(target)
        row = np.searchsorted(nodes, target)
        cell = row * l + (labels[anchor] - 1)
        counts = np.bincount(cell, minlength=len(nodes) * l).reshape(len(nodes), l)

        model = estimate_model(g, labels, l, params.delta_s)
        scores = log_scores_from_counts(counts.astype(np.float64), model)
        if params.rn_weight > 0 or params.promote_fraction < 1.0:
            scores = softmax(scores)
        if params.rn_weight > 0:
            mass = np.bincount(cell, weights=prob[np.concatenate((np.flatnonzero(out), np.flatnonzero(inn)))],
                               minlength=len(nodes) * l).reshape(len(nodes), l)
            scores = mix(scores, mass / mass.sum(axis=1, keepdims=True), params.rn_weight)
        choice = np.argmax(scores, axis=1)

        if params.promote_fraction < 1.0:
            k = max(1, ceil_count(params.promote_fraction, len(nodes)))
            confidence = scores[np.arange(len(nodes)), choice]
            keep = np.sort(np.lexsort((nodes, -confidence))[:k])
            nodes, choice = nodes[keep], choice[keep]

        if trace is not None:
            trace.append(IterationRecord(it, int(fixed.sum()), len(nodes)))
        labels[nodes] = choice + 1
        fixed[nodes] = True
        it += 1

    rest = ~fixed
    n_rest = int(rest.sum())
    if n_rest:
        prior = estimate_priors(labels, l, params.delta_s)
        labels[rest] = int(np.argmax(prior.raw)) + 1
    log.debug("uBayes: %d rounds, %d nodes labeled in the final step", it, n_rest)
    return LabelAssignment(labels, seeds=n_seeds, final_step=n_rest, trace=trace, info={"iterations": it})


def iteration_trace(run: LabelAssignment) -> list:
    """Per-round ``(iteration, |T|, |T+|)`` tuples of a traced run."""
    if run.trace is None:
        raise TracingDisabled("run was executed with tracing disabled")
    return [tuple(r) for r in run.trace]
