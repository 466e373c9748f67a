"""Naive-Bayes relational model with uncertainty-weighted counts.

Labels are positive integers ``1..l``; array position ``k`` holds label
``k + 1``. Label ``0`` marks an unlabeled node and is ignored everywhere here.

Conditional estimate: for a labeled pair ``(p, q)``,
``cond(p | q)`` is the probability mass of labeled-labeled edges with one end
``q`` and the other end ``p``, divided by the mass of all labeled-labeled edges
with an end ``q``. Every edge is counted once, so a ``(q, q)`` edge adds its
probability to ``cond(q | q)`` a single time. Cells whose column has no edge
mass fall back to the prior. A constant ``delta_s`` is then added to every cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import EmptyScores, NoLabeledNodes
from .graph import as_graph

DEFAULT_DELTA_S = 1e-4


def as_label_array(labels) -> np.ndarray:
    """Accept a ``LabelAssignment``-like object or a sequence of ints."""
    arr = getattr(labels, "labels", labels)
    arr = np.asarray(arr, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("labels must be one-dimensional")
    if (arr < 0).any():
        raise ValueError("labels must be non-negative integers")
    return arr


def num_labels_of(labels, num_labels=None) -> int:
    if num_labels is not None:
        return int(num_labels)
    arr = as_label_array(labels)
    return int(arr.max()) if len(arr) else 0


@dataclass(frozen=True, eq=False)
class PriorTable:
    """Label frequencies among labeled nodes.

    ``raw[k]`` is the plain frequency of label ``k + 1``; ``values`` adds the
    smoothing constant so absent labels still get ``delta_s``.
    """

    raw: np.ndarray
    delta_s: float

    @property
    def values(self) -> np.ndarray:
        return self.raw + self.delta_s

    def __getitem__(self, label: int) -> float:
        return float(self.values[label - 1])

    def __len__(self):
        return len(self.raw)


@dataclass(frozen=True, eq=False)
class ConditionalTable:
    """``raw[p-1, q-1]`` estimates P(L(i)=p | L(j)=q) before smoothing."""

    raw: np.ndarray
    fallback: np.ndarray
    weights: np.ndarray  # edge-probability mass per (p, q) cell
    delta_s: float

    @property
    def values(self) -> np.ndarray:
        return self.raw + self.delta_s

    def __call__(self, p: int, q: int, smoothed: bool = True) -> float:
        table = self.values if smoothed else self.raw
        return float(table[p - 1, q - 1])


@dataclass(frozen=True, eq=False)
class BayesModel:
    priors: PriorTable
    conditionals: ConditionalTable
    delta_s: float

    def __post_init__(self):
        if not self.delta_s > 0:
            raise ValueError("delta_s must be positive")

    @property
    def num_labels(self) -> int:
        return len(self.priors)

    @property
    def log_prior(self) -> np.ndarray:
        return np.log(self.priors.values)

    @property
    def log_cond(self) -> np.ndarray:
        return np.log(self.conditionals.values)


def estimate_priors(labels, num_labels=None, delta_s: float = DEFAULT_DELTA_S) -> PriorTable:
    arr = as_label_array(labels)
    l = num_labels_of(arr, num_labels)
    known = arr[arr != 0]
    if len(known) == 0:
        raise NoLabeledNodes("cannot estimate priors without labeled nodes")
    if known.max() > l:
        raise ValueError(f"label {known.max()} exceeds num_labels={l}")
    counts = np.bincount(known - 1, minlength=l).astype(np.float64)
    return PriorTable(counts / len(known), float(delta_s))


def label_pair_weights(g, labels, num_labels: int) -> np.ndarray:
    """Edge-probability mass between each pair of labels (symmetric, edges counted once)."""
    g = as_graph(g)
    arr = as_label_array(labels)
    a = arr[g.src]
    b = arr[g.dst]
    both = (a != 0) & (b != 0)
    a, b, w = a[both] - 1, b[both] - 1, g.prob[both]
    l = num_labels
    cells = np.bincount(a * l + b, weights=w, minlength=l * l).reshape(l, l)
    # fold the upper and lower triangle together; the diagonal stays single-counted
    return cells + cells.T - np.diag(np.diag(cells))


def estimate_conditionals(g, labels, priors: PriorTable, delta_s: float = DEFAULT_DELTA_S) -> ConditionalTable:
    l = len(priors)
    weights = label_pair_weights(g, labels, l)
    denom = weights.sum(axis=0)
    has_mass = denom > 0
    raw = np.empty((l, l))
    raw[:, has_mass] = weights[:, has_mass] / denom[has_mass]
    raw[:, ~has_mass] = priors.raw[:, None]
    fallback = np.broadcast_to(~has_mass, (l, l)).copy()
    return ConditionalTable(raw, fallback, weights, float(delta_s))


def estimate_model(g, labels, num_labels=None, delta_s: float = DEFAULT_DELTA_S) -> BayesModel:
    priors = estimate_priors(labels, num_labels, delta_s)
    return BayesModel(priors, estimate_conditionals(g, labels, priors, delta_s), float(delta_s))


def log_scores_from_counts(counts: np.ndarray, model: BayesModel) -> np.ndarray:
    """Log posterior (unnormalized) for each row of a neighbor-label count matrix.

    ``counts[r, t-1]`` is how many labeled neighbors of row ``r`` carry label ``t``.
    """
    return model.log_prior + counts @ model.log_cond


def posterior_scores(labeled_neighbors, model: BayesModel) -> np.ndarray:
    """Unnormalized posterior ``prior(p) * prod_k cond(t_k | p)`` for every label ``p``.

    ``labeled_neighbors`` holds ``(label, edge_probability)`` pairs; entries with
    label 0 are skipped. The edge probability enters only through the model.
    """
    l = model.num_labels
    counts = np.zeros(l)
    for t, _p in labeled_neighbors:
        if t:
            counts[int(t) - 1] += 1
    return np.exp(log_scores_from_counts(counts, model))


def normalize(scores: np.ndarray) -> np.ndarray:
    scores = np.asarray(scores, dtype=np.float64)
    return scores / scores.sum(axis=-1, keepdims=True)


def softmax(log_scores: np.ndarray) -> np.ndarray:
    z = log_scores - log_scores.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def mix(bayes_norm: np.ndarray, rn_norm: np.ndarray, delta_e: float) -> np.ndarray:
    return (bayes_norm + delta_e * rn_norm) / (1.0 + delta_e)


def argmax_label(scores) -> int:
    """Label with the highest score; ties go to the smallest label.

    Accepts an array (position ``k`` is label ``k + 1``) or a ``{label: score}``
    mapping.
    """
    if isinstance(scores, Mapping):
        if not scores:
            raise EmptyScores("no scores to choose from")
        best = max(scores.values())
        return min(k for k, v in scores.items() if v == best)
    arr = np.asarray(scores, dtype=np.float64)
    if arr.size == 0:
        raise EmptyScores("no scores to choose from")
    return int(np.argmax(arr)) + 1
