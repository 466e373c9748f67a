"""Repeated random sub-sampling validation of the classifiers."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from ._util import make_rng, round_half_up
from .baselines import DEFAULT_NUM_WORLDS, rn_classify, sampling_classify, wvrn_classify
from .bayes import DEFAULT_DELTA_S, as_label_array
from .errors import EmptyMatrix, ExperimentError, TooFewLabels, UnlabeledValidationNode
from .graph import as_graph
from .perturb import PerturbationConfig, perturb
from .ubayes import UBayesParams, ubayes_run
from .ubayes_plus import UBayesPlusParams, ubayes_plus_run

log = logging.getLogger(__name__)

CLASSIFIERS = ("ubayes", "ubayes_plus", "ubayes_plus_rn", "rn", "wvrn", "wvrn-20", "sampling")
Z95 = 1.96


@dataclass(frozen=True)
class SplitSpec:
    train_ratio: float = 2 / 3
    repeats: int = 5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_ratio < 1.0:
            raise ValueError("train_ratio must lie in (0, 1)")
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")


@dataclass(frozen=True)
class ClassifierSpec:
    """Classifier name plus its parameters.

    ``time_budget`` may be a number of seconds, ``None``, or ``"ubayes"`` to
    reuse the wall time uBayes needs on the same input.
    """

    name: str
    delta_s: float = DEFAULT_DELTA_S
    alpha: float = 0.2
    beta: float = 0.1
    theta_grid: tuple | None = None
    delta_e: float = 0.5
    max_iterations: int | None = None
    num_worlds: int = DEFAULT_NUM_WORLDS
    time_budget: float | str | None = None
    promote_fraction: float = 1.0

    def __post_init__(self):
        if self.name not in CLASSIFIERS:
            raise ValueError(f"unknown classifier {self.name!r}; expected one of {', '.join(CLASSIFIERS)}")


def classify(g, seeds, spec: ClassifierSpec, seed=0, num_labels=None):
    """Dispatch to the classifier named by ``spec``."""
    name = spec.name
    budget = spec.time_budget
    if budget == "ubayes":
        start = time.perf_counter()
        ubayes_run(g, seeds, UBayesParams(delta_s=spec.delta_s, trace=False), num_labels)
        budget = time.perf_counter() - start

    if name == "ubayes":
        params = UBayesParams(delta_s=spec.delta_s, max_iterations=spec.max_iterations,
                              promote_fraction=spec.promote_fraction)
        return ubayes_run(g, seeds, params, num_labels)
    if name in ("ubayes_plus", "ubayes_plus_rn"):
        kw = {} if spec.theta_grid is None else {"theta_grid": tuple(spec.theta_grid)}
        params = UBayesPlusParams(alpha=spec.alpha, beta=spec.beta, seed=seed, delta_s=spec.delta_s, **kw)
        delta_e = spec.delta_e if name == "ubayes_plus_rn" else 0.0
        return ubayes_plus_run(g, seeds, params, delta_e, num_labels)
    if name == "rn":
        return rn_classify(g, seeds, num_labels)
    if name == "wvrn":
        return wvrn_classify(g, seeds, spec.max_iterations, budget, num_labels)
    if name == "wvrn-20":
        return wvrn_classify(g, seeds, 20 if spec.max_iterations is None else spec.max_iterations,
                             None, num_labels)
    return sampling_classify(g, seeds, spec.num_worlds, budget, seed, num_labels)


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """``counts[i-1, j-1]``: validation nodes with true label i predicted as j."""

    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, ij) -> int:
        i, j = ij
        return int(self.counts[i - 1, j - 1])

    def is_diagonal(self) -> bool:
        return not (self.counts - np.diag(np.diag(self.counts))).any()


def subsample_split(labeled_nodes, spec: SplitSpec, run_index: int) -> tuple:
    """Seeded (train, validation) partition of the labeled nodes for one repeat."""
    nodes = np.asarray(sorted(int(x) for x in labeled_nodes), dtype=np.int64)
    if len(nodes) < 2:
        raise TooFewLabels(f"need at least 2 labeled nodes, got {len(nodes)}")
    n_train = min(max(1, round_half_up(spec.train_ratio, len(nodes))), len(nodes) - 1)
    perm = make_rng(spec.seed, run_index, 1).permutation(nodes)
    return np.sort(perm[:n_train]), np.sort(perm[n_train:])


def confusion(pred, truth, validation, num_labels: int | None = None) -> ConfusionMatrix:
    pred = as_label_array(pred)
    truth = as_label_array(truth)
    v = np.asarray(sorted(int(x) for x in validation), dtype=np.int64)
    t, p = truth[v], pred[v]
    bad = (t == 0) | (p == 0)
    if bad.any():
        raise UnlabeledValidationNode(f"validation node {int(v[np.flatnonzero(bad)[0]])} lacks a label")
    l = int(num_labels) if num_labels is not None else int(max(truth.max(), pred.max()))
    counts = np.bincount((t - 1) * l + (p - 1), minlength=l * l).reshape(l, l)
    return ConfusionMatrix(counts)


def accuracy(m) -> float:
    counts = m.counts if isinstance(m, ConfusionMatrix) else np.asarray(m)
    total = counts.sum()
    if total == 0:
        raise EmptyMatrix("confusion matrix is empty")
    return float(np.trace(counts) / total)


@dataclass
class RunRecord:
    run: int
    seed: int
    accuracy: float
    confusion: ConfusionMatrix
    seconds: float
    info: dict = field(default_factory=dict)


@dataclass
class EvalReport:
    classifier: str
    perturbation: PerturbationConfig
    per_run: list
    ci_method: str = "normal approximation, 1.96 * s / sqrt(n)"

    @property
    def accuracies(self) -> np.ndarray:
        return np.array([r.accuracy for r in self.per_run])

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def ci95_halfwidth(self) -> float | None:
        """``None`` for a single run: one value carries no spread estimate."""
        return ci95_halfwidth(self.accuracies)

    @property
    def mean_seconds(self) -> float:
        return float(np.mean([r.seconds for r in self.per_run]))


def ci95_halfwidth(values) -> float | None:
    values = np.asarray(values, dtype=np.float64)
    if len(values) < 2:
        return None
    return float(Z95 * values.std(ddof=1) / math.sqrt(len(values)))


def run_experiment(g, truth, classifier: ClassifierSpec, perturbation: PerturbationConfig | None = None,
                   split: SplitSpec | None = None, num_labels: int | None = None) -> EvalReport:
    """Perturb, split, hide validation labels, classify and score, once per repeat.

    Repeat ``r`` perturbs with child stream ``r`` of the perturbation seed and
    splits with child stream ``r`` of the split seed. Timing covers the
    classifier call only.
    """
    g = as_graph(g)
    truth = as_label_array(truth)
    perturbation = perturbation or PerturbationConfig()
    split = split or SplitSpec()
    l = int(num_labels) if num_labels is not None else int(truth.max())
    runs = []
    for r in range(split.repeats):
        try:
            noisy = perturb(g, truth, perturbation, r)
            train, valid = subsample_split(np.flatnonzero(noisy.labels), split, r)
            seeds = np.zeros_like(truth)
            seeds[train] = truth[train]
            _assert_hidden(seeds, valid)
            start = time.perf_counter()
            result = classify(noisy.graph, seeds, classifier, seed=split.seed + r, num_labels=l)
            seconds = time.perf_counter() - start
            m = confusion(result.labels, truth, valid, l)
        except ExperimentError:
            raise
        except Exception as exc:
            raise ExperimentError(r, exc) from exc
        info = {k: v for k, v in result.info.items() if k in ("theta_star", "iterations", "worlds_used")}
        runs.append(RunRecord(r, split.seed + r, accuracy(m), m, seconds, info))
        log.info("%s run %d: accuracy %.4f in %.3fs", classifier.name, r, runs[-1].accuracy, seconds)
    return EvalReport(classifier.name, perturbation, runs)


def _assert_hidden(seeds, valid):
    if (seeds[valid] != 0).any():
        raise AssertionError("validation labels leaked into classifier input")
