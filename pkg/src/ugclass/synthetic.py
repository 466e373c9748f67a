"""Synthetic uncertain graphs with planted labels, for benchmarks and tests."""

from __future__ import annotations

import numpy as np

from ._util import make_rng
from .graph import UncertainGraph


def planted_partition(n_per_class: int = 100, num_classes: int = 2, intra_degree: float = 8.0,
                      inter_degree: float = 1.0, p_intra: float = 0.9, p_inter: float = 0.1,
                      seed=0) -> tuple[UncertainGraph, np.ndarray]:
    """Stochastic block graph whose edge probabilities encode block membership.

    Same-class pairs are joined with density ``intra_degree / (n_per_class - 1)``
    and carry probability ``p_intra``; cross-class pairs use density
    ``inter_degree / (n_per_class * (num_classes - 1))`` and probability
    ``p_inter``. Returns the graph and the true labels ``1..num_classes``.
    """
    rng = make_rng(seed)
    n = n_per_class * num_classes
    truth = np.repeat(np.arange(1, num_classes + 1), n_per_class)
    iu, ju = np.triu_indices(n, k=1)
    same = truth[iu] == truth[ju]
    density = np.where(same, intra_degree / max(n_per_class - 1, 1),
                       inter_degree / max(n_per_class * (num_classes - 1), 1))
    keep = rng.random(len(iu)) < density
    prob = np.where(same, p_intra, p_inter)[keep]
    return UncertainGraph.from_arrays(n, iu[keep], ju[keep], prob), truth
