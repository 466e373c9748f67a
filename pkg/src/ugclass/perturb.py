"""Noise injection, edge removal and label removal for stress tests.

Every count derived from a ratio is rounded half-up. The pipeline order is
fixed: noisy edges are added first, then edges are removed from the noisy
graph, then labels are dropped.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ._util import complement_count, make_rng, round_half_up
from .bayes import as_label_array
from .errors import GraphTooDense
from .graph import UncertainGraph, as_graph

ORIGINAL, NOISE = 0, 1
# collision resampling gives up after this many draws per requested edge
ATTEMPTS_PER_EDGE = 100


@dataclass(frozen=True)
class PerturbationConfig:
    phi: float = 3.0
    sigma: float = 0.25
    edge_removal: float = 0.0  # Phi
    label_ratio: float = 1.0  # Gamma, share of labeled nodes that keep their label
    seed: int = 0

    def __post_init__(self):
        if self.phi < 0:
            raise ValueError("phi must be non-negative")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if not 0.0 <= self.edge_removal <= 1.0:
            raise ValueError("edge_removal must lie in [0, 1]")
        if not 0.0 <= self.label_ratio <= 1.0:
            raise ValueError("label_ratio must lie in [0, 1]")

    def as_dict(self) -> dict:
        return asdict(self)


def sample_noise_probabilities(sigma: float, size: int, rng) -> np.ndarray:
    """``size`` draws from N(0, sigma) conditioned on landing in (0, 1]."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    rng = make_rng(rng)
    out = np.empty(size)
    filled = 0
    while filled < size:
        need = size - filled
        draw = rng.normal(0.0, sigma, size=2 * need + 8)
        draw = draw[(draw > 0.0) & (draw <= 1.0)][:need]
        out[filled:filled + len(draw)] = draw
        filled += len(draw)
    return out


def sample_noise_probability(sigma: float, rng) -> float:
    return float(sample_noise_probabilities(sigma, 1, rng)[0])


def add_noisy_edges(g, phi: float, sigma: float, seed) -> UncertainGraph:
    """Add ``round(phi * |A|)`` edges between random unjoined node pairs."""
    return _add_noise(as_graph(g), phi, sigma, make_rng(seed))[0]


def _add_noise(g: UncertainGraph, phi, sigma, rng):
    if phi < 0:
        raise ValueError("phi must be non-negative")
    want = round_half_up(phi, g.num_edges)
    n = g.node_count
    if want == 0:
        return g, np.zeros(g.num_edges, dtype=np.int8)
    free = n * (n - 1) // 2 - g.num_edges
    if want > free:
        raise GraphTooDense(f"asked for {want} new edges but only {free} node pairs are free")

    taken = np.sort(g.edge_keys())
    chosen = np.empty(0, dtype=np.int64)
    budget = ATTEMPTS_PER_EDGE * want
    drawn = 0
    while len(chosen) < want:
        if drawn >= budget:
            raise GraphTooDense(f"placed {len(chosen)} of {want} noisy edges within {budget} draws")
        batch = min(2 * (want - len(chosen)) + 16, budget - drawn)
        u = rng.integers(0, n, size=batch)
        v = rng.integers(0, n, size=batch)
        drawn += batch
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * np.int64(n) + hi
        ok = (lo != hi) & ~_member(keys, taken) & ~np.isin(keys, chosen)
        keys = keys[ok]
        # first occurrence wins inside a batch, in draw order
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)][: want - len(chosen)]
        chosen = np.concatenate((chosen, keys))

    probs = sample_noise_probabilities(sigma, want, rng)
    src = np.concatenate((g.src, chosen // n))
    dst = np.concatenate((g.dst, chosen % n))
    out = g.with_edges(src, dst, np.concatenate((g.prob, probs)))
    origin = np.where(_member(out.edge_keys(), np.sort(chosen)), NOISE, ORIGINAL).astype(np.int8)
    return out, origin


def _member(keys, sorted_ref):
    if len(sorted_ref) == 0:
        return np.zeros(len(keys), dtype=bool)
    pos = np.searchsorted(sorted_ref, keys).clip(max=len(sorted_ref) - 1)
    return sorted_ref[pos] == keys


def remove_edges(g, edge_removal: float, seed) -> UncertainGraph:
    """Keep ``round((1 - edge_removal) * |A|)`` edges chosen uniformly at random."""
    return _remove_edges(as_graph(g), edge_removal, make_rng(seed))[0]


def _remove_edges(g: UncertainGraph, ratio, rng):
    if not 0.0 <= ratio <= 1.0:
        raise ValueError("edge_removal must lie in [0, 1]")
    keep_n = complement_count(ratio, g.num_edges)
    if keep_n == g.num_edges:
        return g, np.arange(g.num_edges)
    keep = np.sort(rng.choice(g.num_edges, size=keep_n, replace=False))
    return g.with_edges(g.src[keep], g.dst[keep], g.prob[keep]), keep


def remove_labels(labels, label_ratio: float, seed) -> np.ndarray:
    """Keep ``round(label_ratio * |labeled|)`` labels at random; the rest become 0."""
    if not 0.0 <= label_ratio <= 1.0:
        raise ValueError("label_ratio must lie in [0, 1]")
    arr = as_label_array(labels).copy()
    known = np.flatnonzero(arr)
    keep_n = round_half_up(label_ratio, len(known))
    if keep_n == len(known):
        return arr
    keep = make_rng(seed).choice(known, size=keep_n, replace=False)
    dropped = np.setdiff1d(known, keep)
    arr[dropped] = 0
    return arr


@dataclass(frozen=True, eq=False)
class Perturbed:
    graph: UncertainGraph
    labels: np.ndarray
    origin: np.ndarray  # per edge of ``graph``: ORIGINAL or NOISE
    stages: tuple  # applied steps, in order


def perturb(g, labels, config: PerturbationConfig, *stream) -> Perturbed:
    """Apply noise, then edge removal, then label removal.

    Each stage draws from its own child stream of ``config.seed`` (extended by
    ``stream``), so changing one parameter does not reshuffle the others.
    """
    g = as_graph(g)
    noisy, origin = _add_noise(g, config.phi, config.sigma, make_rng(config.seed, *stream, 0))
    kept, idx = _remove_edges(noisy, config.edge_removal, make_rng(config.seed, *stream, 1))
    new_labels = remove_labels(labels, config.label_ratio, make_rng(config.seed, *stream, 2))
    return Perturbed(kept, new_labels, origin[idx], ("add_noisy_edges", "remove_edges", "remove_labels"))
