"""Immutable uncertain graph with probability-aware adjacency.

Nodes are dense integers ``0..node_count-1``; external identifiers (strings
from files, or anything hashable) live in ``names`` and are translated only at
the I/O boundary. Each undirected edge is stored once with ``src < dst`` and the
edge arrays are kept sorted by ``(src, dst)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from ._util import ceil_count
from .errors import (
    ConflictingDuplicateEdge,
    ProbabilityOutOfRange,
    SelfLoop,
    ThetaOutOfRange,
    UnknownNode,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class UncertainGraph:
    node_count: int
    src: np.ndarray
    dst: np.ndarray
    prob: np.ndarray
    names: tuple | None = None

    @classmethod
    def from_arrays(cls, node_count, src, dst, prob, names=None) -> "UncertainGraph":
        """Validate, canonicalize and deduplicate raw edge arrays."""
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        prob = np.asarray(prob, dtype=np.float64).ravel()
        if not (len(src) == len(dst) == len(prob)):
            raise ValueError("edge arrays must have equal length")
        node_count = int(node_count)
        if names is not None:
            names = tuple(names)
            if len(names) != node_count:
                raise ValueError("names must have one entry per node")

        bad = ~((prob > 0.0) & (prob <= 1.0))
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            raise ProbabilityOutOfRange(
                f"edge ({_show(names, src[k])}, {_show(names, dst[k])}) has probability {prob[k]!r}; "
                "expected a value in (0, 1]"
            )
        loops = src == dst
        if loops.any():
            k = int(np.flatnonzero(loops)[0])
            raise SelfLoop(f"self-loop on node {_show(names, src[k])}")
        if len(src) and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= node_count):
            raise UnknownNode("edge endpoint outside [0, node_count)")

        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        order = np.lexsort((hi, lo))
        lo, hi, prob = lo[order], hi[order], prob[order]
        if len(lo) > 1:
            same = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if same.any():
                clash = same & (prob[1:] != prob[:-1])
                if clash.any():
                    k = int(np.flatnonzero(clash)[0])
                    raise ConflictingDuplicateEdge(
                        f"edge ({_show(names, lo[k])}, {_show(names, hi[k])}) listed with "
                        f"probabilities {prob[k]!r} and {prob[k + 1]!r}"
                    )
                keep = np.concatenate(([True], ~same))
                lo, hi, prob = lo[keep], hi[keep], prob[keep]
        return cls(node_count, _frozen(lo.copy()), _frozen(hi.copy()), _frozen(prob.copy()), names)

    @property
    def num_edges(self) -> int:
        return len(self.src)

    def __len__(self) -> int:
        return self.node_count

    def __eq__(self, other):
        if not isinstance(other, UncertainGraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.names == other.names
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.prob, other.prob)
        )

    __hash__ = None

    def __repr__(self):
        return f"UncertainGraph(nodes={self.node_count}, edges={self.num_edges})"

    # -- adjacency ---------------------------------------------------------

    @cached_property
    def _csr(self):
        n = self.node_count
        rows = np.concatenate((self.src, self.dst))
        cols = np.concatenate((self.dst, self.src))
        eids = np.concatenate((np.arange(self.num_edges), np.arange(self.num_edges)))
        order = np.lexsort((cols, rows))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return indptr, cols[order], self.prob[eids[order]], eids[order]

    @property
    def indptr(self) -> np.ndarray:
        return self._csr[0]

    @property
    def indices(self) -> np.ndarray:
        return self._csr[1]

    @property
    def weights(self) -> np.ndarray:
        return self._csr[2]

    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def _check_node(self, n):
        if not (0 <= int(n) < self.node_count):
            raise UnknownNode(f"node {n} not in graph with {self.node_count} nodes")

    def neighbors(self, n: int) -> list:
        """Incident edges of ``n`` as ``(neighbor, probability)``, ascending neighbor id."""
        self._check_node(n)
        a, b = self.indptr[n], self.indptr[n + 1]
        return [(int(v), float(p)) for v, p in zip(self.indices[a:b], self.weights[a:b])]

    def probability(self, i: int, j: int) -> float:
        """Existence probability of edge ``{i, j}``, or 0.0 when absent."""
        self._check_node(i)
        self._check_node(j)
        a, b = self.indptr[i], self.indptr[i + 1]
        k = a + np.searchsorted(self.indices[a:b], j)
        if k < b and self.indices[k] == j:
            return float(self.weights[k])
        return 0.0

    def edges(self):
        for u, v, p in zip(self.src.tolist(), self.dst.tolist(), self.prob.tolist()):
            yield u, v, p

    def edge_keys(self) -> np.ndarray:
        """Unique int64 key ``src * node_count + dst`` per edge."""
        return self.src * np.int64(self.node_count) + self.dst

    # -- names -------------------------------------------------------------

    def name(self, n: int):
        return self.names[n] if self.names is not None else n

    @cached_property
    def _index(self) -> dict:
        if self.names is None:
            return {}
        return {name: i for i, name in enumerate(self.names)}

    def node_id(self, name) -> int:
        if self.names is None:
            self._check_node(name)
            return int(name)
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNode(f"unknown node {name!r}") from None

    def with_edges(self, src, dst, prob) -> "UncertainGraph":
        """New graph over the same nodes with a different edge set."""
        return UncertainGraph.from_arrays(self.node_count, src, dst, prob, self.names)


def _show(names, i):
    return repr(names[i]) if names is not None else int(i)


def build_graph(
    edge_triples: Iterable[tuple[Hashable, Hashable, float]],
    nodes: Iterable[Hashable] | None = None,
) -> UncertainGraph:
    """Build a graph from ``(node, node, probability)`` triples.

    Node identifiers may be any hashable value; dense ids are assigned in order
    of first appearance (``nodes`` first, then edge endpoints). Duplicate pairs
    with equal probability collapse into one edge.
    """
    index: dict = {}
    names: list = []

    def intern(x):
        i = index.get(x)
        if i is None:
            i = index[x] = len(names)
            names.append(x)
        return i

    for x in nodes or ():
        intern(x)
    src, dst, prob = [], [], []
    for a, b, p in edge_triples:
        src.append(intern(a))
        dst.append(intern(b))
        prob.append(float(p))
    return UncertainGraph.from_arrays(len(names), src, dst, prob, names)


@dataclass(frozen=True, eq=False)
class EdgeActivationView:
    """Read-only overlay exposing only the ``active`` edges of ``base``."""

    base: UncertainGraph
    active: np.ndarray  # sorted edge indices into base

    @property
    def node_count(self) -> int:
        return self.base.node_count

    @property
    def num_edges(self) -> int:
        return len(self.active)

    @cached_property
    def graph(self) -> UncertainGraph:
        b = self.base
        return UncertainGraph(
            b.node_count,
            _frozen(b.src[self.active]),
            _frozen(b.dst[self.active]),
            _frozen(b.prob[self.active]),
            b.names,
        )

    def neighbors(self, n: int) -> list:
        return self.graph.neighbors(n)

    def active_set(self) -> set:
        return {(int(self.base.src[k]), int(self.base.dst[k])) for k in self.active}


def as_graph(g) -> UncertainGraph:
    """Resolve a graph or activation view to a concrete graph."""
    if isinstance(g, EdgeActivationView):
        return g.graph
    return g


def edge_rank(g: UncertainGraph) -> np.ndarray:
    """Edge indices ordered by descending probability, ties by ascending id pair."""
    # edges are already sorted by (src, dst), so a stable sort keeps the tie order
    return np.argsort(-g.prob, kind="stable")


def top_edges_by_prob(g: UncertainGraph, theta: float) -> EdgeActivationView:
    """Activate the ``ceil(theta * |A|)`` most probable edges."""
    if not (0.0 < theta <= 1.0):
        raise ThetaOutOfRange(f"theta must lie in (0, 1], got {theta!r}")
    g = as_graph(g)
    k = min(ceil_count(theta, g.num_edges), g.num_edges)
    chosen = np.sort(edge_rank(g)[:k])
    return EdgeActivationView(g, _frozen(chosen))


def induced_subgraph(g: UncertainGraph, nodes: Iterable[int] | Sequence[int]) -> UncertainGraph:
    """Subgraph over ``nodes`` keeping every edge with both endpoints retained.

    Retained nodes are renumbered densely in ascending original-id order, so
    ``np.unique(nodes)[k]`` is the original id of new node ``k``.
    """
    g = as_graph(g)
    keep = np.unique(np.fromiter((int(x) for x in nodes), dtype=np.int64))
    if len(keep) and (keep[0] < 0 or keep[-1] >= g.node_count):
        raise UnknownNode("induced_subgraph: node outside the graph")
    new_id = np.full(g.node_count, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    mask = (new_id[g.src] >= 0) & (new_id[g.dst] >= 0)
    names = None if g.names is None else tuple(g.names[i] for i in keep)
    # relabeling is monotone so the (src, dst) order survives
    return UncertainGraph(
        len(keep),
        _frozen(new_id[g.src[mask]]),
        _frozen(new_id[g.dst[mask]]),
        _frozen(g.prob[mask].copy()),
        names,
    )
