"""Hand-built graphs shared by several test modules."""

import numpy as np

from ugclass import build_graph

BLACK, WHITE = 1, 2

# edges (n1,n2,.3), (n2,n3,.9), (n3,n4,.2); n1..n3 black, n4 white
CHAIN_EDGES = [("n1", "n2", 0.3), ("n2", "n3", 0.9), ("n3", "n4", 0.2)]
CHAIN_LABELS = {"n1": BLACK, "n2": BLACK, "n3": BLACK, "n4": WHITE}


def chain_graph():
    g = build_graph(CHAIN_EDGES)
    labels = np.array([CHAIN_LABELS[n] for n in g.names])
    return g, labels


def decoy_triples(m=10):
    """Two label rings joined by misleading low-probability cross edges.

    Black nodes ``b0..`` and white nodes ``w0..`` each form a ring of edges with
    probability >= 0.6. Every node also has three cross-class edges with
    probability <= 0.4. Node ``"5"`` (black, the ring slot ``b0``) is the
    unlabeled target: two strong black neighbors, three weak white ones.
    """
    high = [0.6, 0.7, 0.8, 0.9]
    low = [0.1, 0.2, 0.3, 0.4]
    b = ["5"] + [f"b{i}" for i in range(1, m)]
    w = [f"w{i}" for i in range(m)]
    edges = []
    for ring in (b, w):
        for i in range(m):
            p = 0.95 if "5" in (ring[i], ring[(i + 1) % m]) else high[i % 4]
            edges.append((ring[i], ring[(i + 1) % m], p))
    for i in range(m):
        for k in range(3):
            edges.append((b[i], w[(i + k) % m], low[(i + k) % 4]))
    labels = {x: BLACK for x in b[1:]}
    labels.update({x: WHITE for x in w})
    return edges, labels


def decoy_graph(m=10):
    edges, named = decoy_triples(m)
    g = build_graph(edges)
    seeds = np.array([named.get(n, 0) for n in g.names])
    return g, seeds, g.node_id("5")
