"""Tab-separated edge-list and label files.

Edge list: ``src<TAB>dst<TAB>probability`` per line. Label file:
``node<TAB>label`` per line with a positive integer label. In both, lines
starting with ``#`` and blank lines are skipped. Files are UTF-8 with LF endings
and are written atomically.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ConflictingDuplicateEdge, ParseError, SelfLoop
from .graph import UncertainGraph, build_graph


def iter_records(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"no such file: {path}") from None
    for no, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        yield no, line


def read_edge_list(path) -> list:
    """Parse and validate an edge-list file into ``(src, dst, probability)`` triples."""
    seen: dict = {}
    triples = []
    for no, line in iter_records(path):
        parts = line.split("\t")
        if len(parts) != 3 or not parts[0] or not parts[1]:
            raise ParseError("expected 'src<TAB>dst<TAB>probability'", path, no)
        a, b, raw = parts
        try:
            p = float(raw)
        except ValueError:
            raise ParseError(f"probability {raw!r} is not a number", path, no) from None
        if not 0.0 < p <= 1.0:
            raise ParseError(f"probability {raw} outside (0, 1]", path, no)
        if a == b:
            raise SelfLoop(f"{path}:{no}: self-loop on node {a!r}")
        key = (a, b) if a < b else (b, a)
        if key in seen:
            prev_no, prev_p = seen[key]
            if prev_p != p:
                raise ConflictingDuplicateEdge(
                    f"{path}:{no}: edge ({a!r}, {b!r}) has probability {p!r} but line {prev_no} says {prev_p!r}")
            continue
        seen[key] = (no, p)
        triples.append((a, b, p))
    return triples


def read_labels(path) -> dict:
    """Map node name to positive integer label."""
    out: dict = {}
    for no, line in iter_records(path):
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0]:
            raise ParseError("expected 'node<TAB>label'", path, no)
        name, raw = parts
        try:
            label = int(raw)
        except ValueError:
            raise ParseError(f"label {raw!r} is not an integer", path, no) from None
        if label < 1:
            raise ParseError(f"label {label} must be a positive integer", path, no)
        if name in out:
            raise ParseError(f"node {name!r} listed twice", path, no)
        out[name] = label
    return out


def _graph_from(triples, extra_nodes=()) -> UncertainGraph:
    # dense ids follow sorted node names, so write -> load reproduces the same ids and line order
    names = set(extra_nodes)
    for a, b, _ in triples:
        names.add(a)
        names.add(b)
    return build_graph(triples, nodes=sorted(names))


def load_graph(path, extra_nodes=()) -> tuple[UncertainGraph, dict]:
    """Load an edge list; returns the graph and the name -> dense id dictionary."""
    g = _graph_from(read_edge_list(path), extra_nodes)
    return g, {name: i for i, name in enumerate(g.names)}


def load_dataset(graph_path, labels_path=None) -> tuple[UncertainGraph, np.ndarray]:
    """Graph plus aligned label array; labeled nodes absent from the edge list become isolated nodes."""
    named = read_labels(labels_path) if labels_path is not None else {}
    g = _graph_from(read_edge_list(graph_path), named)
    labels = np.zeros(g.node_count, dtype=np.int64)
    for name, label in named.items():
        labels[g.node_id(name)] = label
    return g, labels


def format_prob(p: float) -> str:
    return repr(float(p))


def edge_list_text(g: UncertainGraph, header: str | None = None) -> str:
    rows = [] if header is None else [f"# {h}" for h in header.splitlines()]
    rows += [f"{g.name(u)}\t{g.name(v)}\t{format_prob(p)}" for u, v, p in g.edges()]
    return "".join(r + "\n" for r in rows)


def label_text(names, labels, header: str | None = None, skip_unlabeled: bool = True) -> str:
    rows = [] if header is None else [f"# {h}" for h in header.splitlines()]
    for name, label in zip(names, np.asarray(labels).tolist()):
        if label or not skip_unlabeled:
            rows.append(f"{name}\t{label}")
    return "".join(r + "\n" for r in rows)


def atomic_write(path, text: str) -> None:
    """Write ``text`` to a temporary sibling, then rename it over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_edge_list(path, g: UncertainGraph, header: str | None = None) -> None:
    atomic_write(path, edge_list_text(g, header))


def write_labels(path, g: UncertainGraph, labels, header: str | None = None) -> None:
    names = g.names if g.names is not None else range(g.node_count)
    atomic_write(path, label_text(names, labels, header))
