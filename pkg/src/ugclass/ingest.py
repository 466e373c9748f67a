"""Edge-probability estimators for co-occurrence and citation data.

Co-occurrence (co-authorship): the probability of an edge is the share of the
pair's joint activity periods in which they co-occurred.

Citation: the directional ratio ``u -> v`` is the share of ``u``'s outgoing
citations that point at ``v``; the undirected probability is the larger of the
two directions.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .errors import InconsistentCounts, InconsistentEvents, ParseError
from .io import iter_records


def _pair(u, v):
    return (u, v) if u <= v else (v, u)


def ingest_cooccurrence(activity: dict, co_events: dict) -> dict:
    """``{(u, v): |co_events| / |activity(u) | activity(v)|}`` for pairs with any co-event."""
    out = {}
    for (u, v), events in co_events.items():
        events = set(events)
        if not events:
            continue
        span = set(activity.get(u, ())) | set(activity.get(v, ()))
        if not events <= span:
            raise InconsistentEvents(f"co-events of ({u!r}, {v!r}) fall outside their activity periods")
        key = _pair(u, v)
        p = len(events) / len(span)
        if key in out and out[key] != p:
            raise InconsistentEvents(f"pair ({u!r}, {v!r}) given twice with different events")
        out[key] = p
    return dict(sorted(out.items()))


def ingest_citation(cite_counts: dict, out_totals: dict) -> dict:
    """``{(u, v): max(r(u->v), r(v->u))}`` over pairs with at least one citation."""
    sent = defaultdict(int)
    for (u, v), c in cite_counts.items():
        if c < 0:
            raise InconsistentCounts(f"negative citation count for ({u!r}, {v!r})")
        sent[u] += c
    for u, c in sent.items():
        if c > out_totals.get(u, 0):
            raise InconsistentCounts(f"{u!r} has {c} citations to known nodes but only {out_totals.get(u, 0)} in total")
    ratio: dict = {}
    for (u, v), c in cite_counts.items():
        if c == 0 or u == v:
            continue
        r = Fraction(c, out_totals[u])
        key = _pair(u, v)
        ratio[key] = max(ratio.get(key, Fraction(0)), r)
    return {k: float(r) for k, r in sorted(ratio.items())}


def read_cooccurrence_records(path) -> tuple[dict, dict]:
    """Read ``period<TAB>node<TAB>node...`` records (one per joint event, e.g. a publication).

    A node is active in every period it appears in; two nodes co-occur in a
    period when they share a record from it.
    """
    activity: dict = defaultdict(set)
    co_events: dict = defaultdict(set)
    for no, line in iter_records(path):
        parts = line.split("\t")
        if len(parts) < 2 or not all(parts):
            raise ParseError("expected 'period<TAB>node[<TAB>node...]'", path, no)
        period, members = parts[0], sorted(set(parts[1:]))
        for i, u in enumerate(members):
            activity[u].add(period)
            for v in members[i + 1:]:
                co_events[(u, v)].add(period)
    return dict(activity), dict(co_events)


def read_citations(path) -> tuple[dict, dict]:
    """Read ``citing<TAB>cited`` lines, one per citation, into counts and per-node totals."""
    counts: dict = defaultdict(int)
    totals: dict = defaultdict(int)
    for no, line in iter_records(path):
        parts = line.split("\t")
        if len(parts) != 2 or not all(parts):
            raise ParseError("expected 'citing<TAB>cited'", path, no)
        u, v = parts
        counts[(u, v)] += 1
        totals[u] += 1
    return dict(counts), dict(totals)
