"""Random graph/stream builders and an independent distance oracle for tests."""
import itertools
import random
import zlib

import numpy as np

from dynparam.graph import INF, DynamicGraph, EdgeUpdate, Mode
from dynparam.stream import QueryMark, UpdateStream


def floyd_warshall(g):
    """All-pairs distances by matrix relaxation (independent of BFS code)."""
    n = g.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v in g.edges():
        d[u, v] = 1
        if not g.directed:
            d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


def as_float(x):
    return float("inf") if x is INF else float(x)


def all_pairs(n, directed):
    if directed:
        return [(u, v) for u, v in itertools.permutations(range(n), 2)]
    return list(itertools.combinations(range(n), 2))


def random_graph(n, p, directed, rng):
    edges = [e for e in all_pairs(n, directed) if rng.random() < p]
    return DynamicGraph(n, directed, edges)


def random_stream(n, directed, mode, n_events, rng, p=0.3, query_every=1):
    """Random valid stream; incremental starts sparse, decremental dense."""
    pairs = all_pairs(n, directed)
    if mode is Mode.INCREMENTAL:
        initial = [e for e in pairs if rng.random() < p / 3]
    else:
        initial = [e for e in pairs if rng.random() < p]
    present = set(initial)
    events = []
    for i in range(n_events):
        if mode is Mode.INCREMENTAL:
            pool = [e for e in pairs if e not in present]
            kind = "+"
        elif mode is Mode.DECREMENTAL:
            pool = sorted(present)
            kind = "-"
        else:
            kind = rng.choice("+-")
            pool = sorted(present) if kind == "-" else [e for e in pairs if e not in present]
        if not pool:
            break
        e = rng.choice(pool)
        if kind == "+":
            present.add(e)
            events.append(EdgeUpdate.insert(*e))
        else:
            present.discard(e)
            events.append(EdgeUpdate.delete(*e))
        if query_every and (i + 1) % query_every == 0:
            events.append(QueryMark())
    return UpdateStream(n, directed, mode, list(initial), events)


def connected_stream(n, directed, mode, n_events, rng, extra=0.15):
    """Stream whose graph stays strongly connected after every event.

    A Hamiltonian cycle (directed) or path (undirected) is kept as a
    backbone; only non-backbone edges are inserted or deleted.
    """
    order = list(range(n))
    rng.shuffle(order)
    if directed:
        backbone = {(order[i], order[(i + 1) % n]) for i in range(n)}
    else:
        backbone = {tuple(sorted((order[i], order[i + 1]))) for i in range(n - 1)}
    others = [e for e in all_pairs(n, directed) if e not in backbone]
    rng.shuffle(others)
    if mode is Mode.DECREMENTAL:
        k = max(n_events, int(extra * len(others)))
        extra_edges = others[:k]
        initial = sorted(backbone) + extra_edges
        order_del = extra_edges[:]
        rng.shuffle(order_del)
        events = []
        for e in order_del[:n_events]:
            events += [EdgeUpdate.delete(*e), QueryMark()]
    else:
        initial = sorted(backbone)
        events = []
        for e in others[:n_events]:
            events += [EdgeUpdate.insert(*e), QueryMark()]
    return UpdateStream(n, directed, mode, initial, events)


def rng_for(*key):
    return random.Random(zlib.crc32(repr(key).encode()))
