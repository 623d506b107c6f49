"""Exact eccentricities by brute force and static constant-factor brackets."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InfiniteParameter
from .graph import INF, Direction, DynamicGraph, Param, bfs_truncated


@dataclass
class OracleResult:
    ecc_out: list
    ecc_in: list
    diameter: object
    radius: object
    dist: list  # dist[u][v], INF when unreachable


def all_pairs_bfs(g: DynamicGraph):
    n = g.n
    out = g.out_adj
    rows = []
    for s in range(n):
        row = [INF] * n
        row[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            nd = row[x] + 1
            for y in out[x]:
                if row[y] is INF:
                    row[y] = nd
                    q.append(y)
        rows.append(row)
    return rows


def oracle(g: DynamicGraph) -> OracleResult:
    """Exact out/in eccentricities, diameter and radius via ``n`` BFS runs."""
    dist = all_pairs_bfs(g)
    n = g.n
    ecc_out = [max(row) if n else 0 for row in dist]
    ecc_in = [max(dist[u][v] for u in range(n)) for v in range(n)]
    diameter = max(ecc_out) if n else 0
    radius = min(ecc_out) if n else 0
    return OracleResult(ecc_out, ecc_in, diameter, radius, dist)


@dataclass
class Bootstrap:
    """Static estimate plus a bracket ``lo <= true value(s) <= hi``."""

    param: Param
    estimate: object  # int, per-vertex list, or None for the trivial bracket
    lo: int
    hi: int


def _ecc(dist):
    m = max(dist)
    if m is INF:
        raise InfiniteParameter("graph has an unreachable pair")
    return m


def static_bootstrap(g: DynamicGraph, param, root: int = 0) -> Bootstrap:
    """Constant-factor estimate from one or two BFS runs at ``root``.

    * diameter: ``max(ecc_out(root), ecc_in(root))`` lies in ``[D/2, D]``;
    * undirected radius: ``ecc(root)`` lies in ``[R, 2R]``;
    * undirected eccentricities: ``max(d(root, v), ecc(root) - d(root, v))``
      lies in ``[ecc(v)/3, ecc(v)]``;
    * directed radius and eccentricities get the trivial bracket ``[1, n-1]``.
    """
    param = Param(param)
    n = g.n
    top = max(n - 1, 1)
    if n <= 1:
        return Bootstrap(param, 0, 0, 0)
    if param is Param.DIAMETER:
        est = _ecc(bfs_truncated(g, root, Direction.OUT))
        if g.directed:
            est = max(est, _ecc(bfs_truncated(g, root, Direction.IN)))
        return Bootstrap(param, est, est, min(2 * est, top))
    if g.directed:
        return Bootstrap(param, None, 1, top)
    d = bfs_truncated(g, root)
    e = _ecc(d)
    if param is Param.RADIUS:
        return Bootstrap(param, e, max(1, (e + 1) // 2), e)
    est = [max(dv, e - dv) for dv in d]
    return Bootstrap(param, est, max(1, min(est)), min(3 * max(est), top))
