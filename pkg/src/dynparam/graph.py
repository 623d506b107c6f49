"""Mutable unweighted graphs, edge updates and truncated BFS.

Vertices are dense integer ids ``0..n-1``.  Distances that are unknown
(beyond a depth cap) or infinite (unreachable) are represented by the
``INF`` sentinel, which compares greater than every number and refuses
arithmetic.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass

from .errors import BadVertex, DuplicateEdge, MissingEdge, SelfLoop


class _Unbounded:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Unbounded, ())

    def __hash__(self):
        return hash(math.inf)

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __float__(self):
        return math.inf

    def _no_arith(self, *args):
        raise TypeError("arithmetic on INF is not allowed")

    __add__ = __radd__ = __sub__ = __rsub__ = _no_arith
    __mul__ = __rmul__ = __truediv__ = __rtruediv__ = _no_arith
    __floordiv__ = __rfloordiv__ = __neg__ = __int__ = _no_arith


INF = _Unbounded()
"""Unknown / infinite distance: greater than any finite value."""


def is_finite(x) -> bool:
    return x is not INF


class Direction(str, enum.Enum):
    OUT = "out"
    IN = "in"


class Mode(str, enum.Enum):
    INCREMENTAL = "incremental"
    DECREMENTAL = "decremental"
    FULLY_DYNAMIC = "fully-dynamic"


class Param(str, enum.Enum):
    DIAMETER = "diameter"
    RADIUS = "radius"
    ECCENTRICITIES = "eccentricities"


class UpdateKind(str, enum.Enum):
    INSERT = "+"
    DELETE = "-"


@dataclass(frozen=True)
class EdgeUpdate:
    kind: UpdateKind
    u: int
    v: int

    @classmethod
    def insert(cls, u, v):
        return cls(UpdateKind.INSERT, u, v)

    @classmethod
    def delete(cls, u, v):
        return cls(UpdateKind.DELETE, u, v)


class DynamicGraph:
    """Adjacency-set graph with stable vertex ids.

    For undirected graphs ``in_adj`` is the same list object as ``out_adj``
    and every edge is stored in both endpoint sets.
    """

    def __init__(self, n: int, directed: bool = True, edges=()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.directed = directed
        self.out_adj: list[set[int]] = [set() for _ in range(n)]
        self.in_adj: list[set[int]] = (
            [set() for _ in range(n)] if directed else self.out_adj
        )
        self.m = 0
        for u, v in edges:
            self.add_edge(u, v)

    def _check(self, v):
        if not (0 <= v < self.n):
            raise BadVertex(f"vertex {v} out of range 0..{self.n - 1}")

    def has_edge(self, u, v) -> bool:
        self._check(u)
        self._check(v)
        return v in self.out_adj[u]

    def add_edge(self, u, v):
        self._check(u)
        self._check(v)
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if v in self.out_adj[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) already present")
        self.out_adj[u].add(v)
        self.in_adj[v].add(u)
        self.m += 1

    def remove_edge(self, u, v):
        self._check(u)
        self._check(v)
        if v not in self.out_adj[u]:
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.out_adj[u].discard(v)
        self.in_adj[v].discard(u)
        self.m -= 1

    def apply(self, update: EdgeUpdate):
        if update.kind is UpdateKind.INSERT:
            self.add_edge(update.u, update.v)
        else:
            self.remove_edge(update.u, update.v)

    def edges(self):
        """Edges in canonical order; undirected edges once with ``u < v``."""
        for u in range(self.n):
            for v in sorted(self.out_adj[u]):
                if self.directed or u < v:
                    yield (u, v)

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph(self.n, self.directed)
        g.out_adj = [set(s) for s in self.out_adj]
        g.in_adj = [set(s) for s in self.in_adj] if self.directed else g.out_adj
        g.m = self.m
        return g

    def reversed(self) -> "DynamicGraph":
        if not self.directed:
            return self.copy()
        g = self.copy()
        g.out_adj, g.in_adj = g.in_adj, g.out_adj
        return g

    def __eq__(self, other):
        if not isinstance(other, DynamicGraph):
            return NotImplemented
        return (self.n, self.directed, self.out_adj) == (
            other.n, other.directed, other.out_adj)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"DynamicGraph(n={self.n}, m={self.m}, {kind})"


def bfs_truncated(g: DynamicGraph, s: int, direction=Direction.OUT, cap=None):
    """Distances from ``s`` (``Direction.IN``: distances to ``s``).

    Returns a list indexed by vertex; entries beyond ``cap`` are ``INF``.
    ``cap=None`` means no truncation.
    """
    g._check(s)
    if cap is None:
        cap = g.n
    if cap < 0:
        raise ValueError("cap must be non-negative")
    adj = g.out_adj if Direction(direction) is Direction.OUT else g.in_adj
    dist = [INF] * g.n
    dist[s] = 0
    frontier = deque([s])
    while frontier:
        x = frontier.popleft()
        dx = dist[x]
        if dx >= cap:
            continue
        for y in adj[x]:
            if dist[y] is INF:
                dist[y] = dx + 1
                frontier.append(y)
    return dist
