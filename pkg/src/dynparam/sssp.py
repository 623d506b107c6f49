"""Truncated partially dynamic single-source shortest paths.

``EsTree`` is an exact (slack 0) Even-Shiloach tree: it keeps BFS levels
up to a depth cap under edge insertions (incremental mode) or deletions
(decremental mode) and reports every vertex whose estimate changed.

A source may be a vertex set.  The tree is then rooted at a private dummy
vertex with an edge to every member (``Direction.OUT``: d'(S, v)) or from
every member (``Direction.IN``: d'(v, S)), and the exposed estimate is the
dummy level minus one.  The dummy never appears in results.
"""
from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .errors import CapNonPositive, EmptySet, ModeMismatch, RadiusExceedsCap
from .graph import INF, Direction, DynamicGraph, Mode


class Change(NamedTuple):
    vertex: int
    old: object
    new: object


class EsTree:
    """Depth-capped BFS tree over ``graph`` maintained under one update kind.

    The graph must be mutated *before* calling :meth:`insert` or
    :meth:`delete` for the corresponding edge.
    """

    delta = 0.0  # exact backend

    def __init__(self, graph: DynamicGraph, source, direction=Direction.OUT,
                 cap: int | None = None, mode=Mode.DECREMENTAL):
        if cap is None:
            cap = graph.n
        if cap < 0:
            raise CapNonPositive(f"cap must be >= 0, got {cap}")
        self.graph = graph
        self.n = n = graph.n
        self.direction = Direction(direction)
        self.mode = Mode(mode)
        if self.mode is Mode.FULLY_DYNAMIC:
            raise ModeMismatch("EsTree supports incremental or decremental mode only")
        self.cap = cap
        if isinstance(source, int):
            graph._check(source)
            self.source = source
            self.members = None
            self._root = source
            self._offset = 0
            size = n
        else:
            members = set(source)
            if not members:
                raise EmptySet("set source must be non-empty")
            for s in members:
                graph._check(s)
            self.source = None
            self.members = members
            self._root = n
            self._offset = 1
            size = n + 1
        self._cap = cap + self._offset
        self._unk = self._cap + 1
        if self.direction is Direction.OUT:
            self._succ, self._pred = graph.out_adj, graph.in_adj
        else:
            self._succ, self._pred = graph.in_adj, graph.out_adj
        self.lvl = [self._unk] * size
        self.parent = [None] * size
        self.work = 0
        self._counts = [0] * (self._unk + 1)
        self._build()

    # -- construction -------------------------------------------------
    def _children(self, x):
        return self.members if x == self.n else self._succ[x]

    def _build(self):
        lvl, parent, cap, unk = self.lvl, self.parent, self._cap, self._unk
        root = self._root
        lvl[root] = 0
        q = deque([root])
        work = 0
        while q:
            x = q.popleft()
            lx = lvl[x]
            if lx >= cap:
                continue
            for y in self._children(x):
                work += 1
                if lvl[y] == unk:
                    lvl[y] = lx + 1
                    parent[y] = x
                    q.append(y)
        self.work += work
        counts = self._counts
        for v in range(self.n):
            counts[lvl[v]] += 1
        self._top = None

    # -- exposed estimates ---------------------------------------------
    def _expose(self, internal):
        return INF if internal > self._cap else internal - self._offset

    def level(self, v):
        return self._expose(self.lvl[v])

    def levels(self):
        cap, off = self._cap, self._offset
        return [INF if x > cap else x - off for x in self.lvl[:self.n]]

    def ball(self, r):
        """Vertices whose estimate is at most ``r``."""
        if r > self.cap:
            raise RadiusExceedsCap(f"radius {r} exceeds cap {self.cap}")
        bound = r + self._offset
        return {v for v in range(self.n) if self.lvl[v] <= bound}

    def max_estimate(self):
        """``(max finite estimate, all vertices reached)``."""
        if self._top is None:
            top = self._cap
            counts = self._counts
            while top >= 0 and counts[top] == 0:
                top -= 1
            self._top = top
        top = self._top
        value = top - self._offset if top >= self._offset else INF
        return value, self._counts[self._unk] == 0

    # -- updates ---------------------------------------------------------
    def _tree_edges(self, u, v):
        if not self.graph.directed:
            return ((u, v), (v, u))
        if self.direction is Direction.OUT:
            return ((u, v),)
        return ((v, u),)

    def insert(self, u, v):
        """Process an inserted graph edge; returns the decreased estimates."""
        if self.mode is not Mode.INCREMENTAL:
            raise ModeMismatch("insert on a decremental tree")
        touched = {}
        for a, b in self._tree_edges(u, v):
            self._relax(a, b, touched)
        return self._finish(touched)

    def grow(self, v):
        """Add ``v`` to the source set (incremental set-source trees only)."""
        if self.members is None:
            raise TypeError("grow() needs a set-source tree")
        if self.mode is not Mode.INCREMENTAL:
            raise ModeMismatch("grow on a decremental tree")
        self.graph._check(v)
        touched = {}
        if v not in self.members:
            self.members.add(v)
            self._relax(self.n, v, touched)
        return self._finish(touched)

    def _relax(self, a, b, touched):
        lvl, parent, cap = self.lvl, self.parent, self._cap
        la = lvl[a]
        if la >= cap or la + 1 >= lvl[b]:
            return
        if b not in touched:
            touched[b] = lvl[b]
        lvl[b] = la + 1
        parent[b] = a
        q = deque([b])
        work = 0
        succ = self._succ
        while q:
            x = q.popleft()
            lx = lvl[x]
            if lx >= cap:
                continue
            nl = lx + 1
            for y in succ[x]:
                work += 1
                if nl < lvl[y]:
                    if y not in touched:
                        touched[y] = lvl[y]
                    lvl[y] = nl
                    parent[y] = x
                    q.append(y)
        self.work += work

    def delete(self, u, v):
        """Process a deleted graph edge; returns the increased estimates."""
        if self.mode is not Mode.DECREMENTAL:
            raise ModeMismatch("delete on an incremental tree")
        parent = self.parent
        start = [b for a, b in self._tree_edges(u, v) if parent[b] == a]
        touched = {}
        if start:
            self._repair(start, touched)
        return self._finish(touched)

    def _repair(self, start, touched):
        lvl, parent, cap, unk = self.lvl, self.parent, self._cap, self._unk
        pred, succ, members, dummy = self._pred, self._succ, self.members, self.n
        q = deque(start)
        queued = set(start)
        work = 0
        while q:
            y = q.popleft()
            queued.discard(y)
            ly = lvl[y]
            if ly == unk:
                continue
            target = ly - 1
            if members is not None and target == 0 and y in members:
                parent[y] = dummy
                continue
            found = None
            for p in pred[y]:
                work += 1
                if lvl[p] == target:
                    found = p
                    break
            if found is not None:
                parent[y] = found
                continue
            if y not in touched:
                touched[y] = ly
            for c in succ[y]:
                work += 1
                if parent[c] == y and c not in queued:
                    queued.add(c)
                    q.append(c)
            parent[y] = None
            if ly + 1 > cap:
                lvl[y] = unk
            else:
                lvl[y] = ly + 1
                if y not in queued:
                    queued.add(y)
                    q.append(y)
        self.work += work

    def _finish(self, touched):
        if not touched:
            return []
        lvl, counts, cap = self.lvl, self._counts, self._cap
        changes = []
        for v in sorted(touched):
            if v >= self.n:
                continue
            old, new = touched[v], lvl[v]
            if old == new:
                continue
            counts[old] -= 1
            counts[new] += 1
            changes.append(Change(v, self._expose(old), self._expose(new)))
            if self._top is not None:
                if new <= cap and new > self._top:
                    self._top = new
                elif old == self._top and counts[old] == 0:
                    self._top = None
        return changes


def set_source(graph: DynamicGraph, members, direction=Direction.OUT, cap=None,
               mode=Mode.DECREMENTAL) -> EsTree:
    """Tree for d'(S, .) (``OUT``) or d'(., S) (``IN``) through a dummy root."""
    members = set(members)
    if not members:
        raise EmptySet("set source must be non-empty")
    return EsTree(graph, members, direction, cap, mode)
