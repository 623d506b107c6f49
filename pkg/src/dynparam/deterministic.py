"""Deterministic incremental estimators built on greedy center selection.

Centers are chosen so that every vertex of the working scope is within
``eps' * guess`` of some center (distance measured *from* the center).  One
truncated SSSP tree per center then yields

* diameter: the largest in-eccentricity estimate over centers,
* radius: the smallest out-eccentricity over centers, restricted to the
  top strongly connected component,
* eccentricities: for each vertex, its largest distance estimate to a center.

Only insertions are supported; distances never grow, so coverage persists.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (EpsOutOfRange, GuessNonPositive, ModeMismatch, NotCoveringScope,
                     NotStronglyConnected)
from .graph import INF, Direction, DynamicGraph, EdgeUpdate, Mode, Param, UpdateKind
from .sssp import EsTree


# -- strongly connected components --------------------------------------------
def tarjan_scc(g: DynamicGraph, scope=None):
    """SCCs of the subgraph induced by ``scope`` (default: all vertices).

    Iterative Tarjan; components come out in reverse topological order
    (sink components first), each sorted by id.
    """
    verts = sorted(scope) if scope is not None else range(g.n)
    inside = set(verts) if scope is not None else None
    adj = g.out_adj
    index, low = {}, {}
    on_stack = set()
    stack, comps = [], []
    counter = 0
    for root in verts:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(sorted(adj[root])))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if inside is not None and w not in inside:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == v:
                        break
                comps.append(sorted(comp))
    return comps


def source_components(g: DynamicGraph, scope=None):
    """Components of the induced subgraph with no entering edge."""
    comps = tarjan_scc(g, scope)
    inside = set(scope) if scope is not None else None
    comp_of = {}
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    has_in = [False] * len(comps)
    for i, c in enumerate(comps):
        for v in c:
            for w in g.out_adj[v]:
                if inside is not None and w not in inside:
                    continue
                j = comp_of[w]
                if j != i:
                    has_in[j] = True
    return [c for i, c in enumerate(comps) if not has_in[i]]


def top_scc(g: DynamicGraph) -> set:
    """The component that reaches every vertex, or the empty set."""
    if g.n == 0:
        return set()
    sources = source_components(g)
    if len(sources) != 1:
        return set()
    return set(sources[0])


def is_strongly_connected(g: DynamicGraph) -> bool:
    return g.n <= 1 or len(tarjan_scc(g)) == 1


# -- center selection -----------------------------------------------------------
@dataclass
class CenterSet:
    centers: list
    label: dict
    eps_prime: float
    guess: int
    depth: int            # BFS depth floor(eps' * guess / 2)
    threshold: int        # ball size needed to become a center
    scan_work: int = 0    # edges expanded by counter-pruned scans
    exact_work: int = 0   # edges expanded by confirming and peeling BFS runs
    pruned_counts: list = field(default_factory=list)  # (vertex, pruned, exact)

    @property
    def radius(self) -> float:
        return self.eps_prime * self.guess


def _ball(g, src, depth, alive):
    """Exact ``Out(src, depth)`` inside ``alive`` plus edges scanned."""
    dist = {src: 0}
    q = deque([src])
    work = 0
    while q:
        x = q.popleft()
        dx = dist[x]
        if dx >= depth:
            continue
        for y in g.out_adj[x]:
            work += 1
            if y in alive and y not in dist:
                dist[y] = dx + 1
                q.append(y)
    return dist, work


def _pruned_count(g, src, depth, alive, counter):
    """Ball size upper bound that reuses counters instead of expanding."""
    seen = {src: 0}
    q = deque([src])
    total = 0
    work = 0
    while q:
        x = q.popleft()
        if x != src and counter.get(x, 0):
            total += counter[x]
            continue
        total += 1
        dx = seen[x]
        if dx >= depth:
            continue
        for y in g.out_adj[x]:
            work += 1
            if y in alive and y not in seen:
                seen[y] = dx + 1
                q.append(y)
    return total, work


def select_centers(g: DynamicGraph, guess, eps, scope=None, order=None,
                   forced=()) -> CenterSet:
    """Greedy ball peeling followed by source-component labeling.

    ``order`` fixes the test order (default: increasing id); ``forced``
    centers are taken first, before any test, so a rerun keeps them.
    """
    if guess < 1:
        raise GuessNonPositive(f"guess must be >= 1, got {guess}")
    eps_prime = eps / 2
    depth = int(eps_prime * guess / 2)
    # largest size threshold with depth + threshold <= eps' * guess (coverage);
    # it equals ceil(eps' * guess / 2) unless the fraction is in (0, 1/2)
    threshold = max(1, int(eps_prime * guess) - depth)
    scope = set(range(g.n)) if scope is None else set(scope)
    if order is None:
        order = sorted(scope)
    cs = CenterSet([], {}, eps_prime, guess, depth, threshold)
    alive = set(scope)

    def make_center(v, dist):
        cs.centers.append(v)
        for x in dist:
            cs.label[x] = v
        alive.difference_update(dist)

    for v in forced:
        if v not in scope:
            continue
        if v in alive:
            dist, w = _ball(g, v, depth, alive)
            cs.exact_work += w
            make_center(v, dist)
        elif v not in cs.centers:
            cs.centers.append(v)

    # Step 2: single pass in test order; a rejected vertex stays rejected
    # because its ball only shrinks as vertices are peeled away
    counter = {}
    for y in order:
        if y not in alive:
            continue
        pruned, w = _pruned_count(g, y, depth, alive, counter)
        cs.scan_work += w
        exact = None
        if pruned >= threshold:
            dist, w = _ball(g, y, depth, alive)
            cs.exact_work += w
            exact = len(dist)
            if exact >= threshold:
                cs.pruned_counts.append((y, pruned, exact))
                make_center(y, dist)
                counter = {}
                continue
        cs.pruned_counts.append((y, pruned, exact))
        counter[y] = pruned if exact is None else exact

    # no ball was large enough: everything reachable lies within depth - 1
    if alive and not cs.centers:
        first = next(v for v in order if v in alive)
        dist, w = _ball(g, first, g.n, alive)
        cs.exact_work += w
        make_center(first, dist)

    # Steps 3-4: every remaining vertex is reached from a source component
    # of the residual graph, which is entered from a labeled vertex
    rank = {v: i for i, v in enumerate(order)}
    while alive:
        sources = sorted(source_components(g, alive), key=lambda c: rank[c[0]])
        progress = False
        for comp in sources:
            if not alive.issuperset(comp):
                continue
            entry = None
            for u in sorted(comp, key=rank.__getitem__):
                labeled = sorted(w for w in g.in_adj[u] if w in scope and w in cs.label)
                if labeled:
                    entry = (u, cs.label[labeled[0]])
                    break
            if entry is None:
                continue
            u, c = entry
            dist, w = _ball(g, u, g.n, alive)
            cs.exact_work += w
            for x in dist:
                cs.label[x] = c
            alive.difference_update(dist)
            progress = True
        if not progress:
            raise NotCoveringScope(
                f"{len(alive)} scope vertices cannot be labeled; scope is not strongly connected")
    return cs


# -- estimator -------------------------------------------------------------------
class DeterministicEstimator:
    """Fixed-guess deterministic estimator over an owned graph (insert only)."""

    def __init__(self, graph: DynamicGraph, param, guess, eps):
        self.param = Param(param)
        if guess < 1:
            raise GuessNonPositive(f"guess must be >= 1, got {guess}")
        if not 0 < eps < 2:
            raise EpsOutOfRange("eps must lie in (0, 2)")
        self.graph = graph
        self.guess = guess
        self.eps = eps
        self.eps_prime = eps / 2
        self.phase = 0
        self.reinit_count = 0
        self.event_index = 0
        self._retired_work = 0
        self.select_work = 0
        self.center_history = []
        if self.param is Param.RADIUS:
            self.cap = 2 * guess
            self.direction = Direction.OUT
            self.H = top_scc(graph)
            self._order = sorted(self.H)
            self.centers = self._select([])
        else:
            if not is_strongly_connected(graph):
                raise NotStronglyConnected(
                    f"{self.param.value} needs a strongly connected graph")
            self.cap = guess
            self.direction = Direction.IN
            self.H = set(range(graph.n))
            self._order = list(range(graph.n))
            self.centers = self._select([])
        self.engines = {}
        self._sync_engines()

    def _select(self, forced):
        if not self.H:
            cs = CenterSet([], {}, self.eps_prime, self.guess,
                           int(self.eps_prime * self.guess / 2), 1)
        else:
            cs = select_centers(self.graph, self.guess, self.eps, self.H,
                                self._order, forced)
        self.select_work += cs.scan_work + cs.exact_work
        self.center_history.append(list(cs.centers))
        return cs

    def _sync_engines(self):
        for c in self.centers.centers:
            if c not in self.engines:
                self.engines[c] = EsTree(self.graph, c, self.direction, self.cap,
                                         Mode.INCREMENTAL)

    def apply(self, update: EdgeUpdate):
        if update.kind is not UpdateKind.INSERT:
            raise ModeMismatch("deterministic estimators accept insertions only")
        self.graph.apply(update)
        self.event_index += 1
        for c in self.centers.centers:
            self.engines[c].insert(update.u, update.v)
        if self.param is Param.RADIUS:
            H = top_scc(self.graph)
            if H != self.H:
                new = sorted(H - self.H)
                self._order = [v for v in self._order if v in H] + new
                self.H = H
                self.centers = self._select(list(self.centers.centers))
                self._sync_engines()

    def query(self):
        if self.param is Param.DIAMETER:
            best = 0
            for c in self.centers.centers:
                value, _ = self.engines[c].max_estimate()
                if value is not INF and value > best:
                    best = value
            return best
        if self.param is Param.RADIUS:
            slack = EsTree.delta
            best = INF
            for c in self.centers.centers:
                value, reached = self.engines[c].max_estimate()
                if reached and value < best:
                    best = value
            return best if best is INF else best / (1 - slack)
        cap = self.cap
        est = [0] * self.graph.n
        for c in self.centers.centers:
            for v, d in enumerate(self.engines[c].levels()):
                # an Unknown level certifies d(v, c) > cap
                x = cap if d is INF else d
                if x > est[v]:
                    est[v] = x
        return est

    @property
    def work(self):
        return {"centers": sum(t.work for t in self.engines.values()),
                "select": self.select_work}


def det_init(graph, param, guess, eps) -> DeterministicEstimator:
    return DeterministicEstimator(graph, param, guess, eps)
