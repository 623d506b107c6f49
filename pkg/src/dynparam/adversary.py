"""Worst-case instance generators from vector and cycle problems.

Each generator turns a seed instance (orthogonal vectors, hitting set or a
digraph for closed-walk detection) into a base graph plus one edge batch per
stage.  Applying a stage's batch moves the queried parameter to one side of
a provable gap depending on a combinatorial yes/no answer for that stage.
:func:`certify` replays every stage against the exact oracle and an
independent brute-force decision.

Node ids are allocated in construction order by :class:`NodeAlloc`, which
also keeps a name for every id (for example ``("u", 2, 0)`` is the start of
the path of vector 2 of ``U``), so instances are reproducible byte for byte.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CertificationError, DegenerateInstance, TooLargeForOracle
from .graph import INF, DynamicGraph, EdgeUpdate, Mode, Param
from .oracle import oracle
from .stream import QueryMark, StageMark, UpdateStream

INCREMENTAL, DECREMENTAL = "incremental", "decremental"


# -- seed instances ------------------------------------------------------------
@dataclass
class OvInstance:
    """Vector sets over ``{0, 1}^d``: ``U, V`` (2 sets) or ``U, V, W`` (3 sets)."""

    U: list
    V: list
    W: list | None = None
    d: int = 0
    problem: str = "3ov"      # "2ov", "3ov" or "3hs"
    trivial: bool | None = None  # answer forced by a removed degenerate vector

    def __post_init__(self):
        self.U = [tuple(int(b) for b in x) for x in self.U]
        self.V = [tuple(int(b) for b in x) for x in self.V]
        if self.W is not None:
            self.W = [tuple(int(b) for b in x) for x in self.W]
        vecs = self.U + self.V + (self.W or [])
        if not self.d and vecs:
            self.d = len(vecs[0])
        if any(len(x) != self.d for x in vecs):
            raise ValueError("all vectors need dimension d")


def clean(inst: OvInstance) -> OvInstance:
    """Drop coordinates that vanish on a whole set, then all-zero vectors.

    Removing such a coordinate changes no inner product.  An all-zero vector
    forces the answer: for orthogonal vectors any tuple containing it is
    orthogonal ("yes"); for hitting set a zero ``v`` defeats every pair
    ("no") while a zero ``u`` or ``w`` can simply never be chosen.
    """
    sets = [inst.U, inst.V] + ([inst.W] if inst.W is not None else [])
    keep = [c for c in range(inst.d) if all(any(x[c] for x in s) for s in sets)]
    proj = [[tuple(x[c] for c in keep) for x in s] for s in sets]
    trivial = inst.trivial
    if inst.problem == "3hs":
        if any(not any(v) for v in proj[1]):
            trivial = False
    elif any(not any(x) for s in proj for x in s):
        trivial = True
    proj = [[x for x in s if any(x)] for s in proj]
    if any(not s for s in proj) or not keep:
        raise DegenerateInstance("cleaning emptied a vector set")
    W = proj[2] if inst.W is not None else None
    return OvInstance(proj[0], proj[1], W, len(keep), inst.problem, trivial)


def _dot(*vs):
    return sum(math.prod(t) for t in zip(*vs))


def decide(inst, key) -> bool:
    """Brute-force answer for one stage (``key`` = index into the stage set)."""
    if isinstance(inst, CycleSeed):
        return inst.closed_walk(key)
    if inst.problem == "2ov":
        v = inst.V[key]
        return any(_dot(u, v) == 0 for u in inst.U)
    w = inst.W[key]
    if inst.problem == "3ov":
        return any(_dot(u, v, w) == 0 for u in inst.U for v in inst.V)
    return any(all(_dot(u, v, w) != 0 for v in inst.V) for u in inst.U)


@dataclass
class CycleSeed:
    graph: DynamicGraph
    k: int

    def closed_walk(self, v) -> bool:
        """Is there a walk of exactly ``k`` edges from ``v`` back to ``v``?"""
        n = self.graph.n
        a = np.zeros((n, n), dtype=np.int64)
        for x, y in self.graph.edges():
            a[x, y] = 1
        row = np.zeros(n, dtype=np.int64)
        row[v] = 1
        for _ in range(self.k):
            row = np.minimum(row @ a, 1)
        return bool(row[v])

    def simple_cycle(self, v) -> bool:
        """Is ``v`` on a simple directed cycle with exactly ``k`` vertices?"""
        out = self.graph.out_adj

        def dfs(x, depth, seen):
            if depth == self.k:
                return v in out[x]
            return any(dfs(y, depth + 1, seen | {y}) for y in out[x] if y not in seen)

        return dfs(v, 1, {v})


# -- gadget containers -----------------------------------------------------------
@dataclass(frozen=True)
class Gap:
    """Expected value of ``param`` on yes- and no-stages.

    ``yes``/``no`` are ``(relation, value)`` with relation in
    ``{">=", "<=", "==", "finite", "infinite"}``.  For eccentricities the
    measured value is the maximum eccentricity over ``watch``.
    """

    param: Param
    yes: tuple
    no: tuple
    watch: tuple = ()

    def measure(self, res):
        if self.param is Param.DIAMETER:
            return res.diameter
        if self.param is Param.RADIUS:
            return res.radius
        return max(res.ecc_out[v] for v in self.watch)

    def holds(self, value, decision) -> bool:
        rel, bound = self.yes if decision else self.no
        if rel == "finite":
            return value is not INF
        if rel == "infinite":
            return value is INF
        if value is INF:
            return rel == ">="
        return {">=": value >= bound, "<=": value <= bound, "==": value == bound}[rel]

    def as_dict(self, decision):
        rel, bound = self.yes if decision else self.no
        return {"param": self.param.value, "relation": rel, "bound": bound,
                "watch": list(self.watch)}


@dataclass
class Stage:
    label: str
    key: int
    batch: list

    def inverse(self):
        return [EdgeUpdate.delete(e.u, e.v) if e.kind.value == "+" else
                EdgeUpdate.insert(e.u, e.v) for e in self.batch]


@dataclass
class GadgetInstance:
    name: str
    base_graph: DynamicGraph
    stages: list
    gaps: list
    a: int
    seed: object
    polarity: str = INCREMENTAL
    names: dict = field(default_factory=dict)  # id -> name

    def node(self, *name):
        return self.ids[name]

    @property
    def ids(self):
        return {v: k for k, v in self.names.items()}

    def decisions(self):
        return [decide(self.seed, s.key) for s in self.stages]


class NodeAlloc:
    def __init__(self):
        self.names = {}
        self._ids = {}
        self.edges = []

    def __call__(self, *name):
        if name not in self._ids:
            self._ids[name] = len(self.names)
            self.names[self._ids[name]] = name
        return self._ids[name]

    def edge(self, u, v):
        self.edges.append((u, v))

    def path(self, start, end, length, *name):
        """Path of ``length`` edges; internal nodes are ``name + (j,)``."""
        prev = start
        for j in range(1, length):
            cur = self(*name, j)
            self.edge(prev, cur)
            prev = cur
        self.edge(prev, end)

    def graph(self, directed):
        return DynamicGraph(len(self.names), directed, self.edges)


def _rational(eps):
    return Fraction(eps).limit_denominator(10**9)


def a_diam32(eps):
    e = _rational(eps)
    return max(1, math.ceil((1 - 2 * e) / (8 * e)) + 1)


def a_ecc53(eps):
    e = _rational(eps)
    return max(1, math.ceil((7 - 6 * e) / (9 * e)))


def a_2approx(eps):
    e = _rational(eps)
    return max(1, math.ceil((2 - e) / (2 * e)) + 1)


def a_directed(eps):
    e = _rational(eps)
    return max(1, math.ceil((3 - 3 * e) / e) + 1)


# -- shared vector gadget ---------------------------------------------------------
def _gdelta(alloc, inst, a, side=()):
    """Coordinate nodes, vector paths and encoding paths (undirected)."""
    d = inst.d
    cU = [alloc(*side, "cU", c) for c in range(d)]
    cV = [alloc(*side, "cV", c) for c in range(d)]
    for i, u in enumerate(inst.U):
        # the start of each U path is shared across sides (merge point)
        ids = [alloc("u", i, 0)] + [alloc(*side, "u", i, j) for j in range(1, a + 1)]
        for j in range(a):
            alloc.edge(ids[j], ids[j + 1])
    for i, v in enumerate(inst.V):
        ids = [alloc(*side, "v", i, j) for j in range(a + 1)]
        for j in range(a):
            alloc.edge(ids[j], ids[j + 1])
    for i, u in enumerate(inst.U):
        end = alloc(*side, "u", i, a)
        for c in range(d):
            if u[c]:
                alloc.path(end, cU[c], a, *side, "encU", i, c)
    for i, v in enumerate(inst.V):
        for c in range(d):
            if v[c]:
                alloc.path(cV[c], alloc(*side, "v", i, 0), a, *side, "encV", i, c)
    return cU, cV


def _stage_pairs(inst, pairs_for, polarity):
    """Base extra edges and per-stage batches for coordinate-pair shortcuts.

    ``pairs_for(c)`` lists the shortcut edges of coordinate ``c``; a stage
    for stage vector ``w`` switches on exactly the coordinates with
    ``w[c] = 1``.
    """
    stage_vecs = inst.W if inst.W is not None else inst.V
    base, stages = [], []
    if polarity == DECREMENTAL:
        for c in range(inst.d):
            base += pairs_for(c)
    for k, w in enumerate(stage_vecs):
        if polarity == INCREMENTAL:
            batch = [EdgeUpdate.insert(*e) for c in range(inst.d) if w[c] for e in pairs_for(c)]
        else:
            batch = [EdgeUpdate.delete(*e) for c in range(inst.d) if not w[c]
                     for e in pairs_for(c)]
        stages.append(Stage(f"w{k}" if inst.W is not None else f"v{k}", k, batch))
    return base, stages


def _check_polarity(polarity):
    if polarity not in (INCREMENTAL, DECREMENTAL):
        raise ValueError(f"polarity must be {INCREMENTAL!r} or {DECREMENTAL!r}")


def _prepare(inst, problem):
    if inst.problem != problem:
        inst = OvInstance(inst.U, inst.V, inst.W, inst.d, problem, inst.trivial)
    if problem != "2ov" and inst.W is None:
        raise ValueError(f"{problem} needs three vector sets")
    return clean(inst)


def gen_gdelta(inst: OvInstance, a: int, polarity=INCREMENTAL):
    """The bare vector gadget with coordinate-pair stages (undirected)."""
    _check_polarity(polarity)
    inst = clean(inst)
    alloc = NodeAlloc()
    cU, cV = _gdelta(alloc, inst, a)
    base, stages = _stage_pairs(inst, lambda c: [(cU[c], cV[c])], polarity)
    alloc.edges += base
    return GadgetInstance("gdelta", alloc.graph(False), stages, [], a, inst, polarity,
                          dict(alloc.names))


def _diam32_side(alloc, inst, a, side=()):
    cU, cV = _gdelta(alloc, inst, a, side)
    x, y = alloc(*side, "x"), alloc(*side, "y")
    for i in range(len(inst.U)):
        alloc.path(x, alloc(*side, "u", i, a), a, *side, "xpath", i)
    for i in range(len(inst.V)):
        alloc.path(y, alloc(*side, "v", i, 0), a, *side, "ypath", i)
    return cU, cV


def gen_diam32(inst: OvInstance, eps=0.1, a=None, polarity=INCREMENTAL):
    """Diameter at least ``6a+1`` on an orthogonal-triple stage, else at most ``4a+1``."""
    _check_polarity(polarity)
    inst = _prepare(inst, "3ov")
    a = a_diam32(eps) if a is None else a
    alloc = NodeAlloc()
    cU, cV = _diam32_side(alloc, inst, a)
    base, stages = _stage_pairs(inst, lambda c: [(cU[c], cV[c])], polarity)
    alloc.edges += base
    gaps = [Gap(Param.DIAMETER, (">=", 6 * a + 1), ("<=", 4 * a + 1))]
    return GadgetInstance("diam32", alloc.graph(False), stages, gaps, a, inst, polarity,
                          dict(alloc.names))


def gen_radius32(inst: OvInstance, eps=0.1, a=None, polarity=INCREMENTAL):
    """Two mirrored diameter gadgets glued at every ``u^0``.

    Radius at most ``4a+1`` on a hitting-set stage, else at least ``6a+1``.
    """
    _check_polarity(polarity)
    inst = _prepare(inst, "3hs")
    a = a_diam32(eps) if a is None else a
    alloc = NodeAlloc()
    left = _diam32_side(alloc, inst, a, ("L",))
    right = _diam32_side(alloc, inst, a, ("R",))
    pairs = lambda c: [(left[0][c], left[1][c]), (right[0][c], right[1][c])]  # noqa: E731
    base, stages = _stage_pairs(inst, pairs, polarity)
    alloc.edges += base
    gaps = [Gap(Param.RADIUS, ("<=", 4 * a + 1), (">=", 6 * a + 1))]
    return GadgetInstance("radius32", alloc.graph(False), stages, gaps, a, inst, polarity,
                          dict(alloc.names))


def gen_ecc53(inst: OvInstance, eps=0.1, a=None, polarity=INCREMENTAL):
    """Some ``ecc(u^a) >= 5a+1`` on an orthogonal-triple stage, else all ``<= 3a+2``."""
    _check_polarity(polarity)
    inst = _prepare(inst, "3ov")
    a = a_ecc53(eps) if a is None else a
    alloc = NodeAlloc()
    cU, cV = _gdelta(alloc, inst, a)
    x = alloc("x")
    for i in range(len(inst.U)):
        alloc.edge(x, alloc("u", i, 0))
    base, stages = _stage_pairs(inst, lambda c: [(cU[c], cV[c])], polarity)
    alloc.edges += base
    watch = tuple(alloc("u", i, a) for i in range(len(inst.U)))
    gaps = [Gap(Param.ECCENTRICITIES, (">=", 5 * a + 1), ("<=", 3 * a + 2), watch)]
    return GadgetInstance("ecc53", alloc.graph(False), stages, gaps, a, inst, polarity,
                          dict(alloc.names))


def gen_2approx(inst: OvInstance, eps=0.5, a=None, polarity=INCREMENTAL):
    """Hub ``s`` with two mirrored copies of ``U``; stages are vectors of ``V``.

    On an orthogonal-pair stage ``ecc(s) = R >= 4a`` and ``D >= 8a``;
    otherwise ``ecc(s) = R = 2a+1`` and ``D <= 4a+2``.  ``s`` is always the
    unique center.
    """
    _check_polarity(polarity)
    inst = _prepare(inst, "2ov")
    a = a_2approx(eps) if a is None else a
    alloc = NodeAlloc()
    s = alloc("s")
    ends = {}
    for side in ("L", "R"):
        for c in range(inst.d):
            ends[side, c] = alloc(side, "c", c)
            alloc.path(s, ends[side, c], 2 * a, side, "spath", c)
        for i, u in enumerate(inst.U):
            ids = [alloc(side, "u", i, j) for j in range(a + 1)]
            for j in range(a):
                alloc.edge(ids[j], ids[j + 1])
            for c in range(inst.d):
                if u[c]:
                    alloc.path(ids[a], ends[side, c], a, side, "encU", i, c)
    base, stages = _stage_pairs(inst, lambda c: [(s, ends["L", c]), (s, ends["R", c])],
                                polarity)
    alloc.edges += base
    gaps = [Gap(Param.RADIUS, (">=", 4 * a), ("==", 2 * a + 1)),
            Gap(Param.ECCENTRICITIES, (">=", 4 * a), ("==", 2 * a + 1), (s,)),
            Gap(Param.DIAMETER, (">=", 8 * a), ("<=", 4 * a + 2))]
    return GadgetInstance("2approx", alloc.graph(False), stages, gaps, a, inst, polarity,
                          dict(alloc.names))


def gen_directed(inst: OvInstance, eps=0.5, param=Param.ECCENTRICITIES, a=None,
                 polarity=INCREMENTAL):
    """Directed vector gadget with hubs ``x`` and ``y``.

    Eccentricities (3-OV): some ``ecc(u^a) = 2a+3`` on an orthogonal-triple
    stage, else every ``ecc(u^a) = a+3``.  Radius (3-HS): ``a+3`` on a
    hitting-set stage, else ``2a+3``.
    """
    _check_polarity(polarity)
    param = Param(param)
    if param is Param.DIAMETER:
        raise ValueError("directed gadget covers eccentricities and radius")
    inst = _prepare(inst, "3ov" if param is Param.ECCENTRICITIES else "3hs")
    a = a_directed(eps) if a is None else a
    alloc = NodeAlloc()
    cU = [alloc("cU", c) for c in range(inst.d)]
    cV = [alloc("cV", c) for c in range(inst.d)]
    x, y = alloc("x"), alloc("y")
    for i, u in enumerate(inst.U):
        ids = [alloc("u", i, j) for j in range(a + 1)]
        for j in range(a):
            alloc.edge(ids[j], ids[j + 1])
        alloc.edge(ids[a], x)
        alloc.edge(x, ids[0])
        for c in range(inst.d):
            if u[c]:
                alloc.edge(ids[a], cU[c])
    for i, v in enumerate(inst.V):
        ids = [alloc("v", i, j) for j in range(a + 1)]
        for j in range(a):
            alloc.edge(ids[j], ids[j + 1])
        for c in range(inst.d):
            if v[c]:
                alloc.edge(cV[c], ids[0])
    for c in range(inst.d):
        alloc.edge(cU[c], y)
        alloc.path(y, cV[c], a, "ypath", c)
    base, stages = _stage_pairs(inst, lambda c: [(cU[c], cV[c])], polarity)
    alloc.edges += base
    watch = tuple(alloc("u", i, a) for i in range(len(inst.U)))
    if param is Param.ECCENTRICITIES:
        gaps = [Gap(Param.ECCENTRICITIES, ("==", 2 * a + 3), ("==", a + 3), watch)]
        name = "directed-ecc"
    else:
        gaps = [Gap(Param.RADIUS, ("==", a + 3), ("==", 2 * a + 3))]
        name = "directed-radius"
    return GadgetInstance(name, alloc.graph(True), stages, gaps, a, inst, polarity,
                          dict(alloc.names))


def gen_kcycle(g: DynamicGraph, k: int, polarity=INCREMENTAL):
    """Layered copies of a digraph; all eccentricities finite iff the stage
    vertex closes a walk of exactly ``k`` edges."""
    _check_polarity(polarity)
    if not g.directed:
        raise ValueError("closed-walk gadget needs a directed seed")
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    alloc = NodeAlloc()
    s = alloc("s")
    t = {side: alloc(side, "t") for side in ("L", "R")}
    layer = {(side, i, v): alloc(side, i, v)
             for side in ("L", "R") for i in range(k + 1) for v in range(n)}
    for side in ("L", "R"):
        for i in range(k):
            for u, v in g.edges():
                alloc.edge(layer[side, i, u], layer[side, i + 1, v])
        for i in range(k + 1):
            for v in range(n):
                alloc.edge(t[side], layer[side, i, v])
                alloc.edge(layer[side, i, v], s)

    def stage_edges(v):
        return [(s, layer["L", 0, v]), (s, layer["R", 0, v]),
                (layer["L", k, v], t["L"]), (layer["R", k, v], t["R"])]

    base, stages = [], []
    for v in range(n):
        if polarity == INCREMENTAL:
            batch = [EdgeUpdate.insert(*e) for e in stage_edges(v)]
        else:
            base += stage_edges(v)
            batch = [EdgeUpdate.delete(*e) for x in range(n) if x != v
                     for e in stage_edges(x)]
        stages.append(Stage(f"v{v}", v, batch))
    alloc.edges += base
    gaps = [Gap(Param.DIAMETER, ("finite", None), ("infinite", None)),
            Gap(Param.RADIUS, ("finite", None), ("infinite", None)),
            Gap(Param.ECCENTRICITIES, ("finite", None), ("infinite", None), (s,))]
    return GadgetInstance("kcycle", alloc.graph(True), stages, gaps, 0, CycleSeed(g, k),
                          polarity, dict(alloc.names))


# -- certification ------------------------------------------------------------------
@dataclass
class StageResult:
    label: str
    decision: bool
    values: list
    ok: bool


@dataclass
class CertReport:
    name: str
    rows: list

    @property
    def ok(self):
        return all(r.ok for r in self.rows)


def certify(gi: GadgetInstance, max_nodes=4000, strict=True) -> CertReport:
    """Apply, measure and revert every stage; compare with brute force."""
    g = gi.base_graph.copy()
    if g.n > max_nodes:
        raise TooLargeForOracle(f"{g.n} nodes exceed the oracle bound {max_nodes}")
    base_edges = sorted(g.edges())
    rows = []
    for stage in gi.stages:
        for e in stage.batch:
            g.apply(e)
        res = oracle(g)
        decision = decide(gi.seed, stage.key)
        values = [gap.measure(res) for gap in gi.gaps]
        ok = all(gap.holds(v, decision) for gap, v in zip(gi.gaps, values))
        rows.append(StageResult(stage.label, decision, values, ok))
        for e in stage.inverse():
            g.apply(e)
        if sorted(g.edges()) != base_edges:
            raise CertificationError(f"stage {stage.label} did not restore the base graph")
    report = CertReport(gi.name, rows)
    if strict and not report.ok:
        bad = [r.label for r in rows if not r.ok]
        raise CertificationError(f"{gi.name}: stages {bad} violate the expected gap")
    return report


# -- export ----------------------------------------------------------------------------
def to_stream(gi: GadgetInstance, stage=None) -> UpdateStream:
    """All stages as apply/query/revert (fully dynamic), or one stage alone."""
    g = gi.base_graph
    initial = list(g.edges())
    if stage is None:
        events = []
        for st in gi.stages:
            events += [StageMark(st.label), *st.batch, QueryMark(), *st.inverse()]
        return UpdateStream(g.n, g.directed, Mode.FULLY_DYNAMIC, initial, events)
    st = gi.stages[stage]
    mode = Mode.INCREMENTAL if gi.polarity == INCREMENTAL else Mode.DECREMENTAL
    return UpdateStream(g.n, g.directed, mode, initial,
                        [StageMark(st.label), *st.batch, QueryMark()])


def sidecar(gi: GadgetInstance) -> str:
    """JSON lines with the expected bound per stage and parameter."""
    lines = []
    for st, decision in zip(gi.stages, gi.decisions()):
        lines.append(json.dumps({"stage": st.label, "gadget": gi.name, "a": gi.a,
                                 "decision": decision,
                                 "expect": [gap.as_dict(decision) for gap in gi.gaps]}))
    return "\n".join(lines) + ("\n" if lines else "")


# -- random seeds for tests and benches -------------------------------------------------
def random_instance(rng, sizes=(4, 4, 4), d=4, p=0.6, problem="3ov") -> OvInstance:
    """Random vectors, redrawn until cleaning leaves every set non-empty."""
    while True:
        sets = [[tuple(int(rng.random() < p) for _ in range(d)) for _ in range(m)]
                for m in sizes]
        inst = OvInstance(sets[0], sets[1], sets[2] if len(sets) > 2 else None, d, problem)
        try:
            clean(inst)
        except DegenerateInstance:
            continue
        return inst


def plant_orthogonal(inst: OvInstance, stage: int, rng) -> OvInstance:
    """Zero a coordinate triple so that ``W[stage]`` is in an orthogonal triple."""
    U, V, W = [list(s) for s in (inst.U, inst.V, inst.W)]
    i, j = rng.randrange(len(U)), rng.randrange(len(V))
    u, v = list(U[i]), list(V[j])
    for c in range(inst.d):
        if W[stage][c]:
            (u if rng.random() < 0.5 else v)[c] = 0
    # keep both vectors non-zero by lighting a coordinate that w does not use
    free = [c for c in range(inst.d) if not W[stage][c]]
    if not free:
        W[stage] = tuple(0 if c == 0 else b for c, b in enumerate(W[stage]))
        free = [0]
    if not any(u):
        u[rng.choice(free)] = 1
    if not any(v):
        v[rng.choice(free)] = 1
    U[i], V[j] = tuple(u), tuple(v)
    return OvInstance(U, V, W, inst.d, inst.problem)


__all__ = ["OvInstance", "CycleSeed", "Gap", "Stage", "GadgetInstance", "clean", "decide",
           "gen_gdelta", "gen_diam32", "gen_radius32", "gen_ecc53", "gen_2approx",
           "gen_directed", "gen_kcycle", "certify", "CertReport", "to_stream", "sidecar",
           "random_instance", "plant_orthogonal", "a_diam32", "a_ecc53", "a_2approx",
           "a_directed", "INCREMENTAL", "DECREMENTAL"]
