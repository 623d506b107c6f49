"""Randomized fixed-guess estimators for diameter, radius and eccentricities.

One ``RandomizedEstimator`` is parameterised by a guess ``g`` of the target
value.  It keeps

* a random hitting sample ``S`` with one truncated SSSP tree per member,
* a set-source tree for the distance from every vertex to ``S`` and the set
  ``W`` of vertices farther than ``tau`` from ``S``,
* a pivot ``w`` drawn from ``W`` with a tree of its own, and a secondary
  sample ``S'`` taken from the ball of radius ``tau`` around ``w``.

Every estimate is a realised path length (or, for radius, an eccentricity
upper bound), so the one-sided guarantee holds on every run.  The quality
guarantee needs the sampling events to succeed; when one of the checks in
:meth:`RandomizedEstimator.check_reinit` fails, the estimator restarts with
fresh randomness.

Directed diameter uses out-trees from ``S`` and the pivot and in-trees
from ``S'``; the set trees measure ``d(v, S)`` and ``d(S', v)``.  Radius
and eccentricities are undirected only.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import EmptyW, EpsOutOfRange, GuessNonPositive, ModeMismatch, UnsupportedGraph
from .graph import INF, Direction, DynamicGraph, EdgeUpdate, Mode, Param, UpdateKind
from .sssp import EsTree, set_source


class ReinitReason(str, enum.Enum):
    BALL_TOO_BIG = "BallTooBig"
    SPRIME_TOO_BIG = "SPrimeTooBig"
    SPRIME_TOO_FAR = "SPrimeTooFar"


@dataclass(frozen=True)
class RandConfig:
    param: Param
    guess: int
    eps: float
    mode: Mode
    seed: int = 0
    c_sample: float = 1.0
    c_prime: float = 1.0
    max_reinit: int = 32

    def __post_init__(self):
        object.__setattr__(self, "param", Param(self.param))
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.guess < 1:
            raise GuessNonPositive(f"guess must be >= 1, got {self.guess}")
        if self.mode is Mode.FULLY_DYNAMIC:
            raise ModeMismatch("randomized estimators are incremental or decremental")
        hi = 0.45 if self.param is Param.ECCENTRICITIES else 1.0
        if not 0 < self.eps < hi:
            raise EpsOutOfRange(f"eps must lie in (0, {hi}) for {self.param.value}")

    @property
    def delta(self) -> float:
        return {Param.DIAMETER: 2 * self.eps / 11,
                Param.RADIUS: self.eps / 4,
                Param.ECCENTRICITIES: self.eps / 9}[self.param]

    @property
    def tau(self) -> float:
        """Distance beyond which a vertex counts as far from the sample."""
        return {Param.DIAMETER: self.guess / 3,
                Param.RADIUS: self.guess / 2,
                Param.ECCENTRICITIES: 2 * self.guess / 5}[self.param]

    @property
    def cap(self) -> int:
        return 2 * self.guess if self.param is Param.RADIUS else self.guess

    def alpha(self, n) -> float:
        if n < 2:
            return 0.0
        a = (1 - math.log(self.guess) / math.log(n)) / 2
        return min(max(a, 0.0), 0.5)

    def sample_size(self, n) -> int:
        if n < 2:
            return n
        k = math.ceil(self.c_sample * n ** self.alpha(n) * math.log(n) ** 2)
        return max(1, min(n, k))

    def admit_prob(self, n) -> float:
        if n < 2:
            return 1.0
        return min(1.0, self.c_prime * math.log(n) ** 2 / (self.delta * self.guess))

    def ball_limit(self, n) -> float:
        return n ** (1 - self.alpha(n))

    def sprime_limit(self, n) -> float:
        if n < 2:
            return math.inf
        return n ** (1 - self.alpha(n)) * math.log(n) ** 4 / (self.delta * self.guess)


def pick_pivot(W, mode, rng):
    """Uniform draw from ``W`` (incremental) or its lowest id (decremental)."""
    if not W:
        raise EmptyW("no far vertex to pick a pivot from")
    if Mode(mode) is Mode.DECREMENTAL:
        return min(W)
    ordered = sorted(W)
    return ordered[int(rng.integers(len(ordered)))]


class RandomizedEstimator:
    """Fixed-guess estimator that owns ``graph`` and mutates it in :meth:`apply`."""

    def __init__(self, graph: DynamicGraph, config: RandConfig, seed_seq=None):
        if config.param is not Param.DIAMETER and graph.directed:
            raise UnsupportedGraph(f"{config.param.value} estimator needs an undirected graph")
        self.graph = graph
        self.cfg = config
        self.n = graph.n
        self._seq = seed_seq if seed_seq is not None else np.random.SeedSequence(
            [config.seed, config.guess])
        self.reinit_count = 0
        self.reinit_log = []     # (event_index, ReinitReason)
        self.admissions = []     # (event_index, vertex, pivot level of vertex at admission)
        self.total_phases = 0
        self.event_index = 0
        self.exhausted = False
        self._retired = {"sample": 0, "pivot": 0, "set": 0}
        self._p = config.admit_prob(self.n)
        self._r = math.floor(config.tau)
        self.S_engines = {}
        self.dist_to_S = None
        self.w_engine = None
        self.Sprime_engines = {}
        self.Sprime_dist = None
        self._initialize()
        self._settle()

    # -- directions ------------------------------------------------------
    @property
    def _s_dir(self):
        return Direction.OUT

    @property
    def _sprime_dir(self):
        return Direction.IN if self.graph.directed else Direction.OUT

    def _tree(self, source, direction):
        return EsTree(self.graph, source, direction, self.cfg.cap, self.cfg.mode)

    # -- (re)initialisation --------------------------------------------------
    def _retire_all(self):
        self._retired["sample"] += sum(t.work for t in self.S_engines.values())
        if self.dist_to_S is not None:
            self._retired["sample"] += self.dist_to_S.work
        self._retire_phase()

    def _retire_phase(self):
        if self.w_engine is not None:
            self._retired["pivot"] += self.w_engine.work
        self._retired["set"] += sum(t.work for t in self.Sprime_engines.values())
        if self.Sprime_dist is not None:
            self._retired["set"] += self.Sprime_dist.work
        self.w = None
        self.w_engine = None
        self.ball = set()
        self.Sprime = []
        self.Sprime_engines = {}
        self.Sprime_dist = None

    def _initialize(self):
        self._retire_all()
        cfg, n = self.cfg, self.n
        self.rng = np.random.default_rng(self._seq.spawn(1)[0])
        size = cfg.sample_size(n)
        self.S = sorted(int(x) for x in self.rng.choice(n, size=size, replace=False))
        self.S_engines = {s: self._tree(s, self._s_dir) for s in self.S}
        self.dist_to_S = set_source(self.graph, self.S, Direction.IN, cfg.cap, cfg.mode)
        tau = cfg.tau
        self.W = {v for v in range(n) if self.dist_to_S.level(v) > tau}
        self.phase = 0
        if self.W:
            self.pick_w()

    def pick_w(self):
        """Start a new phase around a pivot drawn from ``W``."""
        self._retire_phase()
        self.w = pick_pivot(self.W, self.cfg.mode, self.rng)
        self.phase += 1
        self.total_phases += 1
        self.w_engine = self._tree(self.w, Direction.OUT)
        self.ball = self.w_engine.ball(self._r)
        chosen = [v for v in sorted(self.ball) if self.rng.random() < self._p]
        for v in chosen:
            self._admit(v, grow=False)
        if chosen:
            self.Sprime_dist = set_source(self.graph, chosen, Direction.OUT,
                                          self.cfg.cap, self.cfg.mode)

    def _admit(self, v, grow=True):
        self.admissions.append((self.event_index, v, self.w_engine.level(v)))
        self.Sprime.append(v)
        self.Sprime_engines[v] = self._tree(v, self._sprime_dir)
        if grow:
            if self.Sprime_dist is None:
                self.Sprime_dist = set_source(self.graph, [v], Direction.OUT,
                                              self.cfg.cap, self.cfg.mode)
            else:
                self.Sprime_dist.grow(v)

    # -- updates -----------------------------------------------------------
    def apply(self, update: EdgeUpdate):
        """Apply ``update`` to the owned graph and repair every structure."""
        self.graph.apply(update)
        self.event_index += 1
        u, v = update.u, update.v
        if update.kind is UpdateKind.INSERT:
            def op(t):
                return t.insert(u, v)
        else:
            def op(t):
                return t.delete(u, v)
        for s in self.S:
            op(self.S_engines[s])
        tau = self.cfg.tau
        for c in op(self.dist_to_S):
            if c.new > tau:
                self.W.add(c.vertex)
            else:
                self.W.discard(c.vertex)
        joins = []
        if self.w_engine is not None:
            r = self._r
            for c in op(self.w_engine):
                if c.new <= r < c.old:
                    self.ball.add(c.vertex)
                    joins.append(c.vertex)
                elif c.old <= r < c.new:
                    self.ball.discard(c.vertex)
        for s in self.Sprime:
            op(self.Sprime_engines[s])
        if self.Sprime_dist is not None:
            op(self.Sprime_dist)

        if self.cfg.mode is Mode.INCREMENTAL:
            if self.w is not None and self.w not in self.W:
                self._retire_phase()
                if self.W:
                    self.pick_w()
            else:
                for x in joins:
                    if self.rng.random() < self._p:
                        self._admit(x)
        elif self.w is None and self.phase == 0 and self.W:
            self.pick_w()
        self._settle()

    def check_reinit(self):
        """First failed sampling check, or ``None``."""
        if self.w is None:
            return None
        n, cfg = self.n, self.cfg
        if len(self.ball) > cfg.ball_limit(n):
            return ReinitReason.BALL_TOO_BIG
        if len(self.Sprime) > cfg.sprime_limit(n):
            return ReinitReason.SPRIME_TOO_BIG
        far = cfg.delta * cfg.guess
        if self.Sprime_dist is None:
            return ReinitReason.SPRIME_TOO_FAR if self.ball else None
        level = self.Sprime_dist.level
        if any(level(x) > far for x in self.ball):
            return ReinitReason.SPRIME_TOO_FAR
        return None

    def _settle(self):
        attempts = 0
        reason = self.check_reinit()
        while reason is not None:
            if attempts >= self.cfg.max_reinit:
                warnings.warn(f"giving up after {attempts} restarts ({reason.value}); "
                              "estimates stay one-sided but lose the quality bound",
                              RuntimeWarning, stacklevel=3)
                self.exhausted = True
                return
            attempts += 1
            self.reinit_count += 1
            self.reinit_log.append((self.event_index, reason))
            self._initialize()
            reason = self.check_reinit()

    # -- queries -----------------------------------------------------------
    def _sources(self):
        """(vertex, tree) for S, S' and the pivot; trees measure d(., s) or d(s, .)."""
        out = [(s, self.S_engines[s]) for s in self.S]
        out += [(s, self.Sprime_engines[s]) for s in self.Sprime]
        if self.w_engine is not None:
            out.append((self.w, self.w_engine))
        return out

    def query(self):
        p = self.cfg.param
        if p is Param.DIAMETER:
            return self._query_diameter()
        if p is Param.RADIUS:
            return self._query_radius()
        return self._query_ecc()

    def _query_diameter(self):
        best = 0
        for _, t in self._sources():
            value, _ = t.max_estimate()
            if value is not INF and value > best:
                best = value
        return best

    def _query_radius(self):
        best = INF
        for _, t in self._sources():
            value, reached = t.max_estimate()
            if reached and value < best:
                best = value
        if best is INF:
            return INF
        return best / (1 - self.cfg.delta)

    def _query_ecc(self):
        d = self.cfg.delta
        srcs = []
        for _, t in self._sources():
            ecc, _ = t.max_estimate()
            srcs.append((t.levels(), (1 - d) * ecc))
        cap = self.cfg.cap
        est = [0] * self.n
        for v in range(self.n):
            best = 0
            for levels, scaled in srcs:
                x = levels[v]
                if x is INF:
                    # beyond the cap: d(v, s) > cap is certified, the
                    # second term needs the actual distance
                    if cap > best:
                        best = cap
                    continue
                if x > best:
                    best = x
                y = scaled - x / (1 - d)
                if y > best:
                    best = y
            est[v] = best
        return est

    # -- accounting ----------------------------------------------------------
    @property
    def work(self):
        """Cumulative repair work split by engine class."""
        sample = self._retired["sample"] + sum(t.work for t in self.S_engines.values())
        if self.dist_to_S is not None:
            sample += self.dist_to_S.work
        pivot = self._retired["pivot"] + (self.w_engine.work if self.w_engine else 0)
        sset = self._retired["set"] + sum(t.work for t in self.Sprime_engines.values())
        if self.Sprime_dist is not None:
            sset += self.Sprime_dist.work
        return {"sample": sample, "pivot": pivot, "set": sset}
