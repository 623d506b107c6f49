"""Guess grid: turns fixed-guess estimators into unconditional ones.

A fixed-guess estimator for a maximisation parameter (diameter,
eccentricities) promises ``P_hat <= P`` always and
``P_hat >= a (1 - e) g - b`` whenever its guess ``g <= P``.  Running it on
an integer ladder of guesses whose consecutive values differ by a factor
of at most ``1/(1 - e)`` and taking the maximum gives
``a (1 - 2e') P - b <= P_hat <= P``.  Minimisation (radius) is symmetric
with ``min`` and ``(1 + e)(a g + b)``.

The ladder starts from a static constant-factor bracket and is extended up
or down whenever a boundary cell can no longer certify that the true value
lies inside the covered range.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import EpsOutOfRange, IncompatibleSpec, InfiniteParameter
from .graph import INF, DynamicGraph, EdgeUpdate, Mode, Param
from .oracle import Bootstrap, static_bootstrap


class Combine(str, enum.Enum):
    MAX = "max"
    MIN = "min"


# (alpha, beta) of the per-cell guarantee, per algorithm family and parameter
GUARANTEES = {
    ("rand", Param.DIAMETER): (2 / 3, 2 / 3),
    ("rand", Param.ECCENTRICITIES): (3 / 5, 1.0),
    ("rand", Param.RADIUS): (3 / 2, 1 / 2),
    ("det", Param.DIAMETER): (1.0, 0.0),
    ("det", Param.ECCENTRICITIES): (1.0, 0.0),
    ("det", Param.RADIUS): (1.0, 0.0),
}


def combine_for(param) -> Combine:
    return Combine.MIN if Param(param) is Param.RADIUS else Combine.MAX


def cell_eps(eps, param) -> float:
    """Per-cell accuracy: half (max) or a third (min) of the target."""
    return eps / 3 if combine_for(param) is Combine.MIN else eps / 2


def ladder(lo, hi, eps_cell):
    """Integer guesses from ``lo`` up to the first value ``>= hi``.

    Each step is ``max(g + 1, floor(g / (1 - eps_cell)))`` so consecutive
    guesses satisfy ``g_j >= (1 - eps_cell) g_{j+1}``.
    """
    lo = max(1, int(lo))
    out = [lo]
    while out[-1] < hi:
        g = out[-1]
        out.append(max(g + 1, math.floor(g / (1 - eps_cell))))
    return out


def step_up(g, eps_cell):
    return max(g + 1, math.floor(g / (1 - eps_cell)))


def step_down(g, eps_cell):
    return max(1, min(g - 1, math.ceil(g * (1 - eps_cell))))


def bounds(param, alg, eps, value):
    """Guaranteed bracket ``(lower, upper)`` on the combined estimate."""
    a, b = GUARANTEES[(alg, Param(param))]
    if value is INF:
        return (None, None)
    if combine_for(param) is Combine.MAX:
        return (a * (1 - eps) * value - b, value)
    return (value, (1 + eps) * (a * value + b))


@dataclass
class GridCell:
    guess: int
    estimator: object


class GridState:
    """Ladder of fixed-guess estimators over private graph copies.

    ``factory(graph, guess, eps_cell)`` builds one cell estimator.  The grid
    keeps its own master copy of the graph for late cell creation.
    """

    def __init__(self, graph: DynamicGraph, param, eps, factory, alg="rand",
                 bootstrap=None):
        self.param = Param(param)
        self.alg = alg
        self.eps = eps
        self.eps_cell = cell_eps(eps, self.param)
        self.combine = combine_for(self.param)
        self.alpha, self.beta = GUARANTEES[(alg, self.param)]
        self.factory = factory
        self.graph = graph.copy()
        self.n = graph.n
        self.bootstrap = bootstrap or _bootstrap(self.graph, self.param)
        lo, hi = self.bootstrap.lo, self.bootstrap.hi
        lo, hi = max(1, lo), max(1, hi)
        self.cells = [self._make(g) for g in ladder(lo, hi, self.eps_cell)]
        self.initial_cells = len(self.cells)
        self.event_index = 0
        self.extensions = []  # (event_index, guess, "up" | "down")
        self.q_min = self.q_max = None
        self._extend()

    def _make(self, guess):
        return GridCell(guess, self.factory(self.graph.copy(), guess, self.eps_cell))

    @property
    def guesses(self):
        return [c.guess for c in self.cells]

    @property
    def cells_created(self):
        return self.initial_cells + len(self.extensions)

    # -- updates -----------------------------------------------------------
    def apply(self, update: EdgeUpdate):
        self.graph.apply(update)
        self.event_index += 1
        for c in self.cells:
            c.estimator.apply(update)
        self._extend()

    def _extend(self):
        if self.combine is Combine.MAX:
            self._extend_max()
        else:
            self._extend_min()
        values = _flatten(self.query())
        finite = [v for v in values if v is not INF]
        if finite:
            lo, hi = min(finite), max(finite)
            self.q_min = lo if self.q_min is None else min(self.q_min, lo)
            self.q_max = hi if self.q_max is None else max(self.q_max, hi)

    def _extend_max(self):
        a, b, e = self.alpha, self.beta, self.eps_cell
        top_limit = max(1, self.n - 1)
        # up: the top cell certifies g_top > P for every parameter when all
        # of its estimates fall below its own promised floor
        while self.cells[-1].guess < top_limit:
            top = self.cells[-1]
            est = _flatten(top.estimator.query())
            if max(est) < a * (1 - e) * top.guess - b:
                break
            self._add(step_up(top.guess, e), "up")
        # down: the bottom guess must not exceed any true value
        while self.cells[0].guess > 1:
            est = _flatten(self.query())
            if min(est) >= self.cells[0].guess:
                break
            self._add(step_down(self.cells[0].guess, e), "down")

    def _extend_min(self):
        a, b, e = self.alpha, self.beta, self.eps_cell
        top_limit = max(1, self.n - 1)
        # up: the top guess must reach the true value, and R <= R_hat
        while self.cells[-1].guess < top_limit:
            est = _flatten(self.query())
            if self.cells[-1].guess >= min(est):
                break
            self._add(step_up(self.cells[-1].guess, e), "up")
        # down: the bottom cell certifies g_bottom < R when its estimate
        # breaks its own promised ceiling
        while self.cells[0].guess > 1:
            bottom = self.cells[0]
            est = _flatten(bottom.estimator.query())
            if min(est) > (1 + e) * (a * bottom.guess + b):
                break
            self._add(step_down(bottom.guess, e), "down")

    def _add(self, guess, where):
        cell = self._make(guess)
        if where == "up":
            self.cells.append(cell)
        else:
            self.cells.insert(0, cell)
        self.extensions.append((self.event_index, guess, where))

    # -- queries -----------------------------------------------------------
    def cell_estimates(self):
        return [c.estimator.query() for c in self.cells]

    def query(self):
        ests = self.cell_estimates()
        pick = max if self.combine is Combine.MAX else min
        if self.param is Param.ECCENTRICITIES:
            return [pick(col) for col in zip(*ests)]
        return pick(ests)

    # -- accounting ----------------------------------------------------------
    @property
    def reinit_count(self):
        return sum(getattr(c.estimator, "reinit_count", 0) for c in self.cells)

    @property
    def phase(self):
        return max((getattr(c.estimator, "phase", 0) for c in self.cells), default=0)

    @property
    def work(self):
        total = {}
        for c in self.cells:
            for k, v in c.estimator.work.items():
                total[k] = total.get(k, 0) + v
        return total


def _bootstrap(g, param):
    try:
        return static_bootstrap(g, param)
    except InfiniteParameter:
        # disconnected start (e.g. an incremental build-up): trivial bracket
        return Bootstrap(param, None, 1, max(1, g.n - 1))


def _flatten(x):
    return x if isinstance(x, list) else [x]


def rand_factory(param, mode, seed=0, **kw):
    from .randomized import RandConfig, RandomizedEstimator

    def make(graph, guess, eps_cell):
        return RandomizedEstimator(graph, RandConfig(param, guess, eps_cell, mode,
                                                     seed=seed, **kw))
    return make


def det_factory(param):
    from .deterministic import DeterministicEstimator

    def make(graph, guess, eps_cell):
        return DeterministicEstimator(graph, param, guess, eps_cell)
    return make


def grid_init(graph, param, eps, mode, seed=0, alg="rand", **kw) -> GridState:
    """Grid over ``graph`` (copied) for ``alg`` in ``{"rand", "det"}``."""
    param, mode = Param(param), Mode(mode)
    if not eps > 0:
        raise EpsOutOfRange("eps must be positive")
    if alg == "rand":
        if mode is Mode.FULLY_DYNAMIC:
            raise IncompatibleSpec("randomized estimators need a partially dynamic stream")
        if param is not Param.DIAMETER and graph.directed:
            raise IncompatibleSpec(f"randomized {param.value} needs an undirected graph")
        factory = rand_factory(param, mode, seed, **kw)
    elif alg == "det":
        if mode is not Mode.INCREMENTAL:
            raise IncompatibleSpec("deterministic estimators are incremental only")
        factory = det_factory(param)
    else:
        raise IncompatibleSpec(f"unknown algorithm {alg!r}")
    return GridState(graph, param, eps, factory, alg=alg)


def grid_apply(state: GridState, update: EdgeUpdate):
    state.apply(update)


def grid_query(state: GridState):
    return state.query()
