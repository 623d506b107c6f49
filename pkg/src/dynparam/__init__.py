"""Dynamic approximation of diameter, radius and eccentricities."""
from .deterministic import DeterministicEstimator, select_centers, top_scc
from .errors import DynParamError
from .graph import INF, Direction, DynamicGraph, EdgeUpdate, Mode, Param, bfs_truncated
from .grid import GridState, bounds, grid_apply, grid_init, grid_query
from .oracle import OracleResult, oracle, static_bootstrap
from .randomized import RandConfig, RandomizedEstimator
from .sssp import EsTree, set_source
from .stream import QueryMark, StageMark, UpdateStream, format_stream, parse_stream

__version__ = "0.1.0"

__all__ = ["INF", "Direction", "DynamicGraph", "EdgeUpdate", "Mode", "Param", "bfs_truncated",
           "EsTree", "set_source", "oracle", "OracleResult", "static_bootstrap",
           "RandConfig", "RandomizedEstimator", "DeterministicEstimator", "select_centers",
           "top_scc", "GridState", "grid_init", "grid_apply", "grid_query", "bounds",
           "UpdateStream", "QueryMark", "StageMark", "parse_stream", "format_stream",
           "DynParamError"]
