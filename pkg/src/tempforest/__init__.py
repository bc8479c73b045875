"""Dynamic temporal forests with earliest-arrival, latest-departure and
reachability queries."""
from .errors import NotAPathError, PreconditionError, UnknownVertexError
from .forest import TemporalForest
from .hld import HLDForest
from .latency import LatencyTemporalForest
from .model import NEG_INF, POS_INF, ForestTopology, TemporalLabel
from .path import PathStructure

__all__ = [
    "NEG_INF", "POS_INF", "ForestTopology", "HLDForest", "LatencyTemporalForest",
    "NotAPathError", "PathStructure", "PreconditionError", "TemporalForest", "TemporalLabel",
    "UnknownVertexError",
]
