"""Plane-saturated subgraphs of planar graphs: constructions, checkers and exact search."""

from .audit import AuditReport, compute_bounds, forbidden_config_scan, ratio_floor_check
from .errors import PsrLabError
from .families import decorated_double_wheel, example_1_1, example_1_2, general_family
from .graph import Graph, KProfile, TwinPartition, classify_k, is_planar, twins_partition
from .naive import psr_naive
from .plane import ComponentEmbedding, Inside, PlaneGraph, TopLevel, insert_edge
from .psr import Limits, PsrResult, psr_exact, psr_upper
from .saturation import is_plane_saturated, saturate_greedily
from .search import (
    Embedding,
    Mode,
    SkeletonClassification,
    classify_components,
    find_embedding,
    normalize_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport", "ComponentEmbedding", "Embedding", "Graph", "Inside", "KProfile", "Limits",
    "Mode", "PlaneGraph", "PsrLabError", "PsrResult", "SkeletonClassification", "TopLevel",
    "TwinPartition", "classify_components", "classify_k", "compute_bounds",
    "decorated_double_wheel", "example_1_1", "example_1_2", "find_embedding",
    "forbidden_config_scan", "general_family", "insert_edge", "is_plane_saturated", "is_planar",
    "normalize_embedding", "psr_exact", "psr_naive", "psr_upper", "ratio_floor_check",
    "saturate_greedily", "twins_partition",
]
