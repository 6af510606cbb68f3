"""metriforge: alternative metrics for coding theory under one interface."""

from __future__ import annotations

from .config import DomainError, MetriforgeError, SpaceTooLarge
from .core import (
    BlockCode,
    Channel,
    Metric,
    binary_asymmetric,
    bsc,
    check_metric_axioms,
    check_weight_properties,
    dual_code,
    hamming,
    is_matched,
    lee,
    minimum_distance,
    packing_radius,
    sphere_packing_check,
    weight_enumerator,
)
from .fields import Alphabet
from .registry import build_metric, load_metric

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BlockCode",
    "Channel",
    "DomainError",
    "Metric",
    "MetriforgeError",
    "SpaceTooLarge",
    "binary_asymmetric",
    "bsc",
    "build_metric",
    "check_metric_axioms",
    "check_weight_properties",
    "dual_code",
    "hamming",
    "is_matched",
    "lee",
    "load_metric",
    "minimum_distance",
    "packing_radius",
    "sphere_packing_check",
    "weight_enumerator",
]
