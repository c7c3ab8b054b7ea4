"""Local dynamical invariants of analytic self-maps over p-adic fields."""

from _padld import (
    Germ,
    PadldError,
    certify_isolation,
    classify_multiplier,
    count_roots,
    iterate,
    mixed_volume,
    newton_polygon,
    oracle_periodic_points,
    orbit_valuations,
    rabinoff_count,
    separate,
    v_lambda_k,
    vp,
)

__all__ = [
    "Germ",
    "PadldError",
    "certify_isolation",
    "classify_multiplier",
    "count_roots",
    "iterate",
    "mixed_volume",
    "newton_polygon",
    "oracle_periodic_points",
    "orbit_valuations",
    "rabinoff_count",
    "separate",
    "v_lambda_k",
    "vp",
]
