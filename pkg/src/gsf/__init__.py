"""Good subsemigroups of N^d: validation, metrics, track calculus, enumeration."""
from gsf.core import (
    INF,
    DeltaSets,
    GoodSemigroup,
    ValidationError,
    delta_empty,
    delta_sets,
    finite_maximals,
    format_point,
    infinite_maximals,
    infinity_projection,
    membership,
    parse_points,
    parse_semigroup,
    read_semigroup,
    to_json,
    to_text,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "DeltaSets",
    "GoodSemigroup",
    "ValidationError",
    "delta_empty",
    "delta_sets",
    "finite_maximals",
    "format_point",
    "infinite_maximals",
    "infinity_projection",
    "membership",
    "parse_points",
    "parse_semigroup",
    "read_semigroup",
    "to_json",
    "to_text",
    "validate",
    "__version__",
]
