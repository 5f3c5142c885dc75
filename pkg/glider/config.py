"""
Configuration for the glider toolkit
Module-level defaults with GLIDER_* environment overrides
"""

import os
import re
from typing import Any, Dict, Tuple

from sympy import Rational


# ============================================================================
# Configuration
# ============================================================================

GLIDER_CONFIG: Dict[str, Any] = {
    "degree_bound": 6,  # Containment spot checks in verify_glider
    "witness_degree_bound": 8,  # Subfragment witness searches
    "seed": 1729,  # Every random draw is seeded
    "exhaustive_limit": 10**6,  # Largest coefficient grid enumerated exhaustively
    "sample_size": 100_000,  # Random coefficient vectors when the grid is too large
    "default_coefficients": (-1, 0, 1),
    "sample_coefficients": (-2, -1, 0, 1, 2),
    "jobs": 1,
    "normal_form_cache_size": 200_000,  # PBW normal forms memoized per algebra before the memo is dropped
    "log_level": "WARNING",
}

ENV_PREFIX = "GLIDER_"

_RATIONAL_TOKEN = re.compile(r"[+-]?\d+(/0*[1-9]\d*)?")


def _coerce(raw: str, default: Any) -> Any:
    if isinstance(default, bool):
        return raw.strip().lower() in {"1", "true", "yes", "on"}
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, tuple):
        return parse_coefficients(raw)
    return raw


def parse_coefficients(raw: str) -> Tuple[Rational, ...]:
    """
    Parse a comma separated coefficient list such as "-1,0,1" or "-1/2,1/2"

    Args:
        raw: Comma separated integers or fractions a/b

    Returns:
        Tuple of distinct Rationals in input order

    Raises:
        ValueError: a token is not an integer or a fraction
    """
    values = []
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        if not _RATIONAL_TOKEN.fullmatch(token):
            raise ValueError(f"not a rational coefficient: {token!r}")
        value = Rational(token)
        if value not in values:
            values.append(value)
    if not values:
        raise ValueError(f"empty coefficient list: {raw!r}")
    return tuple(values)


def get_config(**overrides: Any) -> Dict[str, Any]:
    """
    Resolve the effective configuration

    Precedence: explicit overrides (CLI flags), then GLIDER_<KEY> environment
    variables, then GLIDER_CONFIG defaults. Overrides equal to None are ignored.
    """
    config = dict(GLIDER_CONFIG)
    for key, default in GLIDER_CONFIG.items():
        raw = os.environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            config[key] = _coerce(raw, default)
    for key, value in overrides.items():
        if key not in GLIDER_CONFIG:
            raise KeyError(f"unknown configuration key: {key}")
        if value is not None:
            config[key] = value
    return config
