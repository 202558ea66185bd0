"""Runtime limits shared by the CLI and the service."""

import os

DEFAULT_MAX_DEGREE = 1 << 14
MAX_DEGREE_ENV = "CESARO_MAX_DEGREE"


def max_degree() -> int:
    """Series-degree cap for requests; override with CESARO_MAX_DEGREE."""
    raw = os.environ.get(MAX_DEGREE_ENV)
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_DEGREE_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{MAX_DEGREE_ENV} must be a positive integer, got {raw!r}")
    return value
