"""Runtime caps.

Defaults can be overridden with the environment variables
``WEYLCYC_DEGREE_CAP``, ``WEYLCYC_EXPANSION_CAP``, ``WEYLCYC_CHAMBER_CAP`` and
``WEYLCYC_SERIES_CAP``, or temporarily with :func:`caps`.
"""

import os
from contextlib import contextmanager
from dataclasses import dataclass


@dataclass
class Caps:
    degree: int = 16
    expansion: int = 2_000_000
    chambers: int = 8
    series: int = 8


def _from_env():
    c = Caps()
    for field, var in (("degree", "WEYLCYC_DEGREE_CAP"),
                       ("expansion", "WEYLCYC_EXPANSION_CAP"),
                       ("chambers", "WEYLCYC_CHAMBER_CAP"),
                       ("series", "WEYLCYC_SERIES_CAP")):
        raw = os.environ.get(var)
        if raw:
            value = int(raw)
            if value <= 0:
                raise ValueError(f"{var} must be positive, got {value}")
            setattr(c, field, value)
    return c


CAPS = _from_env()


@contextmanager
def caps(**overrides):
    """Temporarily override caps, e.g. ``with caps(degree=8): ...``."""
    old = {k: getattr(CAPS, k) for k in overrides}
    for k, v in overrides.items():
        if v is None:
            continue
        if v <= 0:
            raise ValueError(f"cap {k} must be positive")
        setattr(CAPS, k, v)
    try:
        yield CAPS
    finally:
        for k, v in old.items():
            setattr(CAPS, k, v)
