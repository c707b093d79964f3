"""Enumeration caps and their environment overrides.

The exhaustive oracles are the point of this package, but only at desk
scale; above the caps they raise :class:`~bandedtp.errors.CapacityError`
rather than silently degrading.
"""

from __future__ import annotations

import os

DEFAULT_ORACLE_CAP = 8
DEFAULT_SPECTRAL_CAP = 16
DEFAULT_PRECISION_BITS = 256
DEFAULT_OSCILLATORY_POWER_CAP = 8

ORACLE_CAP_ENV = "BANDEDTP_ORACLE_CAP"
SPECTRAL_CAP_ENV = "BANDEDTP_SPECTRAL_CAP"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def oracle_cap() -> int:
    return _env_int(ORACLE_CAP_ENV, DEFAULT_ORACLE_CAP)


def spectral_cap() -> int:
    return _env_int(SPECTRAL_CAP_ENV, DEFAULT_SPECTRAL_CAP)
