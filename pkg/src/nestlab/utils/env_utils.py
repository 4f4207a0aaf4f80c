import os
from typing import Optional


def _parse_env_bool(key: str, default: bool = True) -> bool:
    """Parse environment variable as a boolean."""
    val = os.getenv(key)
    if val is None:
        return default

    val = val.strip().lower()
    if val in {"true", "1", "yes", "on"}:
        return True
    if val in {"false", "0", "no", "off"}:
        return False

    raise ValueError(f"Invalid boolean value for {key}: {val}")


def _parse_env_int(key: str, default: Optional[int] = None) -> Optional[int]:
    """Parse environment variable as a non-negative integer."""
    val = os.getenv(key)
    if val is None or not val.strip():
        return default
    try:
        parsed = int(val.strip(), 0)
    except ValueError as exc:
        raise ValueError(f"Invalid integer value for {key}: {val}") from exc
    if parsed < 0:
        raise ValueError(f"{key} must be non-negative, got {parsed}")
    return parsed
