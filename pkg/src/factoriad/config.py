"""Size guards for the exhaustive searches.

``FACTORIAD_SIZE_GUARD`` overrides the defaults.  A bare integer sets the
cube guard (the bound on base categories for anything touching the third
iterate); ``cube=12,fs=10,strict_fs=12,algebras=6`` sets guards by key.
"""

from __future__ import annotations

import os

from .errors import SizeGuardError

DEFAULTS = {
    "cube": 12,
    "fs": 10,
    "strict_fs": 12,
    "algebras": 6,
}

_overrides: dict[str, int] = {}


def _parse_env(value: str) -> dict[str, int]:
    value = value.strip()
    if not value:
        return {}
    if value.isdigit():
        return {"cube": int(value)}
    out = {}
    for item in value.split(","):
        key, _, num = item.partition("=")
        key = key.strip()
        if key not in DEFAULTS or not num.strip().isdigit():
            raise ValueError(f"bad FACTORIAD_SIZE_GUARD entry {item!r}")
        out[key] = int(num)
    return out


def guard(kind: str) -> int:
    if kind in _overrides:
        return _overrides[kind]
    env = _parse_env(os.environ.get("FACTORIAD_SIZE_GUARD", ""))
    return env.get(kind, DEFAULTS[kind])


def set_guard(kind: str, value: int | None) -> None:
    """Set (or with ``None`` clear) a process-wide override."""
    if kind not in DEFAULTS:
        raise KeyError(kind)
    if value is None:
        _overrides.pop(kind, None)
    else:
        _overrides[kind] = int(value)


def require(kind: str, size: int, what: str) -> None:
    limit = guard(kind)
    if size > limit:
        raise SizeGuardError(
            f"{what}: {size} morphisms exceeds the {kind!r} size guard ({limit}); "
            f"raise it with FACTORIAD_SIZE_GUARD or --size-guard"
        )
