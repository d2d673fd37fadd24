"""Enumeration caps and precision defaults."""

import os

DEFAULT_CAP = 10_000_000
DEFAULT_BITS = 128
RENDER_CAP = 10_000


def resolve_cap(explicit: int | None = None) -> int:
    """Effective enumeration cap: explicit value, else METALLIC_CAP, else the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get("METALLIC_CAP")
    if env is not None:
        return int(env)
    return DEFAULT_CAP
