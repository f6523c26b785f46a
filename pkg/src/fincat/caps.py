"""Size caps guarding exhaustive constructions.

Caps live in a context variable so they can be overridden for one call tree
(``with size_caps(functors=...)``) without threading a parameter everywhere.
"""
from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace

from .errors import SizeLimitExceeded


@dataclass(frozen=True)
class SizeCaps:
    functors: int = 10_000
    morphisms: int = 100_000


_CAPS: contextvars.ContextVar[SizeCaps] = contextvars.ContextVar("fincat_caps", default=SizeCaps())


def current_caps() -> SizeCaps:
    return _CAPS.get()


@contextlib.contextmanager
def size_caps(**overrides):
    token = _CAPS.set(replace(_CAPS.get(), **overrides))
    try:
        yield _CAPS.get()
    finally:
        _CAPS.reset(token)


def caps_from_env(env=None) -> SizeCaps:
    """Parse ``FINCAT_SIZE_CAP``: either ``N`` (functor cap) or
    ``functors=N,morphisms=M``."""
    env = os.environ if env is None else env
    raw = env.get("FINCAT_SIZE_CAP", "").strip()
    if not raw:
        return SizeCaps()
    if raw.isdigit():
        return SizeCaps(functors=int(raw))
    fields = {}
    for part in raw.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in ("functors", "morphisms") or not value.strip().isdigit():
            raise ValueError(f"bad FINCAT_SIZE_CAP entry: {part!r}")
        fields[key] = int(value)
    return SizeCaps(**fields)


def check_functor_count(count: int):
    limit = current_caps().functors
    if count > limit:
        raise SizeLimitExceeded("functor count", limit)


def check_morphism_count(count: int):
    limit = current_caps().morphisms
    if count > limit:
        raise SizeLimitExceeded("morphism count", limit)
