import os
from dataclasses import dataclass
from typing import Optional

from services.errors import DegreeTooLarge, SkeinError, TooManyCrossings, TooManyNodes

MAX_CROSSINGS = int(os.getenv("SKEINLAB_MAX_CROSSINGS", "20"))
KHOVANOV_MAX_CROSSINGS = int(os.getenv("SKEINLAB_KHOVANOV_MAX_CROSSINGS", "12"))
MAX_NODES = int(os.getenv("SKEINLAB_MAX_NODES", "12"))
MAX_CHORD_DEGREE = int(os.getenv("SKEINLAB_MAX_CHORD_DEGREE", "6"))

_DEFAULTS = {
    "crossings": MAX_CROSSINGS,
    "khovanov": KHOVANOV_MAX_CROSSINGS,
    "nodes": MAX_NODES,
    "degree": MAX_CHORD_DEGREE,
}

_ERRORS = {
    "crossings": TooManyCrossings,
    "khovanov": TooManyCrossings,
    "nodes": TooManyNodes,
    "degree": DegreeTooLarge,
}


@dataclass
class CapStatus:
    name: str
    allowed: bool
    reason: str
    size: int
    limit: int


def check_cap(name: str, size: int, limit: Optional[int] = None) -> CapStatus:
    if name not in _DEFAULTS:
        raise KeyError(f"unknown cap {name!r}")
    limit = _DEFAULTS[name] if limit is None else limit
    if limit <= 0:
        raise SkeinError(f"cap {name} must be positive, got {limit}")
    allowed = size <= limit
    return CapStatus(name, allowed, "OK" if allowed else _ERRORS[name].code, size, limit)


def enforce_cap(name: str, size: int, limit: Optional[int] = None) -> CapStatus:
    status = check_cap(name, size, limit)
    if not status.allowed:
        raise _ERRORS[name](f"{name} size {size} exceeds cap {status.limit}")
    return status
