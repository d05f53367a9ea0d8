"""Supports and bases by name, as exposed on the command line."""

from __future__ import annotations

from typing import Callable

from .automaton import BASES, BaseFun
from .classic import antimirov, brzozowski, dissimilar
from .clausal import clausal
from .support import SupportInstance

SUPPORTS: dict[str, Callable[..., SupportInstance]] = {
    "brzozowski": brzozowski,
    "dissimilar": dissimilar,
    "antimirov": antimirov,
    "clausal": clausal,
}

_CACHE: dict[tuple[str, bool], SupportInstance] = {}


def get_support(name: str, simplify: bool = True) -> SupportInstance:
    """Shared instance per (name, flag), so derivative memo tables are reused."""
    key = (name, simplify)
    if key not in _CACHE:
        try:
            factory = SUPPORTS[name]
        except KeyError:
            raise ValueError(f"unknown support {name!r}; choose from {', '.join(SUPPORTS)}") from None
        _CACHE[key] = factory(simplify=simplify)
    return _CACHE[key]


def get_base(name: str) -> BaseFun:
    try:
        return BASES[name]
    except KeyError:
        raise ValueError(f"unknown base {name!r}; choose from {', '.join(BASES)}") from None
