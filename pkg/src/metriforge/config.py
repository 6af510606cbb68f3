"""Enumeration caps and the error types shared across the package."""

from __future__ import annotations

import os

DEFAULT_MAX_SPACE = 10**6
ENV_MAX_SPACE = "METRIFORGE_MAX_SPACE"


class MetriforgeError(Exception):
    pass


class DomainError(MetriforgeError, ValueError):
    """An input word, code or parameter is outside the declared domain."""


class SpaceTooLarge(MetriforgeError):
    """Raised instead of sampling when an exhaustive search would exceed the cap."""

    def __init__(self, size: int, cap: int, what: str = "space"):
        super().__init__(f"refused: {what} too large ({size} > cap {cap})")
        self.size = size
        self.cap = cap


def max_space(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(ENV_MAX_SPACE)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{ENV_MAX_SPACE} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_SPACE


def check_space(size: int, cap: int | None = None, what: str = "space") -> None:
    limit = max_space(cap)
    if size > limit:
        raise SpaceTooLarge(size, limit, what)
