"""Small result types shared across the package."""

from dataclasses import dataclass
from typing import Any


class CatlangError(Exception):
    """Base class for every error raised by catlang."""


class SearchBoundExceeded(CatlangError):
    """An exhaustive search was refused because the input is larger than the bound."""

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: size {size} exceeds bound {bound}")


@dataclass(frozen=True)
class Check:
    """Outcome of a yes/no check; falsy on failure, with a witness either way."""

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class NotFound:
    """A search that ran to completion without finding anything."""

    reason: str
    witness: Any = None

    def __bool__(self):
        return False
