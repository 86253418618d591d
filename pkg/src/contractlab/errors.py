"""Error taxonomy shared by every module and surfaced through the CLI."""

from __future__ import annotations


class UsageError(ValueError):
    """An argument or input violates a documented precondition."""


class InputError(UsageError):
    """A serialized input file is malformed; message carries a location hint."""

    def __init__(self, source: str, detail: str):
        self.source = source
        self.detail = detail
        super().__init__(f"{source}: {detail}")


class ResourceGuardError(RuntimeError):
    """A computation was refused because it would exceed a size guard."""
