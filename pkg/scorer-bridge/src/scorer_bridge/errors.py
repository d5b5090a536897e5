"""Failure taxonomy mapped to process exit codes."""

from __future__ import annotations

__all__ = ["BridgeError", "ModelError", "InputError"]


class BridgeError(Exception):
    """Base class for deliberate failures."""

    exit_code = 1


class ModelError(BridgeError):
    """The classifier could not be loaded or applied."""

    exit_code = 2


class InputError(BridgeError):
    """The transcript file violates the interchange schema."""

    exit_code = 3

    def __init__(self, message: str, *, path: str | None = None,
                 line: int | None = None) -> None:
        loc = ""
        if path is not None:
            loc = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(loc + message)
        self.path = path
        self.line = line
