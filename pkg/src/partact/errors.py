from __future__ import annotations


class PartialActionError(Exception):
    """Base class for every error raised by partact."""


class InvalidOrderError(PartialActionError, ValueError):
    pass


class NotAGroupError(PartialActionError, ValueError):
    pass


class LayoutError(PartialActionError, ValueError):
    """The identity of a Cayley table is not at index 0."""


class BoundsError(PartialActionError, IndexError):
    pass


class ArgumentError(PartialActionError, ValueError):
    pass


class InvalidGlobalActionError(PartialActionError, ValueError):
    pass


class TheoremViolation(PartialActionError, AssertionError):
    """An identity that must hold for valid input did not.

    Never expected on validated input; it points at a bug upstream. ``witness``
    carries the offending data.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class SizeCapExceeded(PartialActionError, MemoryError):
    pass


class SpecError(PartialActionError, ValueError):
    """Malformed input document. ``pointer`` is a JSON pointer to the fault."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class UnresolvedLabelError(SpecError):
    def __init__(self, label: str, pointer: str = ""):
        super().__init__(f"unresolved label {label!r}", pointer)
        self.label = label
