"""Exception hierarchy shared across the package."""


class PFusionError(Exception):
    """Base class for all library errors."""


class ParentMismatchError(PFusionError):
    """Operands live in different ambient groups."""


class GroupInvariantError(PFusionError):
    """A group law or a guaranteed postcondition failed."""


class PreconditionError(PFusionError):
    """An operation was called outside its stated domain."""


class CapExceededError(PFusionError):
    """A configured enumeration cap was hit.

    Carries the cap name and value so callers (and the CLI exit code
    logic) can report which limit to raise.
    """

    def __init__(self, cap_name: str, cap_value, detail: str = ""):
        self.cap_name = cap_name
        self.cap_value = cap_value
        msg = f"cap exceeded: {cap_name}={cap_value}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class ExprParseError(PFusionError):
    """A group expression or group file could not be parsed."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
