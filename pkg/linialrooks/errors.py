"""
Engine exceptions. Each one carries the CommandStatus the CLI reports for it.
"""

from linialrooks.models.schemas import CommandStatus


class EngineError(Exception):
    status: CommandStatus = CommandStatus.VERIFICATION_FAILED

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidInputError(EngineError, ValueError):
    status = CommandStatus.INVALID_INPUT


class InvalidShapeError(InvalidInputError):
    pass


class NotInvertibleError(InvalidInputError):
    pass


class UnsupportedArrangementError(InvalidInputError):
    pass


class ResourceLimitError(EngineError):
    status = CommandStatus.RESOURCE_LIMIT

    def __init__(self, what: str, requested: int, cap: int):
        super().__init__(f"{what}: {requested} exceeds the configured cap {cap}")
        self.requested = requested
        self.cap = cap


class VerificationError(EngineError):
    status = CommandStatus.VERIFICATION_FAILED

    def __init__(self, detail: str, first_mismatch: int | None = None):
        super().__init__(detail)
        self.first_mismatch = first_mismatch


class IntegrityError(VerificationError):
    """Internal consistency failure (e.g. a non-integer interpolant)."""


def check_cap(what: str, requested: int, cap: int) -> None:
    if requested > cap:
        raise ResourceLimitError(what, requested, cap)
