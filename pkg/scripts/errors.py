"""Exception hierarchy shared by every subpackage.

Library code raises these; only the CLI layer catches them and maps them to exit codes.
"""


class OamSpdcError(Exception):
    """Base class for all errors raised by this project."""


class ConfigError(OamSpdcError):
    """Malformed or invalid run configuration."""

    def __init__(self, message: str, source: str = None, line: int = None, key: str = None):
        self.source = source
        self.line = line
        self.key = key
        context = []
        if source:
            context.append(str(source))
        if line is not None:
            context.append(f"line {line}")
        if key:
            context.append(f"key '{key}'")
        prefix = f"[{', '.join(context)}] " if context else ""
        super().__init__(f"{prefix}{message}")


class PhysicsError(OamSpdcError):
    """A physically or numerically invalid request."""


class DomainError(PhysicsError, ValueError):
    pass


class UnsupportedOrderError(PhysicsError, ValueError):
    pass


class AliasingError(PhysicsError):
    pass


class DispersionRangeError(PhysicsError, ValueError):
    pass


class UnphasematchableError(PhysicsError):
    pass


class DegeneratePumpError(PhysicsError, ValueError):
    pass


class DegenerateSpectrumError(PhysicsError):
    pass


class WindowOverflowError(PhysicsError, ValueError):
    pass


class WindowMismatchError(PhysicsError, ValueError):
    pass


class UndefinedRSquaredError(PhysicsError):
    pass


class ObjectiveDomainError(PhysicsError):
    """The optimizer objective returned a non-finite value."""

    def __init__(self, message: str, point=None):
        self.point = point
        super().__init__(message if point is None else f"{message} at point {list(point)}")
