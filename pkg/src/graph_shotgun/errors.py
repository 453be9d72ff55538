"""Exception types shared across the package."""


class ShotgunError(Exception):
    """Base class for all package errors."""


class ParameterError(ShotgunError, ValueError):
    """Invalid argument or configuration."""


class ResourceError(ShotgunError):
    """An input exceeds a configured size bound."""


class AmbiguityError(ShotgunError):
    """Two vertices share a degree neighborhood, so no canonical order exists."""

    def __init__(self, u: int, v: int):
        super().__init__(f"vertices {u} and {v} share a degree neighborhood")
        self.pair = (u, v)


class AmbiguousCenter(ShotgunError):
    """More than one vertex qualifies as the center of a view."""

    def __init__(self, candidates):
        self.candidates = tuple(candidates)
        super().__init__(f"{len(self.candidates)} center candidates: {self.candidates[:8]}")


class NoCenter(ShotgunError):
    """No vertex qualifies as the center of a view."""


class ParseError(ShotgunError, ValueError):
    """Malformed input file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(ShotgunError):
    """A soundness invariant failed; results cannot be trusted."""
