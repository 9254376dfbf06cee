# aerolos/blockage_engine/errors.py

from pydantic import ValidationError


class AerolosError(Exception):
    """Base class for every error raised by aerolos. `exit_code` is what the CLI returns."""
    exit_code: int = 2


class EmptyDiskError(AerolosError, ValueError):
    """The AAP is too high for its range: H_a - H_u >= R_max leaves no efficient coverage disk."""


class DegenerateObstacleError(AerolosError):
    """The building segment contains the AAP's ground projection o."""


class PreconditionError(AerolosError, ValueError):
    """An operation was called outside its domain (e.g. a gain term with H_a <= H_b)."""


class QuadratureNonConvergenceError(AerolosError):
    """Adaptive quadrature ran out of subdivisions before meeting its tolerance."""
    exit_code = 3


class ConfigParseError(AerolosError):
    """A scenario file line could not be parsed."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ConfigValidationError(AerolosError):
    """Parsed values violate a scenario invariant."""

    @classmethod
    def from_validation(cls, exc: ValidationError) -> "ConfigValidationError":
        return cls(describe_error(exc))


def describe_error(exc: Exception) -> str:
    """One-line description, naming the offending field for pydantic errors."""
    if isinstance(exc, ValidationError):
        parts = []
        for error in exc.errors():
            location = ".".join(str(part) for part in error["loc"])
            parts.append(f"{location}: {error['msg']}" if location else error["msg"])
        return "; ".join(parts)
    return " ".join(str(exc).split())
