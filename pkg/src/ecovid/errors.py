"""Exception hierarchy shared by all ecovid modules."""


class EcovidError(Exception):
    """Base class for every error raised by this package."""


class IoError(EcovidError):
    """A required file is missing or unreadable."""


class SchemaError(EcovidError):
    """Input data violates its documented schema.

    Carries the 1-based row (or line) number when one is known.
    """

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class DateOrderError(EcovidError):
    """collected_date precedes upload_date."""


class EmptyCorpusError(EcovidError):
    """An operation that needs at least one record got none."""


class TooSmallError(EcovidError):
    """The corpus is too small for the requested operation."""


class FormatError(EcovidError):
    """A binary payload (e.g. a PPM frame) is malformed."""


class EmptyVideoError(EcovidError):
    """A frames directory holds no decodable frame."""


class ShapeError(EcovidError):
    """Dimension mismatch between paired inputs."""


class EmptyError(EcovidError):
    """A metric was asked to evaluate zero samples."""


class RangeError(EcovidError):
    """A value lies outside its documented range."""


class SingularError(EcovidError):
    """An unregularized linear system is singular."""


class KernelError(EcovidError):
    """A kernel matrix is not numerically positive semi-definite."""


class DivergenceError(EcovidError):
    """Training loss became NaN or infinite."""

    def __init__(self, iteration: int):
        self.iteration = iteration
        super().__init__(f"loss diverged at iteration {iteration}")


class ConfigError(EcovidError):
    """A run configuration is invalid."""


class MissingArtifactError(EcovidError):
    """A pipeline stage needs an output another stage has not produced."""

    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"missing required artifact: {self.path}")
