"""Exception hierarchy shared across the package.

Every error raised on purpose derives from :class:`QemcError`, so callers can
catch one base class.  Config/precondition violations and runtime failures are
kept as distinct subtrees because the CLI maps them to different exit codes.
"""


class QemcError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(QemcError):
    """A precondition or configuration value is invalid."""


class RuntimeFailure(QemcError):
    """An operation failed at runtime despite valid configuration."""


# -- graphs -------------------------------------------------------------------

class InvalidDegree(ConfigError):
    """Regular-graph degree violates parity (N*d even) or bound (d < N)."""


class GenerationFailed(RuntimeFailure):
    """Random graph generation exhausted its retry budget."""


class SizeMismatch(ConfigError):
    """A partition's length does not match the graph's node count."""


class TooLarge(ConfigError):
    """Exhaustive search was asked to enumerate beyond its node cap."""


class InvalidBlueCount(ConfigError):
    """Requested blue-node count is outside its legal range."""


class ParseError(RuntimeFailure):
    """Edge-list text could not be parsed.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class SelfLoop(ParseError):
    """An edge connects a node to itself."""


class DuplicateEdge(ParseError):
    """The same undirected edge appears more than once."""


# -- simulator ----------------------------------------------------------------

class ShapeMismatch(ConfigError):
    """Parameter vector or ansatz shape is inconsistent with its target."""


# -- qemc core ----------------------------------------------------------------

class HistogramTooShort(ConfigError):
    """Probability histogram has fewer entries than the graph has nodes."""


class DegenerateDenominator(ConfigError):
    """A cut-ratio denominator vanishes (cut_star <= 0 or M == 2*cut_star)."""
