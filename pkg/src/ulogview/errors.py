"""Typed errors shared across the package.

Every failure the engine can produce is one of these; callers (CLI, HTTP
service) map them to exit codes / status codes without string matching.
"""


class FlightLogError(Exception):
    """Base class for all errors raised by this package."""


class MalformedHeader(FlightLogError):
    """File does not start with a valid ULog header, or declares flags we
    cannot honor."""


class TruncatedBody(FlightLogError):
    """Mid-record EOF in strict mode. Non-strict parsing salvages decoded
    records and sets FlightLog.truncated instead of raising this."""


class SchemaViolation(FlightLogError):
    """A data record's length does not match its declared message layout,
    or a format definition is internally inconsistent."""


class UnknownAttribute(FlightLogError):
    """An attribute reference does not resolve to a series column."""


class EmptySeries(FlightLogError):
    """An operation requiring at least one sample got an empty series."""


class NoPosition(FlightLogError):
    """No usable position layer in the log."""


class DegenerateTrajectory(FlightLogError):
    """Fewer than two trajectory samples; no segments can be formed."""


class LatitudeOutOfRange(FlightLogError):
    """Latitude outside the Web Mercator projection's valid band."""


class InvalidDomain(FlightLogError):
    """A continuous color scale was given an empty or inverted domain."""
