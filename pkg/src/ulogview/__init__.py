"""Post-flight analysis engine for PX4-style ULog flight logs.

Parses binary logs into an immutable in-memory table, derives trajectories,
events and summaries, encodes attributes as colors, and serves coordinated
filtered views over HTTP and a CLI.
"""

from . import errors
from .ulog import FlightLog, list_messages, parse_log, validate_header

__version__ = "0.1.0"

__all__ = [
    "FlightLog",
    "errors",
    "list_messages",
    "parse_log",
    "validate_header",
    "__version__",
]
