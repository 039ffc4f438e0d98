from .reader import list_messages, parse_log, validate_header
from .types import (
    FlightLog,
    LoggedMessage,
    MessageSchema,
    MessageSeries,
    SchemaField,
)

__all__ = [
    "FlightLog",
    "LoggedMessage",
    "MessageSchema",
    "MessageSeries",
    "SchemaField",
    "list_messages",
    "parse_log",
    "validate_header",
]
