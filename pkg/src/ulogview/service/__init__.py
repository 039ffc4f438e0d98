from .app import Settings, create_app
from .sessions import Session, SessionStore

__all__ = ["Session", "SessionStore", "Settings", "create_app"]
