"""Pure-Python kernel fallbacks, mirrors of ulogview._native."""
