"""Session files, commands and reports for the ``sgcm`` executable."""

from .session import SessionError, SessionFile, loads, parse_session

__all__ = ["SessionError", "SessionFile", "loads", "parse_session"]
