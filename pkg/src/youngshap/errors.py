"""Exception hierarchy shared by the library and the CLI exit codes."""


class GameError(ValueError):
    """Malformed game, coalition or player argument."""


class ParseError(GameError):
    """Unreadable game file or value string."""


class GuardExceeded(GameError):
    """A size guard (player count, class size) was exceeded."""


class PreconditionError(GameError):
    """An operation was called outside its domain (e.g. S is not an equivalence class)."""


class VerificationError(RuntimeError):
    """A construction produced a game that fails its own postcondition."""
