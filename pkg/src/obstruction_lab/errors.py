"""Exception hierarchy shared across the package."""


class GroupParseError(ValueError):
    """The group spec string does not match the grammar."""


class UnsupportedGroupError(ValueError):
    """Well-formed input naming a group outside the supported families."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""
