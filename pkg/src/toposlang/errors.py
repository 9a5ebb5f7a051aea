"""Exception hierarchy shared across the toolkit."""


class ToposlangError(Exception):
    """Base class for all toolkit errors."""


class CapExceeded(ToposlangError):
    """An enumeration grew past its configured size cap."""


class InputError(ToposlangError):
    """Malformed user input: bad syntax, bad schema, dangling reference."""
