"""Exception types shared across the package."""

from __future__ import annotations


class KorobovError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(KorobovError, ValueError):
    """A space parameter violates its constraints.

    ``code`` is a stable machine-readable identifier, one of:
    ``omega_out_of_range``, ``dimension_not_positive``, ``a_below_one``,
    ``b_below_one``, ``a_nonmonotone``, ``term_undefined``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class ConfigError(KorobovError, ValueError):
    """A configuration object failed to parse.

    ``path`` locates the offending entry (dotted keys, e.g. ``"a.r"``)
    and ``reason`` says what was wrong with it.
    """

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path or '<root>'}: {reason}")
        self.path = path
        self.reason = reason


class CapExceeded(KorobovError, RuntimeError):
    """A configured size cap would be exceeded.

    ``needed`` carries the true size when it was cheap to determine,
    otherwise ``None``.
    """

    def __init__(self, what: str, limit: int, needed: int | None = None):
        detail = f"{what} exceeds cap {limit}"
        if needed is not None:
            detail += f" (needed {needed})"
        super().__init__(detail)
        self.what = what
        self.limit = limit
        self.needed = needed


class UndecidableTail(KorobovError):
    """A quantity depends on terms of an explicit sequence beyond its data
    and no tail rule was declared.  Callers either refuse or report the
    affected result as unknown; they never guess."""
