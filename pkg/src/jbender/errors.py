"""Shared exception base for the jbender package.

Every error raised by library code derives from JBenderError so the CLI
and the HTTP layer can turn any of them into a one-line diagnostic.
"""


class JBenderError(Exception):
    """Base class for all jbender errors."""
