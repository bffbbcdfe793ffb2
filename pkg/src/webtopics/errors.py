"""Exception types shared across the package.

The CLI maps these onto distinct exit codes (see cli.EXIT_CODES).
"""


class WebTopicsError(Exception):
    """Base class for all package errors."""


class InvalidQueryError(WebTopicsError):
    """Raised for blank queries or queries that contain no searchable terms."""


class EmptyFederationError(WebTopicsError):
    """Raised when every configured search provider failed."""


class EmptyCorpusError(WebTopicsError):
    """Raised when no usable (non-empty) documents are available."""


class ConfigurationError(WebTopicsError):
    """Raised for invalid configuration values or missing data files."""


class TermNotSharedError(WebTopicsError):
    """Raised when a spatial difference is requested for a term absent
    from one of the two documents. Callers normally skip such terms."""
