"""Exception hierarchy; the CLI maps these onto its exit codes."""


class ZappaticError(Exception):
    """Base class for package errors."""


class RangeError(ZappaticError):
    """Input outside the documented validity range (exit code 2)."""


class GenericityError(ZappaticError):
    """Random choices exhausted without a generic witness (exit code 3)."""


class InternalCheckError(ZappaticError):
    """A verified internal invariant failed (exit code 4)."""
