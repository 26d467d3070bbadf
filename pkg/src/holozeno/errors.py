"""Exception hierarchy shared by all modules."""


class HolozenoError(Exception):
    """Base class for package errors."""


class InvalidInputError(HolozenoError, ValueError):
    """Malformed, non-finite, non-Hermitian or non-unitary input."""


class DegenerateDriveError(HolozenoError, ValueError):
    """The effective drive strength is zero, so the angles are undefined."""


class InvalidRegimeError(HolozenoError, ValueError):
    """Unphysical cavity parameters for the Zeno regime check."""


class VerificationError(HolozenoError, RuntimeError):
    """An internal cross-check between two independent routes failed."""
