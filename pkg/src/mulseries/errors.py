"""Exception hierarchy shared across the package."""


class MulseriesError(Exception):
    """Base class for all errors raised by this package."""


class InvalidContactSequence(MulseriesError):
    """A maximal contact sequence violates an invariant or is unrealizable."""


class InconsistentProximity(MulseriesError):
    """A proximity structure does not describe a valid blowup chain."""


class InconsistentModel(MulseriesError):
    """Derived resolution data is internally inconsistent."""


class NegativeMultiplicity(MulseriesError):
    """A claimed complete-ideal representative has a negative point multiplicity."""


class NotNested(MulseriesError):
    """Quotient of two ideals that are not nested."""


class NotMember(MulseriesError):
    """A rational number does not belong to the requested jump family."""


class TheoremViolation(MulseriesError):
    """A cross-check between two independent computations failed.

    This never fires on a consistent model; it exists so that verification
    runs report a named failure instead of silently returning wrong data.
    """


class UnknownFormat(MulseriesError):
    """An output format tag is not supported."""


class InputError(MulseriesError):
    """Malformed input file or request payload."""
