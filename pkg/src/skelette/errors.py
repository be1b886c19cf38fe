"""Exception types shared across the package.

Every validation failure carries the name of the invariant it violated so the
command line can report it without parsing messages.
"""


class SkeletteError(Exception):
    """Base class; ``invariant`` names the violated condition."""

    invariant = "Error"
    exit_code = 1

    def __init__(self, message="", **details):
        super().__init__(message or self.invariant)
        self.details = details


class FanError(SkeletteError):
    invariant = "InvalidFan"


class NotComplete(FanError):
    invariant = "NotComplete"


class NotSimplicial(FanError):
    invariant = "NotSimplicial"


class NotFano(FanError):
    invariant = "NotFano"


class InconsistentFaces(FanError):
    invariant = "InconsistentFaces"


class DuplicateRay(FanError):
    invariant = "DuplicateRay"


class ConeNotInFan(SkeletteError):
    invariant = "ConeNotInFan"


class Unbounded(SkeletteError):
    invariant = "Unbounded"


class Unsupported(SkeletteError):
    invariant = "Unsupported"
    exit_code = 2


class NotNef(SkeletteError):
    invariant = "NotNef"


class DegenerateCovector(SkeletteError):
    invariant = "DegenerateCovector"


class SupportEscapesLambda(SkeletteError):
    invariant = "SupportEscapesLambda"


class RegionNotSubordinate(SkeletteError):
    invariant = "RegionNotSubordinate"


class CarrierMismatch(SkeletteError):
    invariant = "CarrierMismatch"


class CycleConditionBroken(SkeletteError):
    invariant = "CycleConditionBroken"


class NotSmooth(SkeletteError):
    invariant = "NotSmooth"


class BasisSearchFailed(SkeletteError):
    invariant = "BasisSearchFailed"
