"""Exception hierarchy shared by all modules."""


class QuarticsError(Exception):
    """Base class for every error raised by this package."""


class PreconditionViolated(QuarticsError):
    """A model's parameters fall outside the classified family."""

    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class InternalInconsistency(QuarticsError):
    """Something that should be impossible happened; indicates a bug or bad input data."""


class PrecisionExhausted(QuarticsError):
    pass


class DegenerateSpan(QuarticsError):
    pass


class BranchUnresolvable(InternalInconsistency):
    pass


class Unsupported(QuarticsError):
    pass


class Hyperelliptic(QuarticsError):
    def __init__(self, relation, message="model is hyperelliptic"):
        self.relation = relation
        super().__init__(f"{message}; canonical field relation {relation} = 0")


class InvariantViolation(QuarticsError):
    pass


class PointNotOnCurve(QuarticsError):
    pass


class SingularPoint(QuarticsError):
    pass


class LineIsComponent(QuarticsError):
    pass


class TooFewSmoothPoints(QuarticsError):
    pass


class IdentityFailed(InternalInconsistency):
    pass


class CenterOffSurface(QuarticsError):
    pass


class StepLimitExceeded(InternalInconsistency):
    pass


class NonIntegralSelfIntersection(InternalInconsistency):
    pass


class NonReduced(QuarticsError):
    """The form is a proper power (or has a multiple component); its singular locus is a curve."""

    def __init__(self, support=None, power=None, detail=""):
        self.support = support
        self.power = power
        super().__init__(detail or f"non-reduced curve (power {power} of {support})")
