"""Exception types shared across the toolkit."""


class SipwignerError(Exception):
    """Base class for all toolkit errors."""


class ContractViolation(SipwignerError, ValueError):
    """An argument breaks a documented precondition (shape, field, range)."""


class NonSmoothPoint(SipwignerError):
    """The norm is not Gateaux differentiable at the requested point."""


class SolverError(SipwignerError):
    """Scalar minimization failed (e.g. bracket expansion on a non-coercive objective)."""


class UnsupportedSpace(SipwignerError):
    """The operation requires smooth spaces and was handed a non-smooth one."""


class UnsupportedField(SipwignerError):
    """The operation is only defined over the real field."""


class HypothesisViolation(SipwignerError):
    """The map under test does not satisfy the hypotheses the pipeline relies on.

    Carries an optional ``witness`` dict describing the offending input and
    the quantity that broke its bound.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness


class KindAmbiguous(SipwignerError):
    """Linear vs conjugate-linear classification was not decisive."""
