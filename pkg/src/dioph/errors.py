"""Exception hierarchy shared by all modules."""


class DiophError(Exception):
    pass


class DomainError(DiophError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class UndefinedValuationError(DomainError):
    pass


class NotOnCurveError(DiophError, ValueError):
    """A point fails its curve equation (contract violation)."""


class CurveMismatchError(DiophError, ValueError):
    """Points from different curves were combined."""


class SingularCurveError(DomainError):
    pass


class NotSquareError(DiophError, ValueError):
    """A constant that must be a nonzero rational square is not one."""


class ExceptionalPointError(DiophError, ValueError):
    """A birational map is undefined at this point (infinity, y=0, u=0, t=0)."""


class WrongPipelineError(DiophError, ValueError):
    pass


class VerificationError(DiophError, RuntimeError):
    """An identity that must hold exactly did not. Indicates a bug."""


class ScalingError(DiophError, ValueError):
    pass
