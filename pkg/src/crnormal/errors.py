"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI
reports.
"""


class CRNormalError(Exception):
    code = "ERROR"


class DegreeViolation(CRNormalError, ValueError):
    code = "DEGREE_VIOLATION"


class NotTangentToIdentity(CRNormalError, ValueError):
    code = "NOT_TANGENT_TO_IDENTITY"


class NotHomogeneous(CRNormalError, ValueError):
    code = "NOT_HOMOGENEOUS"


class ZeroModel(CRNormalError, ValueError):
    code = "ZERO_MODEL"


class ZeroPolynomial(CRNormalError, ValueError):
    code = "ZERO_POLYNOMIAL"


class ModelInvalid(CRNormalError, ValueError):
    """Raised by model validation; ``reasons`` lists every violated clause."""

    code = "MODEL_INVALID"

    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("invalid model: " + ", ".join(self.reasons))


class InadmissibleMonomial(CRNormalError, ValueError):
    code = "INADMISSIBLE_MONOMIAL"


class SingularSystem(CRNormalError, ArithmeticError):
    code = "SINGULAR_SYSTEM"


class NondegeneracyViolated(CRNormalError):
    code = "NONDEGENERACY_VIOLATED"

    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("nondegeneracy violated: " + ", ".join(self.reasons))


class SolverError(CRNormalError):
    """Base class for failures of the normalization solver."""

    def __init__(self, message, **details):
        self.details = details
        super().__init__(message)


class DegreeSystemInconsistent(SolverError):
    code = "DEGREE_SYSTEM_INCONSISTENT"


class DegreeSystemUnderdetermined(SolverError):
    code = "DEGREE_SYSTEM_UNDERDETERMINED"


class ResonanceNonAffine(SolverError):
    code = "RESONANCE_NON_AFFINE"


class ResonanceSingular(SolverError):
    code = "RESONANCE_SINGULAR"


class LowerDegreeDisturbed(SolverError):
    code = "LOWER_DEGREE_DISTURBED"


class OrderMismatch(CRNormalError, ValueError):
    code = "ORDER_MISMATCH"
