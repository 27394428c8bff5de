"""Exception hierarchy shared by all modules."""


class PolarPertError(Exception):
    """Base class for every error raised by polarpert."""


class ShapeMismatch(PolarPertError, ValueError):
    """Operands have incompatible dimensions."""


class InvalidMatrix(PolarPertError, ValueError):
    """Matrix data is malformed (wrong length, non-finite entries, ...)."""


class ZeroOperator(PolarPertError, ValueError):
    """The operator is numerically zero under the rank cut."""


class ConvergenceError(PolarPertError, ArithmeticError):
    """Jacobi SVD did not converge within the sweep cap."""


class NotHermitian(PolarPertError, ValueError):
    pass


class NotIndexZero(PolarPertError, ValueError):
    """A unitary extension needs a square (index-zero) operator."""


class SpectraOverlap(PolarPertError, ValueError):
    """Sylvester coefficients share (numerically) an eigenvalue."""


class GeometryViolated(PolarPertError, ValueError):
    """No disc around the spectrum of T is separated from the spectrum of S."""


class NotApplicable(PolarPertError, ValueError):
    """Preconditions of a proof trace are not met."""


class AmbiguousHypothesis(PolarPertError, ValueError):
    """Gap difference and cross-projection rank disagree on whether Delta vanishes."""


class EpsilonTooLarge(PolarPertError, ValueError):
    pass


class UnknownInstance(PolarPertError, KeyError):
    pass
