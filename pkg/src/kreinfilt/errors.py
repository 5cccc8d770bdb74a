"""Exception and warning types shared across the package.

The hierarchy is flat on purpose: every error derives from
:class:`KreinfiltError`, so callers (in particular the command line driver)
can distinguish "bad input / failed precondition" from genuine bugs with a
single ``except`` clause.
"""

__all__ = [
    "KreinfiltError",
    "DimensionMismatch",
    "NotHermitian",
    "NotInvolution",
    "NegativeExponent",
    "EvalAtZeroWithPole",
    "SingularResolvent",
    "PoleAtSample",
    "NoSolution",
    "ResidualTooLarge",
    "HSingular",
    "TooManyPolesOnCircle",
    "TruncationTooSmall",
    "NotSquare",
    "PowerNotIdentity",
    "DeterminantVanishes",
    "PNotJUnitary",
    "NotInCN",
    "ExponentNotMultipleOfN",
    "NoSimilarity",
    "TNotInvertible",
    "NotPeriodicSymmetric",
    "NotMinimalWarning",
    "RankDeficientWarning",
]


class KreinfiltError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(KreinfiltError):
    """Operands have incompatible shapes."""


class NotHermitian(KreinfiltError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotInvolution(KreinfiltError):
    """A candidate signature matrix does not square to the identity."""


class NegativeExponent(KreinfiltError):
    """A coefficient map that must live on exponents >= 0 does not."""


class EvalAtZeroWithPole(KreinfiltError):
    """Evaluation at z = 0 of a function with negative-exponent terms."""


class SingularResolvent(KreinfiltError):
    """(I - z*A) is singular at the requested evaluation point."""


class PoleAtSample(KreinfiltError):
    """A sampled grid point hit a pole (and resampling was exhausted)."""


class NoSolution(KreinfiltError):
    """The linear system defining the metric certificate is singular."""


class ResidualTooLarge(KreinfiltError):
    """A certified identity fails beyond the requested residual tolerance."""


class HSingular(KreinfiltError):
    """The Hermitian certificate matrix is numerically singular."""


class TooManyPolesOnCircle(KreinfiltError):
    """More than 20% of unit-circle sample points hit poles."""


class TruncationTooSmall(KreinfiltError):
    """The truncation degree is too small for the requested construction."""


class NotSquare(KreinfiltError):
    """A square matrix function was required."""


class PowerNotIdentity(KreinfiltError):
    """P**N differs from the identity beyond tolerance."""


class DeterminantVanishes(KreinfiltError):
    """det(I - eps**l * P**l) vanishes for some l in 1..N-1.

    The offending exponents are available as ``ell`` (a tuple).
    """

    def __init__(self, msg, ell=()):
        super().__init__(msg)
        self.ell = tuple(ell)


class PNotJUnitary(KreinfiltError):
    """P* J P != J, so the indefinite orthogonality statement does not apply."""


class NotInCN(KreinfiltError):
    """The matrix function fails the cyclic phase-shift symmetry check."""


class ExponentNotMultipleOfN(KreinfiltError):
    """A product/factor that must only involve powers of z**N does not."""


class NoSimilarity(KreinfiltError):
    """No state-space similarity satisfies the symmetry equations."""


class TNotInvertible(KreinfiltError):
    """The computed similarity matrix is numerically singular."""


class NotPeriodicSymmetric(KreinfiltError):
    """The function fails the phase-twisted (periodic) symmetry check."""


class NotMinimalWarning(UserWarning):
    """The realization is not minimal; downstream certificates may be off."""


class RankDeficientWarning(UserWarning):
    """A least-squares system was rank deficient; solution is minimum-norm."""
